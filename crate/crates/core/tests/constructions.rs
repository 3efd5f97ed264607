use beauville::beauville::{check_witness, verify, Effort, Family, StrongReality};
use beauville::grouptool::Generation;
use beauville::recipes::{strongly_real_structure_psl2, structure_sl2, Construction};
use beauville::Field;

const SMALL_Q: [u64; 13] = [7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31];

fn build(q: u64, family: Family) -> Construction {
    let f = Field::of_order(q).unwrap();
    match family {
        Family::PSL2 => strongly_real_structure_psl2(&f).unwrap(),
        _ => structure_sl2(&f).unwrap(),
    }
}

#[test]
fn small_fields_pass_exhaustively_with_witnesses() {
    for q in SMALL_Q {
        for family in [Family::PSL2, Family::SL2] {
            let c = build(q, family);
            let s = &c.structure;
            let full = verify(s, Effort::Exhaustive).unwrap();
            assert!(full.pass(), "q = {q} {family:?}: {full:?}");
            let w = match &full.strongly_real {
                StrongReality::Witness(w) => w,
                other => panic!("q = {q} {family:?}: no witness, {other:?}"),
            };
            assert!(check_witness(s, w));
            // fast effort never contradicts the closure, and here it decides everything
            let fast = verify(s, Effort::Fast).unwrap();
            assert!(fast.pass(), "q = {q} {family:?}: fast path undecided, {fast:?}");
            for (a, b) in fast.triples.iter().zip(&full.triples) {
                assert_eq!(a.orders, b.orders);
                if a.generation != Generation::Unknown {
                    assert_eq!(a.generation, b.generation, "q = {q}");
                }
            }
            if let Some(v) = fast.cond3 {
                assert_eq!(Some(v), full.cond3);
            }
        }
    }
}

fn prime_powers(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&q| beauville::arith::prime_power(q).is_some()).collect()
}

#[test]
fn larger_fields_pass_fast() {
    for q in prime_powers(32, 997) {
        for family in [Family::PSL2, Family::SL2] {
            let start = std::time::Instant::now();
            let c = build(q, family);
            let r = verify(&c.structure, Effort::Fast).unwrap();
            assert!(r.pass(), "q = {q} {family:?}: {r:?}");
            assert!(r.strongly_real.witness().is_some(), "q = {q} {family:?}");
            assert!(start.elapsed().as_secs() < 10, "q = {q} took {:?}", start.elapsed());
        }
    }
}
