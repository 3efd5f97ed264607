//! End-to-end acceptance checks. Each criterion is its own test and prints
//! one `criterion N: PASS|FAIL` line; all comparisons are exact.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use beauville::arith;
use beauville::ffield::dedekind_symbol;
use beauville::grouptool::{genus, lift_check, Group};
use beauville::psl2::{trace_class, LinearGroup, Mat2, Mode};
use beauville::recipes::structure_sl2;
use beauville::{Field, Poly};

const SMALL_Q: [u64; 13] = [7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31];

struct Run {
    code: i32,
    doc: Value,
}

fn cli(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_beauville")).args(args).output().expect("binary runs");
    let text = String::from_utf8(out.stdout).expect("utf-8");
    let doc = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?}: not one JSON document ({e}): {text}"));
    Run { code: out.status.code().unwrap_or(-1), doc }
}

/// Collects failures so each criterion reports everything before failing once.
struct Criterion {
    id: u32,
    title: &'static str,
    failures: Vec<String>,
    checks: usize,
}

impl Criterion {
    fn new(id: u32, title: &'static str) -> Self {
        Criterion { id, title, failures: Vec::new(), checks: 0 }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        let ok = got == want;
        self.check(ok, || format!("{what}: got {got:?}, want {want:?}"));
    }

    fn finish(self) {
        let status = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {}: {status} - {} ({} checks)", self.id, self.title, self.checks);
        for f in &self.failures {
            println!("    {f}");
        }
        assert!(self.failures.is_empty(), "criterion {} failed: {:#?}", self.id, self.failures);
    }
}

fn coeffs(f: &Field, text: &str) -> Value {
    serde_json::to_value(f.coeffs(f.parse(text).unwrap())).unwrap()
}

fn orders(report: &Value) -> Vec<Value> {
    report["triples"].as_array().unwrap().iter().map(|t| t["orders"].clone()).collect()
}

#[test]
fn criterion_1_small_fields_exhaustive() {
    let mut c = Criterion::new(1, "constructions for 5 < q <= 31 pass exhaustive verification with witnesses");
    let start = Instant::now();
    for q in SMALL_Q {
        for family in ["psl2", "sl2"] {
            let qs = q.to_string();
            let r = cli(&["construct", "--family", family, "--q", &qs, "--effort", "exhaustive"]);
            let rep = &r.doc["report"];
            c.eq(&format!("{family} q={q} exit"), r.code, 0);
            c.eq(&format!("{family} q={q} effort"), rep["effort"].as_str(), Some("exhaustive"));
            c.eq(&format!("{family} q={q} pass"), rep["pass"].as_bool(), Some(true));
            for t in rep["triples"].as_array().unwrap() {
                c.eq(&format!("{family} q={q} generation"), t["generation_method"].as_str(), Some("closure"));
                c.eq(&format!("{family} q={q} hyperbolic"), t["hyperbolic"].as_bool(), Some(true));
            }
            c.eq(&format!("{family} q={q} witness"), rep["strongly_real"]["status"].as_str(), Some("witness"));
            // the emitted document verifies on its own
            let path = std::env::temp_dir().join(format!("beauville-acc-{family}-{q}.json"));
            std::fs::write(&path, r.doc.to_string()).unwrap();
            let v = cli(&["verify", path.to_str().unwrap(), "--effort", "exhaustive"]);
            c.eq(&format!("{family} q={q} re-verify"), (v.code, v.doc["pass"].as_bool()), (0, Some(true)));
        }
    }
    c.check(start.elapsed() < Duration::from_secs(600), || format!("took {:?}", start.elapsed()));
    c.finish();
}

#[test]
fn criterion_2_golden_examples() {
    let mut c = Criterion::new(2, "worked examples verify and reproduce every intermediate value");

    let ex = cli(&["examples"]);
    c.eq("examples exit", ex.code, 0);
    for item in ex.doc.as_array().unwrap() {
        let name = item["name"].as_str().unwrap();
        c.eq(&format!("{name} pass"), item["report"]["pass"].as_bool(), Some(true));
        c.eq(&format!("{name} effort"), item["report"]["effort"].as_str(), Some("exhaustive"));
        c.eq(&format!("{name} involutor"), item["involutor_inverts"].as_bool(), Some(true));
    }
    let names: Vec<&str> = ex.doc.as_array().unwrap().iter().map(|i| i["name"].as_str().unwrap()).collect();
    c.eq("fixtures", names, vec!["3A", "3B", "3C", "5A", "5B", "q7", "q9", "q11-sl2"]);

    // 3A: q = 8, x = t^2, w = t + 1, 1 - x w = (t^2)^2
    let f8 = Field::of_order(8).unwrap();
    let r = cli(&["construct", "--family", "psl2", "--q", "8"]);
    let t2 = &r.doc["provenance"]["t2"];
    c.eq("3A x", t2["x"]["coeffs"].clone(), coeffs(&f8, "t^2"));
    c.eq("3A w", t2["w"]["coeffs"].clone(), coeffs(&f8, "t+1"));
    c.eq("3A y", t2["y"]["coeffs"].clone(), coeffs(&f8, "t^2"));
    let (x, w, y) = (f8.parse("t^2").unwrap(), f8.parse("t+1").unwrap(), f8.parse("t^2").unwrap());
    c.eq("3A 1-xw", f8.sub(f8.one(), f8.mul(x, w)), f8.square(y));

    // 3B: q = 13, s = 6 a non-square, y = 3
    let f13 = Field::prime(13).unwrap();
    let r = cli(&["construct", "--family", "psl2", "--q", "13"]);
    let t2 = &r.doc["provenance"]["t2"];
    c.eq("3B branch", t2["branch"].as_str(), Some("s_non_square"));
    c.eq("3B s", t2["s"]["coeffs"].clone(), serde_json::json!([6]));
    c.check(!f13.is_square(f13.int(6)), || "3B: 6 is a square mod 13".into());
    c.eq("3B y", t2["y"]["coeffs"].clone(), serde_json::json!([3]));

    // 3C: q = 37, s = -7 = 17^2, tq = 3 = 15^2, y = 16
    let f37 = Field::prime(37).unwrap();
    let r = cli(&["construct", "--family", "psl2", "--q", "37"]);
    let t2 = &r.doc["provenance"]["t2"];
    c.eq("3C branch", t2["branch"].as_str(), Some("squared_root"));
    c.eq("3C s", t2["s"]["coeffs"].clone(), serde_json::json!([f37.int(-7).index()]));
    c.eq("3C s = 17^2", f37.int(-7), f37.square(f37.int(17)));
    c.eq("3C tq", t2["tq"]["coeffs"].clone(), serde_json::json!([3]));
    c.eq("3C tq = 15^2", f37.int(3), f37.square(f37.int(15)));
    c.eq("3C y", t2["y"]["coeffs"].clone(), serde_json::json!([16]));

    // 5A: SL_2(19), d = 2, x = -7, w = -5, 1 - x w = 4, types (20,20,19) and (9,9,9)
    let f19 = Field::prime(19).unwrap();
    let r = cli(&["construct", "--family", "sl2", "--q", "19", "--effort", "exhaustive", "--format", "json"]);
    c.eq("5A exit", r.code, 0);
    let t2 = &r.doc["provenance"]["t2"];
    c.eq("5A d", t2["d"]["coeffs"].clone(), serde_json::json!([2]));
    c.eq("5A x", t2["x"]["coeffs"].clone(), serde_json::json!([f19.int(-7).index()]));
    c.eq("5A w", t2["w"]["coeffs"].clone(), serde_json::json!([f19.int(-5).index()]));
    c.eq("5A 1-xw", f19.sub(f19.one(), f19.mul(f19.int(-7), f19.int(-5))), f19.int(4));
    c.eq("5A types", orders(&r.doc["report"]), vec![serde_json::json!([20, 20, 19]), serde_json::json!([9, 9, 9])]);

    // 5B: SL_2(27) over t^3 - t + 1, d = t: d^4 - d^3 + d^2 - d + 1 = -t^2 - 1 is a
    // square, so the cubed-eigenvalue case applies with x = 0, w = t^2 + 1
    let f27 = Field::of_order(27).unwrap();
    c.eq("5B modulus", f27.modulus().to_string(), "t^3+2t+1".to_string());
    let d = f27.t();
    let quartic = [4u128, 3, 2, 1, 0]
        .iter()
        .zip([1i64, -1, 1, -1, 1])
        .fold(f27.zero(), |acc, (&k, s)| f27.add(acc, f27.mul(f27.int(s), f27.pow(d, k))));
    c.eq("5B quartic", quartic, f27.parse("-t^2-1").unwrap());
    let sym = cli(&["symbol", "--p", "3", "--g", "2t^2+2", "--f", "t^3+2t+1"]);
    c.eq("5B symbol chain", sym.doc["symbol"].as_i64(), Some(1));
    c.eq("5B symbol oracle", sym.doc["euler"].as_i64(), Some(1));
    let r = cli(&["construct", "--family", "sl2", "--q", "27"]);
    let t2 = &r.doc["provenance"]["t2"];
    c.eq("5B branch", t2["branch"].as_str(), Some("sl_cubed_eigenvalues"));
    c.eq("5B d", t2["d"]["coeffs"].clone(), coeffs(&f27, "t"));
    c.eq("5B x", t2["x"]["coeffs"].clone(), coeffs(&f27, "0"));
    c.eq("5B w", t2["w"]["coeffs"].clone(), coeffs(&f27, "t^2+1"));
    c.eq("5B orders", orders(&r.doc["report"])[1].clone(), serde_json::json!([13, 13, 13]));

    // q = 7: the printed third element of the first triple is X1 Y1 itself
    let f7 = Field::prime(7).unwrap();
    let m = |e| Mat2::from_ints(&f7, e);
    let printed = m([[-2, -2], [3, -1]]);
    c.eq("q7 printed Z1", m([[0, 1], [-1, 3]]).mul(&f7, m([[-2, 2], [-2, -2]])), printed);
    c.finish();
}

#[test]
fn criterion_3_table1() {
    let mut c = Criterion::new(3, "all 12 rows of the primitive-root table");
    // (q, d, d^-1, r) as printed
    let printed: [(u64, u64, u64, u64); 12] = [
        (11, 8, 7, 3),
        (19, 2, 10, 11),
        (23, 5, 14, 18),
        (31, 24, 22, 14),
        (43, 3, 29, 31),
        (47, 31, 44, 27),
        (59, 10, 6, 15),
        (67, 2, 34, 35),
        (71, 14, 66, 8),
        (79, 3, 53, 55),
        (83, 8, 52, 59),
        (103, 5, 62, 66),
    ];
    let all = cli(&["table1"]);
    c.eq("table1 exit", all.code, 0);
    let rows = all.doc.as_array().unwrap();
    c.eq("row count", rows.len(), 12);
    for (row, &(q, d, di, r)) in rows.iter().zip(&printed) {
        let got = (row["q"].as_u64(), row["d"].as_u64(), row["d_inv"].as_u64(), row["r"].as_u64());
        c.eq(&format!("q = {q}"), got, (Some(q), Some(d), Some(di), Some(r)));
    }
    let one = cli(&["table1", "--q", "103"]);
    c.eq("q = 103 alone", (one.doc["d"].as_u64(), one.doc["d_inv"].as_u64(), one.doc["r"].as_u64()), (Some(5), Some(62), Some(66)));
    c.finish();
}

#[test]
fn criterion_4_negative_certificates() {
    let mut c = Criterion::new(4, "no structure on L2(2..5), SL2(3), SL2(5), metacyclic 125; one on C5xC5");
    let start = Instant::now();
    for (g, order) in [("l2-2", 6), ("l2-3", 12), ("l2-4", 60), ("l2-5", 60), ("sl2-3", 24), ("sl2-5", 120), ("metacyclic-5", 125)] {
        let r = cli(&["negative", "--group", g]);
        c.eq(&format!("{g} exit"), r.code, 0);
        c.eq(&format!("{g} order"), r.doc["order"].as_u64(), Some(order));
        c.eq(&format!("{g} certificate"), r.doc["certificate"].as_str(), Some("no Beauville structure"));
    }
    let a5 = cli(&["negative", "--group", "a5"]);
    c.eq("a5", (a5.code, a5.doc["certificate"].as_str()), (0, Some("no Beauville structure")));
    let r = cli(&["search", "--group", "c5xc5"]);
    c.eq("c5xc5 exit", r.code, 0);
    c.eq("c5xc5 found", r.doc["found"].as_bool(), Some(true));
    let neg = cli(&["negative", "--group", "c5xc5"]);
    c.eq("c5xc5 negative request fails", neg.code, 1);
    c.check(start.elapsed() < Duration::from_secs(300), || format!("took {:?}", start.elapsed()));
    c.finish();
}

#[test]
fn criterion_5_suzuki() {
    let mut c = Criterion::new(5, "Sz(8) structure of types (2,4,5)/(7,13,13), not strongly real");
    let start = Instant::now();
    let r = cli(&["suzuki", "--e", "3"]);
    c.eq("exit", r.code, 0);
    c.eq("order", r.doc["group_order"].as_u64(), Some(29120));
    c.eq("spectrum", r.doc["spectrum"].clone(), serde_json::json!([1, 2, 4, 5, 7, 13]));
    for pair in r.doc["centralizers"].as_array().unwrap() {
        c.eq("self-centralising", pair[0].as_u64(), pair[1].as_u64());
    }
    let seen: Vec<u64> = r.doc["centralizers"].as_array().unwrap().iter().map(|p| p[0].as_u64().unwrap()).collect();
    for o in [5, 7, 13] {
        c.check(seen.contains(&o), || format!("no class of order {o} checked"));
    }
    let rep = &r.doc["report"];
    c.eq("pass", rep["pass"].as_bool(), Some(true));
    c.eq("effort", rep["effort"].as_str(), Some("exhaustive"));
    c.eq("types", orders(rep), vec![serde_json::json!([2, 4, 5]), serde_json::json!([7, 13, 13])]);
    c.check(r.doc["frobenius_count"].as_u64().unwrap_or(0) > 0, || "N(7,13,13) = 0".into());
    c.eq("strongly real", rep["strongly_real"]["status"].as_str(), Some("none_found"));
    c.eq("covers Aut", rep["strongly_real"]["covers_aut"].as_bool(), Some(true));
    c.eq("candidates = |Aut Sz(8)|", rep["strongly_real"]["candidates"].as_u64(), Some(3 * 29120));
    let path = std::env::temp_dir().join("beauville-acc-sz8.json");
    std::fs::write(&path, r.doc.to_string()).unwrap();
    let v = cli(&["verify", path.to_str().unwrap()]);
    c.eq("structure file verifies", (v.code, v.doc["pass"].as_bool()), (0, Some(true)));
    c.check(start.elapsed() < Duration::from_secs(600), || format!("took {:?}", start.elapsed()));
    c.finish();
}

#[test]
fn criterion_6_fast_path() {
    let mut c = Criterion::new(6, "fast verification for 31 < q <= 997; fast agrees with exhaustive for q <= 31");
    for q in (32..=997u64).filter(|&q| arith::prime_power(q).is_some()) {
        for family in ["psl2", "sl2"] {
            let start = Instant::now();
            let r = cli(&["construct", "--family", family, "--q", &q.to_string(), "--effort", "fast"]);
            let elapsed = start.elapsed();
            let rep = &r.doc["report"];
            c.eq(&format!("{family} q={q}"), (r.code, rep["pass"].as_bool()), (0, Some(true)));
            for t in rep["triples"].as_array().unwrap() {
                c.eq(&format!("{family} q={q} ladder"), (t["generation"].as_str(), t["generation_method"].as_str()), (Some("proven"), Some("ladder")));
            }
            let m = rep["cond3_method"].as_str();
            c.check(matches!(m, Some("gcd") | Some("trace_disjoint")), || format!("{family} q={q}: cond3 via {m:?}"));
            c.check(elapsed < Duration::from_secs(10), || format!("{family} q={q} took {elapsed:?}"));
        }
    }
    for q in SMALL_Q {
        for family in ["psl2", "sl2"] {
            let qs = q.to_string();
            let fast = cli(&["construct", "--family", family, "--q", &qs, "--effort", "fast"]);
            let full = cli(&["construct", "--family", family, "--q", &qs, "--effort", "exhaustive"]);
            c.eq(&format!("{family} q={q} verdicts"), fast.doc["report"]["pass"].as_bool(), full.doc["report"]["pass"].as_bool());
            c.eq(&format!("{family} q={q} orders"), orders(&fast.doc["report"]), orders(&full.doc["report"]));
        }
    }
    c.finish();
}

fn random_monic(rng: &mut ChaCha8Rng, p: u64, deg: usize) -> Poly {
    let mut v: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..p)).collect();
    v.push(1);
    Poly::new(p, v)
}

/// `g^((p^deg f - 1)/2) mod f` for irreducible `f`, by polynomial powering.
fn euler_symbol(g: &Poly, f: &Poly) -> i8 {
    let p = f.p();
    let r = g.rem(f);
    if r.is_zero() {
        return 0;
    }
    let v = r.pow_mod((p as u128).pow(f.degree().unwrap() as u32) / 2, f);
    if v == Poly::one(p) {
        1
    } else {
        -1
    }
}

#[test]
fn criterion_7_property_suites() {
    let mut c = Criterion::new(7, "symbol, reciprocity, square roots, trace classes, lifts");
    let mut rng = ChaCha8Rng::seed_from_u64(20_260_101);
    let primes = [3u64, 7, 11, 19];

    for _ in 0..1000 {
        let p = primes[rng.gen_range(0..4)];
        let f = loop {
            let deg = rng.gen_range(1..=4);
            let f = random_monic(&mut rng, p, deg);
            if f.is_irreducible().unwrap() {
                break f;
            }
        };
        let g = Poly::new(p, (0..rng.gen_range(0..=6)).map(|_| rng.gen_range(0..p)).collect());
        c.eq(&format!("({g}/{f}) over F_{p}"), dedekind_symbol(&g, &f).unwrap(), euler_symbol(&g, &f));
    }

    let mut pairs = 0;
    while pairs < 1000 {
        let p = primes[rng.gen_range(0..4)];
        let (df, dg) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let f = random_monic(&mut rng, p, df);
        let g = random_monic(&mut rng, p, dg);
        if f.gcd(&g).degree() != Some(0) {
            continue;
        }
        pairs += 1;
        let (df, dg) = (f.degree().unwrap() as u64, g.degree().unwrap() as u64);
        let lhs = dedekind_symbol(&g, &f).unwrap() * dedekind_symbol(&f, &g).unwrap();
        let rhs = if df * dg * (p - 1) / 2 % 2 == 0 { 1 } else { -1 };
        c.eq(&format!("reciprocity {f}, {g}"), lhs, rhs);
    }

    for q in (2..=343u64).filter(|&q| arith::prime_power(q).is_some()) {
        let f = Field::of_order(q).unwrap();
        let mut square = vec![false; q as usize];
        for x in f.elements() {
            square[f.square(x).index() as usize] = true;
        }
        let sound = f.elements().all(|a| {
            let s = square[a.index() as usize];
            f.is_square(a) == s && f.sqrt(a).map_or(!s, |r| f.square(r) == a)
        });
        c.check(sound, || format!("sqrt/is_square wrong somewhere in GF({q})"));
    }

    for q in SMALL_Q {
        let f = Field::of_order(q).unwrap();
        let sl = LinearGroup::new(&f, Mode::SL2);
        let psl = LinearGroup::new(&f, Mode::PSL2);
        let mut n = 0;
        while n < 1000 {
            let (a, b, cc) = (rng.gen_range(1..q), rng.gen_range(0..q), rng.gen_range(0..q));
            let (a, b, cc) = (f.element(a).unwrap(), f.element(b).unwrap(), f.element(cc).unwrap());
            let d = f.div(f.add(f.one(), f.mul(b, cc)), a).unwrap();
            let m = Mat2::new(a, b, cc, d);
            n += 1;
            let tau = m.trace(&f);
            let class = trace_class(&f, tau);
            let o = sl.order_by_powering(m);
            c.check(class.linear_bound(&f, tau) % o == 0, || format!("q={q}: order {o} vs class {class:?}"));
            let po = psl.element_order(m);
            c.check(class.projective_bound(&f) % po == 0, || format!("q={q}: projective order {po} vs class {class:?}"));
        }
    }

    let f11 = Field::prime(11).unwrap();
    let m = |e| Mat2::from_ints(&f11, e);
    let eq3 = [m([[2, 0], [0, 6]]), m([[0, 1], [-1, -3]]), m([[4, -2], [-5, 0]])];
    let r = lift_check(&f11, &eq3, 2000).unwrap();
    c.eq("L2(11) triple orders", r.psl2_orders, [5, 5, 5]);
    c.check(!r.is_faithful() && r.sl2_orders.contains(&10), || format!("L2(11) triple lifted faithfully: {r:?}"));
    c.eq("L2(11) lift generates SL2(11)", r.generates_cover, Some(true));
    for q in (13..=200u64).filter(|&q| q % 4 == 1 && arith::prime_power(q).is_some()) {
        let f = Field::of_order(q).unwrap();
        let t = structure_sl2(&f).unwrap().structure.structure.t1.to_array();
        let r = lift_check(&f, &t, 20_000).unwrap();
        let odd = r.psl2_orders.iter().all(|o| o % 2 == 1);
        c.check(odd && r.is_faithful(), || format!("q={q}: first triple {r:?}"));
        let sl = LinearGroup::new(&f, Mode::SL2);
        c.eq(&format!("q={q} lifted product"), sl.mul(sl.mul(t[0], t[1]), t[2]), sl.identity());
    }
    c.finish();
}

#[test]
fn criterion_8_genus() {
    let mut c = Criterion::new(8, "Riemann-Hurwitz genus");
    c.eq("genus(25,(5,5,5))", genus(25, (5, 5, 5)).ok(), Some(6));
    c.eq("(p-1)(p-2)/2 at p = 5", genus(25, (5, 5, 5)).ok(), Some((5 - 1) * (5 - 2) / 2));
    c.eq("genus(60,(2,3,5))", genus(60, (2, 3, 5)).ok(), Some(0));
    c.finish();
}
