//! Beauville structures: two generating triples with product one, hyperbolic
//! types and trivially intersecting Sigma-sets.
//!
//! Verification has two efforts. `Exhaustive` enumerates the ambient group
//! and decides every condition outright; `Fast` never enumerates and relies
//! on the maximal-subgroup ladder for generation and on order or trace
//! arguments for condition (3), leaving a field undecided when those are
//! silent. In exhaustive mode both run and must agree.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{Fe, Field};
use crate::grouptool::{
    closure, gcd_shortcut, is_hyperbolic, ladder, FiniteGroup, Generation, Group, DEFAULT_BOUND,
};
use crate::psl2::{standard_involutors, LinearGroup, Mat2, Mode};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    PSL2,
    SL2,
    Sz,
}

impl Family {
    pub fn mode(self) -> Option<Mode> {
        match self {
            Family::PSL2 => Some(Mode::PSL2),
            Family::SL2 => Some(Mode::SL2),
            Family::Sz => None,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Effort {
    Fast,
    Exhaustive,
}

/// `(x, y, z)`; only meaningful together with the group it lives in.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triple<E> {
    pub x: E,
    pub y: E,
    pub z: E,
}

impl<E: Copy> Triple<E> {
    pub fn new(x: E, y: E, z: E) -> Self {
        Triple { x, y, z }
    }

    /// `z = (x y)^-1`.
    pub fn from_pair<G: Group<Elem = E>>(g: &G, x: E, y: E) -> Self {
        Triple { x, y, z: g.inv(g.mul(x, y)) }
    }

    pub fn to_array(self) -> [E; 3] {
        [self.x, self.y, self.z]
    }

    /// `(x, y, z) -> (y, z, x)` applied `r` times.
    pub fn rotate(self, r: usize) -> Self {
        let a = self.to_array();
        Triple { x: a[r % 3], y: a[(r + 1) % 3], z: a[(r + 2) % 3] }
    }

    pub fn map<F, T>(self, f: F) -> Triple<T>
    where
        F: Fn(E) -> T,
    {
        Triple { x: f(self.x), y: f(self.y), z: f(self.z) }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct BeauvilleStructure<E> {
    pub t1: Triple<E>,
    pub t2: Triple<E>,
}

impl<E: Copy> BeauvilleStructure<E> {
    pub fn new(t1: Triple<E>, t2: Triple<E>) -> Self {
        BeauvilleStructure { t1, t2 }
    }

    pub fn triples(&self) -> [Triple<E>; 2] {
        [self.t1, self.t2]
    }
}

/// A structure on SL_2(q) or L_2(q), with its field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearStructure {
    pub field: Field,
    pub family: Family,
    pub structure: BeauvilleStructure<Mat2>,
}

impl LinearStructure {
    pub fn new(field: &Field, family: Family, t1: Triple<Mat2>, t2: Triple<Mat2>) -> Result<Self> {
        if family.mode().is_none() {
            return Err(Error::Unsupported("Suzuki structures are not linear".into()));
        }
        Ok(LinearStructure {
            field: field.clone(),
            family,
            structure: BeauvilleStructure::new(t1, t2),
        })
    }

    /// Builds both triples from `(x, y)` pairs, deriving `z = (x y)^-1`.
    pub fn from_pairs(field: &Field, family: Family, p1: (Mat2, Mat2), p2: (Mat2, Mat2)) -> Result<Self> {
        let sl = LinearGroup::new(field, Mode::SL2);
        let mk = |(x, y): (Mat2, Mat2)| Triple::new(x, y, sl.inv(x.mul(field, y)));
        LinearStructure::new(field, family, mk(p1), mk(p2))
    }

    pub fn group(&self) -> LinearGroup {
        LinearGroup::new(&self.field, self.family.mode().expect("linear family"))
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenerationMethod {
    Closure,
    Ladder,
    Skipped,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cond3Method {
    Gcd,
    TraceDisjoint,
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleReport {
    /// All three elements lie in the group and `x y z = 1`.
    pub cond1: bool,
    /// Element orders; zero when `cond1` fails.
    pub orders: [u64; 3],
    pub hyperbolic: bool,
    pub generation: Generation,
    pub generation_method: GenerationMethod,
}

/// `alpha(g) = M phi^j(g) M^-1` inverts the first two elements of each
/// triple after rotating triple `i` by `rotations[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness<M> {
    pub conjugator: M,
    pub frobenius: u32,
    pub rotations: [u8; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrongReality<M> {
    Witness(Witness<M>),
    /// Nothing in the searched family works; `covers_aut` says whether the
    /// family was all of Aut(G), which makes this a proof.
    NoneFound { covers_aut: bool, candidates: usize },
    NotChecked,
}

impl<M> StrongReality<M> {
    pub fn witness(&self) -> Option<&Witness<M>> {
        match self {
            StrongReality::Witness(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport<M> {
    pub effort: Effort,
    pub triples: [TripleReport; 2],
    pub cond3: Option<bool>,
    pub cond3_method: Option<Cond3Method>,
    pub strongly_real: StrongReality<M>,
}

impl<M> VerificationReport<M> {
    pub fn pass(&self) -> bool {
        self.triples.iter().all(|t| {
            t.cond1 && t.hyperbolic && t.generation == Generation::Proven
        }) && self.cond3 == Some(true)
    }
}

fn failed_triple() -> TripleReport {
    TripleReport {
        cond1: false,
        orders: [0; 3],
        hyperbolic: false,
        generation: Generation::Unknown,
        generation_method: GenerationMethod::Skipped,
    }
}

/// Condition (1) and orders, with `member` deciding membership.
fn basic_triple<G: Group>(
    g: &G,
    t: &Triple<G::Elem>,
    member: impl Fn(G::Elem) -> Option<G::Elem>,
) -> Option<([G::Elem; 3], TripleReport)> {
    let elems: Option<Vec<G::Elem>> = t.to_array().iter().map(|&e| member(e)).collect();
    let elems: [G::Elem; 3] = elems?.try_into().ok()?;
    if g.mul(g.mul(elems[0], elems[1]), elems[2]) != g.identity() {
        return None;
    }
    let orders = elems.map(|e| g.element_order(e));
    Some((
        elems,
        TripleReport {
            cond1: true,
            orders,
            hyperbolic: is_hyperbolic(orders[0], orders[1], orders[2]),
            generation: Generation::Unknown,
            generation_method: GenerationMethod::Skipped,
        },
    ))
}

fn as_tuple(o: [u64; 3]) -> (u64, u64, u64) {
    (o[0], o[1], o[2])
}

/// Decides everything on an enumerated ambient group. Elements must already
/// be canonical for `fg`'s group.
pub fn verify_enumerated<G: Group>(
    fg: &FiniteGroup<G>,
    s: &BeauvilleStructure<G::Elem>,
) -> Result<VerificationReport<G::Elem>> {
    let g = fg.group();
    let n = fg.order();
    let mut reports = [failed_triple(), failed_triple()];
    let mut canon: Vec<[G::Elem; 3]> = Vec::new();
    for (i, t) in s.triples().iter().enumerate() {
        if let Some((elems, mut r)) = basic_triple(g, t, |e| fg.contains(&e).then_some(e)) {
            r.generation = if fg.subgroup_order(&elems[..2], n)? == n {
                Generation::Proven
            } else {
                Generation::Disproven
            };
            r.generation_method = GenerationMethod::Closure;
            reports[i] = r;
            canon.push(elems);
        }
    }
    let (cond3, method) = if canon.len() == 2 {
        let holds = fg.condition3(&canon[0], &canon[1])?;
        let shortcut = gcd_shortcut(as_tuple(reports[0].orders), as_tuple(reports[1].orders));
        (Some(holds), Some(if shortcut { Cond3Method::Gcd } else { Cond3Method::Exhaustive }))
    } else {
        (None, None)
    };
    Ok(VerificationReport {
        effort: Effort::Exhaustive,
        triples: reports,
        cond3,
        cond3_method: method,
        strongly_real: StrongReality::NotChecked,
    })
}

/// Traces of the non-identity powers of the elements; in L_2(q) traces are
/// only defined up to sign, so the smaller of `±tr` is kept.
fn power_traces(g: &LinearGroup, elems: &[Mat2; 3], orders: [u64; 3]) -> BTreeSet<Fe> {
    let f = g.field();
    let mut out = BTreeSet::new();
    for (&m, &o) in elems.iter().zip(&orders) {
        let mut acc = m;
        for _ in 1..o {
            let tr = acc.trace(f);
            out.insert(if g.mode().is_projective() { tr.min(f.neg(tr)) } else { tr });
            acc = acc.mul(f, m);
        }
    }
    out
}

fn linear_member(g: &LinearGroup, m: Mat2) -> Option<Mat2> {
    g.element(m).ok()
}

/// Fast verification: no enumeration.
fn verify_linear_fast(s: &LinearStructure) -> VerificationReport<Mat2> {
    let g = s.group();
    let f = &s.field;
    let mut reports = [failed_triple(), failed_triple()];
    let mut canon: Vec<[Mat2; 3]> = Vec::new();
    for (i, t) in s.structure.triples().iter().enumerate() {
        if let Some((elems, mut r)) = basic_triple(&g, t, |m| linear_member(&g, m)) {
            // the ladder reads projective data, which is unaffected by the
            // canonical sign choice
            r.generation = ladder(f, &elems);
            r.generation_method = GenerationMethod::Ladder;
            reports[i] = r;
            canon.push(elems);
        }
    }
    let (cond3, method) = if canon.len() == 2 {
        if gcd_shortcut(as_tuple(reports[0].orders), as_tuple(reports[1].orders)) {
            (Some(true), Some(Cond3Method::Gcd))
        } else {
            let a = power_traces(&g, &canon[0], reports[0].orders);
            let b = power_traces(&g, &canon[1], reports[1].orders);
            if a.is_disjoint(&b) {
                (Some(true), Some(Cond3Method::TraceDisjoint))
            } else {
                (None, None)
            }
        }
    } else {
        (None, None)
    };
    VerificationReport {
        effort: Effort::Fast,
        triples: reports,
        cond3,
        cond3_method: method,
        strongly_real: StrongReality::NotChecked,
    }
}

/// The whole of SL_2(q) or L_2(q), enumerated.
pub fn linear_closure(field: &Field, mode: Mode) -> Result<FiniteGroup<LinearGroup>> {
    let g = LinearGroup::new(field, mode);
    let gens = g.standard_generators();
    closure(g, &gens, DEFAULT_BOUND)
}

/// Panics if two strategies decided the same field differently: that is a
/// bug, not a property of the input.
fn assert_consistent<M>(fast: &VerificationReport<M>, full: &VerificationReport<M>) {
    for (a, b) in fast.triples.iter().zip(&full.triples) {
        assert_eq!(a.cond1, b.cond1, "condition (1) verdicts differ");
        assert_eq!(a.orders, b.orders, "element orders differ");
        if a.generation != Generation::Unknown {
            assert_eq!(a.generation, b.generation, "ladder contradicts closure");
        }
    }
    if let (Some(x), Some(y)) = (fast.cond3, full.cond3) {
        assert_eq!(x, y, "condition (3) verdicts differ");
    }
}

/// Verifies a structure on SL_2(q) or L_2(q) and searches for a
/// strongly-real witness.
pub fn verify(s: &LinearStructure, effort: Effort) -> Result<VerificationReport<Mat2>> {
    let fast = verify_linear_fast(s);
    let mut report = match effort {
        Effort::Fast => fast,
        Effort::Exhaustive => {
            let g = s.group();
            let fg = linear_closure(&s.field, g.mode())?;
            let canon = BeauvilleStructure::new(
                s.structure.t1.map(|m| g.element(m).unwrap_or(m)),
                s.structure.t2.map(|m| g.element(m).unwrap_or(m)),
            );
            let full = verify_enumerated(&fg, &canon)?;
            assert_consistent(&fast, &full);
            full
        }
    };
    if report.triples.iter().all(|t| t.cond1) {
        report.strongly_real = strongly_real_check(s, effort);
    }
    Ok(report)
}

/// Searches `candidates × j × rotations` in order for an automorphism
/// inverting `x` and `y` of both rotated triples. `apply(M, j, g)` evaluates
/// the candidate automorphism, `same` compares group elements.
pub fn search_inverting<M: Clone, E: Copy>(
    s: &BeauvilleStructure<E>,
    candidates: impl IntoIterator<Item = M>,
    frobenius_powers: u32,
    apply: impl Fn(&M, u32, E) -> E,
    inverse: impl Fn(E) -> E,
    same: impl Fn(E, E) -> bool,
) -> (Option<Witness<M>>, usize) {
    let mut tried = 0;
    for m in candidates {
        for j in 0..frobenius_powers {
            tried += 1;
            let inverts = |e: E| same(apply(&m, j, e), inverse(e));
            let ok = |t: Triple<E>| (0..3).find(|&r| {
                let t = t.rotate(r);
                inverts(t.x) && inverts(t.y)
            });
            if let (Some(r1), Some(r2)) = (ok(s.t1), ok(s.t2)) {
                return (
                    Some(Witness { conjugator: m, frobenius: j, rotations: [r1 as u8, r2 as u8] }),
                    tried,
                );
            }
        }
    }
    (None, tried)
}

/// `M phi^j(g) M^-1` in the mode of `g`.
fn linear_automorphism(group: &LinearGroup, m: Mat2, m_inv: Mat2, j: u32, a: Mat2) -> Mat2 {
    let f = group.field();
    group.canonical(m.mul(f, a.frobenius(f, j)).mul(f, m_inv))
}

/// Strongly-real witness search on SL_2(q) or L_2(q). Candidates are the
/// standard involutors, then (exhaustive effort, q <= 13) all of PGL_2(q),
/// which together with the Frobenius powers is the full automorphism group.
pub fn strongly_real_check(s: &LinearStructure, effort: Effort) -> StrongReality<Mat2> {
    let g = s.group();
    let f = &s.field;
    let pgl = LinearGroup::new(f, Mode::PGL2);
    let run = |cands: Vec<Mat2>| {
        let with_inv: Vec<(Mat2, Mat2)> = cands
            .into_iter()
            .map(|m| (m, m.inverse(f).expect("invertible")))
            .collect();
        search_inverting(
            &s.structure,
            with_inv,
            f.e(),
            |&(m, mi), j, a| linear_automorphism(&g, m, mi, j, a),
            |a| g.inv(a),
            |a, b| g.same(a, b),
        )
    };
    let standard: BTreeSet<Mat2> = standard_involutors(f).into_iter().map(|m| pgl.canonical(m)).collect();
    let (w, mut tried) = run(standard.into_iter().collect());
    if let Some(w) = w {
        return StrongReality::Witness(drop_inverse(w));
    }
    if effort == Effort::Exhaustive && f.q() <= 13 {
        let all = linear_closure(f, Mode::PGL2).map(|fg| {
            let mut v = fg.elements().to_vec();
            v.sort();
            v
        });
        if let Ok(all) = all {
            let (w, n) = run(all);
            tried += n;
            if let Some(w) = w {
                return StrongReality::Witness(drop_inverse(w));
            }
            return StrongReality::NoneFound { covers_aut: true, candidates: tried };
        }
    }
    StrongReality::NoneFound { covers_aut: false, candidates: tried }
}

fn drop_inverse(w: Witness<(Mat2, Mat2)>) -> Witness<Mat2> {
    Witness { conjugator: w.conjugator.0, frobenius: w.frobenius, rotations: w.rotations }
}

/// Checks a witness literally: the automorphism inverts the two chosen
/// elements of each rotated triple and is multiplicative on them.
pub fn check_witness(s: &LinearStructure, w: &Witness<Mat2>) -> bool {
    let g = s.group();
    let f = &s.field;
    let Ok(mi) = w.conjugator.inverse(f) else {
        return false;
    };
    let alpha = |a: Mat2| linear_automorphism(&g, w.conjugator, mi, w.frobenius, a);
    s.structure.triples().iter().zip(w.rotations).all(|(t, r)| {
        let t = t.rotate(r as usize);
        let inv = g.same(alpha(t.x), g.inv(t.x)) && g.same(alpha(t.y), g.inv(t.y));
        let hom = g.same(alpha(g.mul(t.x, t.y)), g.mul(alpha(t.x), alpha(t.y)));
        inv && hom
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex3b() -> LinearStructure {
        let f = Field::prime(13).unwrap();
        let x1 = Mat2::from_ints(&f, [[0, 1], [-1, 2]]);
        let y1 = Mat2::from_ints(&f, [[-2, -1], [1, 0]]);
        let x2 = Mat2::from_ints(&f, [[2, 0], [0, 7]]);
        let y2 = Mat2::from_ints(&f, [[3, 3], [-3, 6]]);
        LinearStructure::from_pairs(&f, Family::PSL2, (x1, y1), (x2, y2)).unwrap()
    }

    #[test]
    fn rotation_keeps_product_and_cycles_type() {
        let s = ex3b();
        let g = s.group();
        let t = s.structure.t2;
        for r in 0..3 {
            let u = t.rotate(r);
            assert!(g.is_identity(g.mul(g.mul(u.x, u.y), u.z)));
        }
        assert_eq!(t.rotate(1).to_array(), [t.y, t.z, t.x]);
    }

    #[test]
    fn identical_triples_fail_condition3() {
        let s = ex3b();
        let t = LinearStructure::new(&s.field, Family::PSL2, s.structure.t2, s.structure.t2).unwrap();
        for effort in [Effort::Fast, Effort::Exhaustive] {
            let r = verify(&t, effort).unwrap();
            assert_ne!(r.cond3, Some(true));
            assert!(!r.pass());
        }
        assert_eq!(verify(&t, Effort::Exhaustive).unwrap().cond3, Some(false));
    }

    #[test]
    fn broken_product_fails_condition1() {
        let mut s = ex3b();
        let f = s.field.clone();
        s.structure.t1.z = Mat2::from_ints(&f, [[1, 1], [0, 1]]);
        let r = verify(&s, Effort::Fast).unwrap();
        assert!(!r.triples[0].cond1);
        assert!(r.triples[1].cond1);
        assert!(!r.pass());
    }

    #[test]
    fn example_3b_witness_is_the_swap() {
        let s = ex3b();
        let r = verify(&s, Effort::Exhaustive).unwrap();
        assert!(r.pass(), "{r:?}");
        let w = r.strongly_real.witness().expect("witness");
        assert_eq!(w.conjugator, Mat2::from_ints(&s.field, [[0, 1], [1, 0]]));
        assert_eq!(w.frobenius, 0);
        assert!(check_witness(&s, w));
    }
}
