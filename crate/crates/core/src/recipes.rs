//! Explicit Beauville structures on L_2(q) and SL_2(q) for q > 5.
//!
//! The first triple comes from companion-type matrices
//! `X1 = [[0,1],[-1,a]]`, `Y1 = [[b,-1],[1,0]]`, `Z1 = [[1,0],[b-a,1]]`
//! with `a, b` traces of elements of large order in the non-split torus.
//! The second is `X2 = diag(c, 1/c)`, `Y2 = [[x,y],[z,w]]` where `x, w` solve
//!
//! ```text
//! x + w = S,    c x + w / c = T
//! ```
//!
//! for targets `(S, T)` fixed by the branch, and `z = -y` whenever the
//! structure should be strongly real (then the swap `[[0,1],[1,0]]` inverts
//! `X_i` and `Y_i`). Every choice is made by the smallest canonical
//! candidate, so the output is a function of the field alone.

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::beauville::{Family, LinearStructure, Triple};
use crate::error::{Error, Result};
use crate::ffield::{make_field, Fe, Field, Poly, QuadExtension};
use crate::psl2::{LinearGroup, Mat2, Mode};

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `b = -a`, `±a` the trace of an element of projective order (q+1)/2.
    #[default]
    OppositeTraces,
    /// Two distinct traces of elements of the same order.
    DistinctTraces,
    /// Generic second triple, `tr Z2 = tr X2`, not necessarily strongly real.
    TraceMatched,
    /// Even q: `1 - x w` is always a square.
    EvenQ,
    /// `s = -(c^2+c+1)` a non-square.
    SNonSquare,
    /// `s` a square, `c^2 - c + 1` a non-square; `Z2` has eigenvalues `-c^{±1}`.
    TNonSquare,
    /// Both squares: `c` replaced by `c^2`.
    SquaredRoot,
    /// SL_2, q = 3 mod 4: `c = -d` with `d^2 - d + 1` a non-square.
    SlNegatedRoot,
    /// SL_2: eigenvalues of `Y2, Z2` shifted to `c^{±2}`.
    SlSquaredEigenvalues,
    /// SL_2: `Y2` with eigenvalues `c^{±3}`.
    SlCubedEigenvalues,
    /// Hand-picked matrices for a small field.
    Fixture,
}

/// The parameters behind one triple of a construction.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RecipeChoice {
    pub branch: Branch,
    pub a: Option<Fe>,
    pub b: Option<Fe>,
    pub c: Option<Fe>,
    pub d: Option<Fe>,
    pub x: Option<Fe>,
    pub w: Option<Fe>,
    pub y: Option<Fe>,
    pub z: Option<Fe>,
    pub s: Option<Fe>,
    pub tq: Option<Fe>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub structure: LinearStructure,
    pub t1: RecipeChoice,
    pub t2: RecipeChoice,
}

fn triple_from_pair(f: &Field, x: Mat2, y: Mat2) -> Triple<Mat2> {
    Triple::new(x, y, x.mul(f, y).adjugate(f))
}

/// `(X1, Y1, Z1)` from traces `a, b`.
fn companion_triple(f: &Field, a: Fe, b: Fe) -> Triple<Mat2> {
    let (zero, one) = (f.zero(), f.one());
    let x = Mat2::new(zero, one, f.neg(one), a);
    let y = Mat2::new(b, f.neg(one), one, zero);
    triple_from_pair(f, x, y)
}

fn too_small(q: u64) -> Result<()> {
    if q <= 5 {
        return Err(Error::Unsupported(format!(
            "q = {q}: L_2(q) and SL_2(q) have no Beauville structure for q <= 5"
        )));
    }
    Ok(())
}

/// The first triple. Odd q, L_2: orders `((q+1)/2, (q+1)/2, p)` with
/// `b = -a`. Even q: two classes of elements of order `q+1`, `z` an
/// involution. SL_2, odd q: distinct traces of order `(q+1)/2` (q = 1 mod 4)
/// or `q+1` (q = 3 mod 4); q = 11 uses fixed matrices of order 12.
pub fn triple_t1(f: &Field, mode: Mode) -> Result<(Triple<Mat2>, RecipeChoice)> {
    let q = f.q();
    too_small(q)?;
    let ext = QuadExtension::new(f);
    let special = matches!(mode, Mode::SL2 | Mode::GL2);
    let (a, b, branch) = if f.p() == 2 {
        let (a, b) = ext.two_traces(q + 1)?;
        (a, b, Branch::DistinctTraces)
    } else if special && q == 11 {
        let x = Mat2::from_ints(f, [[0, 1], [-1, 5]]);
        let y = Mat2::from_ints(f, [[0, 1], [-1, -5]]);
        let choice = RecipeChoice { branch: Branch::Fixture, ..Default::default() };
        return Ok((triple_from_pair(f, x, y), choice));
    } else if special {
        let n = if q % 4 == 1 { (q + 1) / 2 } else { q + 1 };
        let (a, b) = ext.two_traces(n)?;
        (a, b, Branch::DistinctTraces)
    } else {
        let a = ext.traces_of_projective_order((q + 1) / 2)?[0];
        (a, f.neg(a), Branch::OppositeTraces)
    };
    let choice = RecipeChoice { branch, a: Some(a), b: Some(b), ..Default::default() };
    Ok((companion_triple(f, a, b), choice))
}

/// Solves `x + w = s_target`, `c x + w/c = t_target`.
fn solve_xw(f: &Field, c: Fe, s_target: Fe, t_target: Fe) -> Result<(Fe, Fe)> {
    let ci = f.inv(c).ok_or(Error::ZeroElement)?;
    let den = f.sub(c, ci);
    let x = f
        .div(f.sub(t_target, f.mul(ci, s_target)), den)
        .ok_or_else(|| Error::Unsupported("c = ±1 gives no torus element".into()))?;
    Ok((x, f.sub(s_target, x)))
}

/// `X2 = diag(c, 1/c)`, `Y2 = [[x, y], [-y, w]]` with `y = sqrt(1 - x w)`.
/// `None` when `1 - x w` is zero or a non-square.
fn strongly_real_t2(f: &Field, c: Fe, s_target: Fe, t_target: Fe) -> Result<Option<(Triple<Mat2>, RecipeChoice)>> {
    let (x, w) = solve_xw(f, c, s_target, t_target)?;
    let r = f.sub(f.one(), f.mul(x, w));
    if r == f.zero() {
        return Ok(None);
    }
    let Some(y) = f.sqrt(r) else {
        return Ok(None);
    };
    let z = f.neg(y);
    let x2 = Mat2::diag(c, f.inv(c).expect("nonzero"));
    let y2 = Mat2::new(x, y, z, w);
    let choice = RecipeChoice {
        c: Some(c),
        x: Some(x),
        w: Some(w),
        y: Some(y),
        z: Some(z),
        ..Default::default()
    };
    Ok(Some((triple_from_pair(f, x2, y2), choice)))
}

/// The generic second triple: `tr X2 = tr Y2 = tr Z2`, `y = 1`. q = 11 uses
/// a triple of order-5 elements with traces ±3, ±3, ±4.
pub fn triple_t2(f: &Field, mode: Mode) -> Result<(Triple<Mat2>, RecipeChoice)> {
    let q = f.q();
    too_small(q)?;
    if q == 11 && f.e() == 1 {
        return Ok((eq3_triple(f), RecipeChoice { branch: Branch::Fixture, ..Default::default() }));
    }
    if q < 13 && q != 8 {
        return Err(Error::Unsupported(format!("no generic second triple for q = {q}")));
    }
    let g = f.smallest_primitive_root();
    let c = if mode.is_special() && !mode.is_projective() && q % 4 == 3 {
        // odd order (q-1)/2, so the triple is faithful in SL_2
        f.neg(g)
    } else {
        g
    };
    let ci = f.inv(c).expect("nonzero");
    let tr = f.add(c, ci);
    let (x, w) = solve_xw(f, c, tr, tr)?;
    if x == c || x == ci {
        return Err(Error::Unsupported("x w = 1 would give a common fixed point".into()));
    }
    let y = f.one();
    let z = f.sub(f.mul(x, w), f.one());
    let x2 = Mat2::diag(c, ci);
    let y2 = Mat2::new(x, y, z, w);
    let choice = RecipeChoice {
        branch: Branch::TraceMatched,
        c: Some(c),
        x: Some(x),
        w: Some(w),
        y: Some(y),
        z: Some(z),
        ..Default::default()
    };
    Ok((triple_from_pair(f, x2, y2), choice))
}

fn eq3_triple(f: &Field) -> Triple<Mat2> {
    Triple::new(
        Mat2::from_ints(f, [[2, 0], [0, 6]]),
        Mat2::from_ints(f, [[0, 1], [-1, -3]]),
        Mat2::from_ints(f, [[4, -2], [-5, 0]]),
    )
}

/// The strongly-real second triple for q = 8 or q >= 13, walking the
/// branches in order: even q, `s` non-square, `c^2-c+1` non-square, `c -> c^2`.
pub fn strongly_real_t2_ladder(f: &Field) -> Result<(Triple<Mat2>, RecipeChoice)> {
    let c = f.smallest_primitive_root();
    let ci = f.inv(c).expect("nonzero");
    let tr = f.add(c, ci);
    let fail = || Error::Unsupported(format!("no strongly real second triple for q = {}", f.q()));
    if f.p() == 2 {
        let (t, mut ch) = strongly_real_t2(f, c, tr, tr)?.ok_or_else(fail)?;
        ch.branch = Branch::EvenQ;
        return Ok((t, ch));
    }
    let c2 = f.square(c);
    let s = f.neg(f.add(f.add(c2, c), f.one()));
    let tq = f.add(f.sub(c2, c), f.one());
    let with = |mut ch: RecipeChoice, branch| {
        ch.branch = branch;
        ch.s = Some(s);
        ch.tq = Some(tq);
        ch
    };
    if !f.is_square(s) {
        let (t, ch) = strongly_real_t2(f, c, tr, tr)?.ok_or_else(fail)?;
        return Ok((t, with(ch, Branch::SNonSquare)));
    }
    if !f.is_square(tq) {
        let (t, ch) = strongly_real_t2(f, c, tr, f.neg(tr))?.ok_or_else(fail)?;
        return Ok((t, with(ch, Branch::TNonSquare)));
    }
    let tr2 = f.add(c2, f.inv(c2).expect("nonzero"));
    let (t, ch) = strongly_real_t2(f, c2, tr2, tr2)?.ok_or_else(fail)?;
    Ok((t, with(ch, Branch::SquaredRoot)))
}

fn f9() -> Result<Field> {
    make_field(3, 2, Some(Poly::from_signed(3, &[1, 0, 1])))
}

fn fixture_construction(s: LinearStructure) -> Construction {
    let fx = RecipeChoice { branch: Branch::Fixture, ..Default::default() };
    Construction { structure: s, t1: fx.clone(), t2: fx }
}

/// A strongly real structure on L_2(q), q > 5. For q = 9 the result is over
/// F_3[t]/(t^2+1) whatever modulus `f` uses.
pub fn strongly_real_structure_psl2(f: &Field) -> Result<Construction> {
    linear_construction(f, Family::PSL2)
}

fn linear_construction(f: &Field, family: Family) -> Result<Construction> {
    let q = f.q();
    too_small(q)?;
    if q == 7 {
        return Ok(fixture_construction(q7_structure(family)?));
    }
    if q == 9 {
        return Ok(fixture_construction(q9_structure(family)?));
    }
    let mode = family.mode().expect("linear");
    let (t1, c1) = triple_t1(f, mode)?;
    let (t2, c2) = if q == 11 {
        if family == Family::SL2 {
            (q11_sl2_t2(f), RecipeChoice { branch: Branch::Fixture, ..Default::default() })
        } else {
            (eq3_triple(f), RecipeChoice { branch: Branch::Fixture, ..Default::default() })
        }
    } else if family == Family::SL2 && q % 4 == 3 {
        sl2_negated_root_t2(f)?
    } else {
        strongly_real_t2_ladder(f)?
    };
    Ok(Construction { structure: LinearStructure::new(f, family, t1, t2)?, t1: c1, t2: c2 })
}

/// A strongly real structure on SL_2(q), q > 5.
pub fn structure_sl2(f: &Field) -> Result<Construction> {
    linear_construction(f, Family::SL2)
}

/// SL_2, q = 3 mod 4, q > 11: `c = -d` for a primitive root `d`. First
/// every `d` is tried with `x + w = c x + w/c = c + 1/c`; failing that, the
/// smallest `d` is used with both targets `c^2 + c^-2`, or else with
/// `x + w = c^3 + c^-3` and `c x + w/c = c + 1/c`.
fn sl2_negated_root_t2(f: &Field) -> Result<(Triple<Mat2>, RecipeChoice)> {
    let pw = |c: Fe, k: u128| {
        let ck = f.pow(c, k);
        f.add(ck, f.inv(ck).expect("nonzero"))
    };
    let attempt = |d: Fe, branch: Branch, s_t: Fe, t_t: Fe| -> Result<Option<(Triple<Mat2>, RecipeChoice)>> {
        Ok(strongly_real_t2(f, f.neg(d), s_t, t_t)?.map(|(t, mut ch)| {
            ch.branch = branch;
            ch.d = Some(d);
            (t, ch)
        }))
    };
    let roots = f.primitive_roots();
    for &d in &roots {
        let c = f.neg(d);
        if let Some(found) = attempt(d, Branch::SlNegatedRoot, pw(c, 1), pw(c, 1))? {
            return Ok(found);
        }
    }
    for &d in &roots {
        let c = f.neg(d);
        if let Some(found) = attempt(d, Branch::SlSquaredEigenvalues, pw(c, 2), pw(c, 2))? {
            return Ok(found);
        }
        if let Some(found) = attempt(d, Branch::SlCubedEigenvalues, pw(c, 3), pw(c, 1))? {
            return Ok(found);
        }
    }
    Err(Error::Unsupported(format!("no SL_2 second triple for q = {}", f.q())))
}

fn q7_structure(family: Family) -> Result<LinearStructure> {
    let f = Field::prime(7)?;
    let m = |e| Mat2::from_ints(&f, e);
    LinearStructure::new(
        &f,
        family,
        // printed as [[-2,-2],[3,-1]], which is X1 Y1 rather than its inverse
        Triple::new(m([[0, 1], [-1, 3]]), m([[-2, 2], [-2, -2]]), m([[-1, 2], [-3, -2]])),
        Triple::new(m([[0, 1], [-1, 2]]), m([[0, -1], [1, 2]]), m([[-2, -2], [-2, 1]])),
    )
}

fn q9_structure(family: Family) -> Result<LinearStructure> {
    let f = f9()?;
    let m = |e: [&str; 4]| Mat2::parse(&f, e);
    LinearStructure::new(
        &f,
        family,
        Triple::new(
            m(["t+1", "0", "0", "t-1"])?,
            m(["-t+1", "t", "-t+1", "-1"])?,
            m(["-t+1", "-t+1", "t", "-1"])?,
        ),
        Triple::new(
            m(["1", "t+1", "t", "t"])?,
            m(["t", "t+1", "t", "1"])?,
            m(["-t-1", "t+1", "-1", "-t-1"])?,
        ),
    )
}

/// `B = [[0,1],[t+1,0]]` over F_3[t]/(t^2+1).
pub fn q9_involutor() -> Result<Mat2> {
    let f = f9()?;
    Mat2::parse(&f, ["0", "1", "t+1", "0"])
}

fn q11_sl2_t2(f: &Field) -> Triple<Mat2> {
    let m = |e| Mat2::from_ints(f, e);
    Triple::new(m([[0, 1], [-1, -4]]), m([[3, -1], [1, 0]]), m([[1, 0], [-4, 1]]))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Row {
    pub q: u64,
    /// Smallest primitive root.
    pub g: u64,
    /// `d = g^i`.
    pub i: u64,
    pub d: u64,
    pub d_inv: u64,
    /// `d - 1 + 1/d`, a non-zero square.
    pub r: u64,
}

/// The least power `d = g^i` (i a unit mod q-1) of the smallest primitive
/// root for which `d - 1 + 1/d` is a non-zero square mod the prime `q`.
pub fn table1_row(q: u64) -> Result<Table1Row> {
    if !arith::is_prime(q) || q % 4 != 3 || q < 11 {
        return Err(Error::Unsupported(format!("table rows need a prime q = 3 mod 4, q >= 11; got {q}")));
    }
    let f = Field::prime(q)?;
    let g = f.smallest_primitive_root();
    for i in (1..q - 1).filter(|&i| arith::gcd(i, q - 1) == 1) {
        let d = f.pow(g, i as u128);
        let di = f.inv(d).expect("nonzero");
        let r = f.add(f.sub(d, f.one()), di);
        if r != f.zero() && f.is_square(r) {
            return Ok(Table1Row { q, g: g.index(), i, d: d.index(), d_inv: di.index(), r: r.index() });
        }
    }
    Err(Error::NoWitness(format!("no primitive power d with d - 1 + 1/d a non-zero square mod {q}")))
}

/// A structure with its matrices copied from a worked example, plus the
/// conjugating matrix claimed to invert `x_i` and `y_i`.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub structure: LinearStructure,
    pub involutor: Mat2,
}

pub const FIXTURE_NAMES: [&str; 8] = ["3A", "3B", "3C", "5A", "5B", "q7", "q9", "q11-sl2"];

fn swap(f: &Field) -> Mat2 {
    Mat2::new(f.zero(), f.one(), f.one(), f.zero())
}

/// Worked examples. Where only the second triple is printed, the first one
/// is the recipe's.
pub fn golden_fixture(name: &str) -> Result<Fixture> {
    let with_recipe_t1 = |f: &Field, family: Family, t2: Triple<Mat2>| -> Result<LinearStructure> {
        let (t1, _) = triple_t1(f, family.mode().expect("linear"))?;
        LinearStructure::new(f, family, t1, t2)
    };
    let (name, structure, involutor) = match name {
        "3A" => {
            let f = make_field(2, 3, Some(Poly::parse(2, "t^3+t+1")?))?;
            let m = |e: [&str; 4]| Mat2::parse(&f, e);
            let t2 = Triple::new(
                m(["t", "0", "0", "t^2+1"])?,
                m(["t^2", "t^2", "t^2", "t+1"])?,
                m(["t^2", "t+1", "t", "t+1"])?,
            );
            ("3A", with_recipe_t1(&f, Family::PSL2, t2)?, swap(&f))
        }
        "3B" => {
            let f = Field::prime(13)?;
            let m = |e| Mat2::from_ints(&f, e);
            let t2 = Triple::new(m([[2, 0], [0, 7]]), m([[3, 3], [-3, 6]]), m([[3, -6], [-5, 6]]));
            ("3B", with_recipe_t1(&f, Family::PSL2, t2)?, swap(&f))
        }
        "3C" => {
            let f = Field::prime(37)?;
            let m = |e| Mat2::from_ints(&f, e);
            let t2 = Triple::new(m([[4, 0], [0, -9]]), m([[-1, 16], [-16, -4]]), m([[-1, 10], [4, -4]]));
            ("3C", with_recipe_t1(&f, Family::PSL2, t2)?, swap(&f))
        }
        "5A" => {
            let f = Field::prime(19)?;
            let m = |e| Mat2::from_ints(&f, e);
            let t2 = Triple::new(m([[-2, 0], [0, 9]]), m([[-7, 2], [-2, -5]]), m([[-7, 4], [-1, -5]]));
            ("5A", with_recipe_t1(&f, Family::SL2, t2)?, swap(&f))
        }
        "5B" => {
            let f = make_field(3, 3, Some(Poly::parse(3, "t^3-t+1")?))?;
            let m = |e: [&str; 4]| Mat2::parse(&f, e);
            let t2 = Triple::new(
                m(["-t", "0", "0", "t^2-1"])?,
                m(["0", "1", "-1", "t^2+1"])?,
                m(["t^2-t-1", "t", "t^2-1", "0"])?,
            );
            ("5B", with_recipe_t1(&f, Family::SL2, t2)?, swap(&f))
        }
        "q7" => {
            let s = q7_structure(Family::PSL2)?;
            let a = swap(&s.field);
            ("q7", s, a)
        }
        "q9" => ("q9", q9_structure(Family::PSL2)?, q9_involutor()?),
        "q11-sl2" => {
            let f = Field::prime(11)?;
            let (t1, _) = triple_t1(&f, Mode::SL2)?;
            let s = LinearStructure::new(&f, Family::SL2, t1, q11_sl2_t2(&f))?;
            ("q11-sl2", s, swap(&f))
        }
        other => return Err(Error::Unsupported(format!("unknown fixture {other:?}"))),
    };
    Ok(Fixture { name, structure, involutor })
}

pub fn golden_fixtures() -> Result<Vec<Fixture>> {
    FIXTURE_NAMES.iter().map(|n| golden_fixture(n)).collect()
}

/// Whether two structures agree element by element in their group.
pub fn same_structure(a: &LinearStructure, b: &LinearStructure) -> bool {
    if a.field != b.field || a.family != b.family {
        return false;
    }
    let g: LinearGroup = a.group();
    a.structure
        .triples()
        .iter()
        .zip(b.structure.triples())
        .all(|(s, t)| s.to_array().iter().zip(t.to_array()).all(|(&m, n)| g.same(m, n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table1_first_rows() {
        let r = table1_row(11).unwrap();
        assert_eq!((r.g, r.i, r.d, r.d_inv, r.r), (2, 3, 8, 7, 3));
        let r = table1_row(103).unwrap();
        assert_eq!((r.d, r.d_inv, r.r), (5, 62, 66));
        assert!(table1_row(13).is_err());
    }

    #[test]
    fn example_3b_values() {
        let f = Field::prime(13).unwrap();
        let (_, ch) = strongly_real_t2_ladder(&f).unwrap();
        assert_eq!(ch.branch, Branch::SNonSquare);
        assert_eq!(ch.c, Some(f.int(2)));
        assert_eq!((ch.x, ch.w, ch.y, ch.z), (Some(f.int(3)), Some(f.int(6)), Some(f.int(3)), Some(f.int(-3))));
        assert_eq!(ch.s, Some(f.int(6)));
    }

    #[test]
    fn example_5a_values() {
        let f = Field::prime(19).unwrap();
        let (t, ch) = sl2_negated_root_t2(&f).unwrap();
        assert_eq!(ch.branch, Branch::SlNegatedRoot);
        assert_eq!(ch.d, Some(f.int(2)));
        assert_eq!((ch.x, ch.w, ch.y), (Some(f.int(-7)), Some(f.int(-5)), Some(f.int(2))));
        assert_eq!(t.z, Mat2::from_ints(&f, [[-7, 4], [-1, -5]]));
    }

    #[test]
    fn q_le_5_refused() {
        for q in [2, 3, 4, 5] {
            let f = Field::of_order(q).unwrap();
            assert!(strongly_real_structure_psl2(&f).is_err());
            assert!(structure_sl2(&f).is_err());
        }
    }
}
