//! The Suzuki groups Sz(q), q = 2^e with e = 2m+1, as 4x4 matrices over
//! GF(q), plus the order arithmetic for Sz(2^e) and the Ree groups R(3^e).
//!
//! With `theta: x -> x^(2^(m+1))` (so `theta^2` is squaring) the group is
//! generated by the unipotent elements
//!
//! ```text
//! S(a, b) = [ 1                          0            0  0 ]
//!           [ a                          1            0  0 ]
//!           [ b                          a^theta      1  0 ]
//!           [ a^(2+theta) + ab + b^theta  a^(1+theta)+b a  1 ]
//! ```
//!
//! the torus `D(l) = diag(l^(1+2^m), l^(2^m), l^(-2^m), l^(-1-2^m))` and the
//! antidiagonal involution `W`. Only e = 3 is small enough to enumerate.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::beauville::{
    search_inverting, verify_enumerated, BeauvilleStructure, StrongReality, Triple,
    VerificationReport, Witness,
};
use crate::error::{Error, Result};
use crate::ffield::{make_field, Fe, Field};
use crate::grouptool::{cached_closure, FiniteGroup, Group, DEFAULT_BOUND};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat4(pub [Fe; 16]);

impl Mat4 {
    pub fn identity() -> Mat4 {
        let mut m = [Fe(0); 16];
        for i in 0..4 {
            m[5 * i] = Fe(1);
        }
        Mat4(m)
    }

    pub fn from_rows(rows: [[Fe; 4]; 4]) -> Mat4 {
        let mut m = [Fe(0); 16];
        for (i, row) in rows.iter().enumerate() {
            m[4 * i..4 * i + 4].copy_from_slice(row);
        }
        Mat4(m)
    }

    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.0[4 * i + j]
    }

    pub fn mul(&self, f: &Field, o: &Mat4) -> Mat4 {
        let mut out = [Fe(0); 16];
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = f.zero();
                for k in 0..4 {
                    acc = f.add(acc, f.mul(self.get(i, k), o.get(k, j)));
                }
                out[4 * i + j] = acc;
            }
        }
        Mat4(out)
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self, f: &Field) -> Result<Mat4> {
        let mut a = self.0;
        let mut inv = Mat4::identity().0;
        for col in 0..4 {
            let piv = (col..4).find(|&r| a[4 * r + col] != f.zero()).ok_or(Error::Singular)?;
            for j in 0..4 {
                a.swap(4 * col + j, 4 * piv + j);
                inv.swap(4 * col + j, 4 * piv + j);
            }
            let s = f.inv(a[4 * col + col]).expect("pivot is nonzero");
            for j in 0..4 {
                a[4 * col + j] = f.mul(a[4 * col + j], s);
                inv[4 * col + j] = f.mul(inv[4 * col + j], s);
            }
            for r in (0..4).filter(|&r| r != col) {
                let k = a[4 * r + col];
                if k == f.zero() {
                    continue;
                }
                for j in 0..4 {
                    a[4 * r + j] = f.sub(a[4 * r + j], f.mul(k, a[4 * col + j]));
                    inv[4 * r + j] = f.sub(inv[4 * r + j], f.mul(k, inv[4 * col + j]));
                }
            }
        }
        Ok(Mat4(inv))
    }

    /// Entrywise `x -> x^(p^j)`.
    pub fn frobenius(&self, f: &Field, j: u32) -> Mat4 {
        Mat4(self.0.map(|x| f.frobenius(x, j)))
    }

    pub fn display(&self, f: &Field) -> String {
        let rows: Vec<String> = (0..4)
            .map(|i| {
                let r: Vec<String> = (0..4).map(|j| f.format(self.get(i, j))).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

/// Parameters of Sz(2^e): `q = 2^e`, `m = (e-1)/2`, `r = 2^(m+1)` (`r^2 = 2q`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SzContext {
    pub field: Field,
    pub e: u32,
    pub q: u64,
    pub m: u32,
    pub r: u64,
}

impl SzContext {
    pub fn new(e: u32) -> Result<SzContext> {
        if e < 3 || e % 2 == 0 {
            return Err(Error::Unsupported(format!("Sz(2^e) needs odd e >= 3, got {e}")));
        }
        let field = make_field(2, e, None)?;
        let m = (e - 1) / 2;
        Ok(SzContext { q: 1 << e, m, r: 1 << (m + 1), e, field })
    }

    /// `x^theta = x^(2^(m+1))`.
    pub fn theta(&self, x: Fe) -> Fe {
        self.field.frobenius(x, self.m + 1)
    }

    pub fn order(&self) -> u64 {
        let q = self.q;
        q * q * (q * q + 1) * (q - 1)
    }

    pub fn unipotent(&self, a: Fe, b: Fe) -> Mat4 {
        let f = &self.field;
        let (z, o) = (f.zero(), f.one());
        let at = self.theta(a);
        let bt = self.theta(b);
        let a2t = f.mul(f.square(a), at);
        let a1t = f.mul(a, at);
        let r3 = [f.add(f.add(a2t, f.mul(a, b)), bt), f.add(a1t, b), a, o];
        Mat4::from_rows([[o, z, z, z], [a, o, z, z], [b, at, o, z], r3])
    }

    pub fn torus(&self, l: Fe) -> Mat4 {
        let f = &self.field;
        let k = 1u128 << self.m;
        let li = f.inv(l).expect("torus parameter must be nonzero");
        let z = f.zero();
        Mat4::from_rows([
            [f.pow(l, k + 1), z, z, z],
            [z, f.pow(l, k), z, z],
            [z, z, f.pow(li, k), z],
            [z, z, z, f.pow(li, k + 1)],
        ])
    }

    pub fn weyl(&self) -> Mat4 {
        let f = &self.field;
        let (z, o) = (f.zero(), f.one());
        Mat4::from_rows([[z, z, z, o], [z, z, o, z], [z, o, z, z], [o, z, z, z]])
    }
}

/// `S(1, 0)`, `D(t)` for the field generator `t`, and `W`.
pub fn sz_generators(ctx: &SzContext) -> Vec<Mat4> {
    let f = &ctx.field;
    vec![ctx.unipotent(f.one(), f.zero()), ctx.torus(f.generator()), ctx.weyl()]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuzukiGroup {
    field: Field,
}

impl SuzukiGroup {
    pub fn new(ctx: &SzContext) -> SuzukiGroup {
        SuzukiGroup { field: ctx.field.clone() }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
}

impl Group for SuzukiGroup {
    type Elem = Mat4;

    fn identity(&self) -> Mat4 {
        Mat4::identity()
    }

    fn mul(&self, a: Mat4, b: Mat4) -> Mat4 {
        a.mul(&self.field, &b)
    }

    fn inv(&self, a: Mat4) -> Mat4 {
        a.inverse(&self.field).expect("group elements are invertible")
    }

    fn encode(&self, a: Mat4, out: &mut Vec<u8>) {
        for x in a.0 {
            out.extend_from_slice(&(x.index() as u32).to_le_bytes());
        }
    }

    fn decode(&self, bytes: &[u8]) -> Option<Mat4> {
        if bytes.len() != 64 {
            return None;
        }
        let mut m = [Fe(0); 16];
        for (i, chunk) in bytes.chunks_exact(4).enumerate() {
            m[i] = self.field.element(u32::from_le_bytes(chunk.try_into().ok()?) as u64).ok()?;
        }
        Some(Mat4(m))
    }
}

impl fmt::Display for SzContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sz({})", self.q)
    }
}

/// Sz(8) enumerated (cached under the group-dump directory when configured).
pub fn sz8() -> Result<(SzContext, FiniteGroup<SuzukiGroup>)> {
    let ctx = SzContext::new(3)?;
    let gens = sz_generators(&ctx);
    let fg = cached_closure(SuzukiGroup::new(&ctx), &gens, "sz8", DEFAULT_BOUND)?;
    Ok((ctx, fg))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SzOrderData {
    pub e: u32,
    pub q: u64,
    pub r: u64,
    pub q_minus_1: u64,
    pub q_plus_r_plus_1: u64,
    pub q_minus_r_plus_1: u64,
    /// Whichever of `q ± r + 1` is coprime to 5.
    pub n: u64,
    pub q_minus_1_coprime_to_5: bool,
}

pub fn suzuki_order_data(e: u32) -> Result<SzOrderData> {
    if e < 3 || e % 2 == 0 {
        return Err(Error::Unsupported(format!("Sz(2^e) needs odd e >= 3, got {e}")));
    }
    let q = 1u64.checked_shl(e).filter(|&q| q < 1 << 31).ok_or(Error::FieldTooLarge)?;
    let r = 1u64 << ((e + 1) / 2);
    let (plus, minus) = (q + r + 1, q - r + 1);
    let n = [plus, minus]
        .into_iter()
        .find(|&n| arith::gcd(n, 5) == 1)
        .ok_or_else(|| Error::NoWitness(format!("neither {plus} nor {minus} is coprime to 5")))?;
    Ok(SzOrderData {
        e,
        q,
        r,
        q_minus_1: q - 1,
        q_plus_r_plus_1: plus,
        q_minus_r_plus_1: minus,
        n,
        q_minus_1_coprime_to_5: arith::gcd(q - 1, 5) == 1,
    })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReeOrderData {
    pub e: u32,
    pub q: u64,
    /// `r^2 = 3q`.
    pub r: u64,
    /// `q + 1 + r` and `q + 1 - r`, whose product is `q^2 - q + 1`.
    pub candidates: [u64; 2],
    pub n: u64,
    pub t1_type: (u64, u64, u64),
    pub t2_type: (u64, u64, u64),
    /// `gcd(2*3*7, (q-1)/2 * n^2) = 1`.
    pub coprime: bool,
}

pub fn ree_order_data(e: u32) -> Result<ReeOrderData> {
    if e < 3 || e % 2 == 0 {
        return Err(Error::Unsupported(format!("R(3^e) needs odd e >= 3, got {e}")));
    }
    let q = 3u64.checked_pow(e).filter(|&q| q < 1 << 31).ok_or(Error::FieldTooLarge)?;
    let r = 3u64.pow((e + 1) / 2);
    let candidates = [q + 1 + r, q + 1 - r];
    let n = candidates
        .into_iter()
        .filter(|&n| arith::gcd(n, 7) == 1)
        .min()
        .ok_or_else(|| Error::NoWitness(format!("neither of {candidates:?} is coprime to 7")))?;
    let t2_type = ((q - 1) / 2, n, n);
    let prod = t2_type.0 as u128 * n as u128 * n as u128;
    Ok(ReeOrderData {
        e,
        q,
        r,
        candidates,
        n,
        t1_type: (2, 3, 7),
        t2_type,
        coprime: gcd_u128(42, prod) == 1,
    })
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The least generating triple `(x, y, (xy)^-1)` of the given type: `x` the
/// smallest representative of a class of elements of order `l`, `y` the
/// smallest element (by index) completing the type.
pub fn find_generating_triple<G: Group>(
    fg: &FiniteGroup<G>,
    (l, m, n): (u64, u64, u64),
) -> Result<Option<Triple<G::Elem>>> {
    let orders = fg.orders().to_vec();
    let reps = fg.classes().reps.clone();
    let size = fg.order();
    for &xi in reps.iter().filter(|&&i| orders[i] == l) {
        for yi in (0..size).filter(|&i| orders[i] == m) {
            let zi = fg.inv_idx(fg.mul_idx(xi, yi));
            if orders[zi] != n {
                continue;
            }
            let (x, y) = (fg.element(xi), fg.element(yi));
            if fg.subgroup_order(&[x, y], size)? == size {
                return Ok(Some(Triple::new(x, y, fg.element(zi))));
            }
        }
    }
    Ok(None)
}

/// Beauville structure on Sz(8) of types (2,4,5) and (7,13,13).
pub fn sz_find_structure(fg: &FiniteGroup<SuzukiGroup>) -> Result<BeauvilleStructure<Mat4>> {
    let data = suzuki_order_data(3)?;
    let t1 = find_generating_triple(fg, (2, 4, 5))?
        .ok_or_else(|| Error::NoWitness("no generating (2,4,5) triple".into()))?;
    let t2 = find_generating_triple(fg, (data.q_minus_1, data.n, data.n))?
        .ok_or_else(|| Error::NoWitness("no generating (7,13,13) triple".into()))?;
    Ok(BeauvilleStructure::new(t1, t2))
}

/// Exhaustive verification on Sz(8), including the strongly-real search
/// over all of Aut(Sz(8)) = Sz(8):3.
pub fn verify_sz(
    ctx: &SzContext,
    fg: &FiniteGroup<SuzukiGroup>,
    s: &BeauvilleStructure<Mat4>,
) -> Result<VerificationReport<Mat4>> {
    let mut report = verify_enumerated(fg, s)?;
    if report.triples.iter().all(|t| t.cond1) {
        report.strongly_real = automorphism_search(ctx, fg, s);
    }
    Ok(report)
}

fn automorphism_search(
    ctx: &SzContext,
    fg: &FiniteGroup<SuzukiGroup>,
    s: &BeauvilleStructure<Mat4>,
) -> StrongReality<Mat4> {
    let f = &ctx.field;
    let g = fg.group();
    let cands = fg.elements().iter().map(|&m| (m, g.inv(m)));
    let (w, tried) = search_inverting(
        s,
        cands,
        ctx.e,
        |(m, mi), j, a| m.mul(f, &a.frobenius(f, j)).mul(f, mi),
        |a| g.inv(a),
        |a, b| a == b,
    );
    match w {
        Some(w) => StrongReality::Witness(Witness {
            conjugator: w.conjugator.0,
            frobenius: w.frobenius,
            rotations: w.rotations,
        }),
        None => StrongReality::NoneFound { covers_aut: true, candidates: tried },
    }
}

/// Whether some automorphism `g phi^j(.) g^-1` sends `y` to `y^-1`.
pub fn is_real_under_aut(ctx: &SzContext, fg: &FiniteGroup<SuzukiGroup>, y: Mat4) -> bool {
    let f = &ctx.field;
    let g = fg.group();
    let target = g.inv(y);
    (0..ctx.e).any(|j| {
        let yj = y.frobenius(f, j);
        fg.elements().iter().any(|&m| m.mul(f, &yj) == target.mul(f, &m))
    })
}

/// For each class representative of odd order > 1: element order and
/// centraliser order (equal when the cyclic subgroup is self-centralising).
pub fn odd_centralizers(fg: &FiniteGroup<SuzukiGroup>) -> Result<Vec<(u64, usize)>> {
    let orders = fg.orders().to_vec();
    let mut out = Vec::new();
    for &i in &fg.classes().reps {
        if orders[i] > 1 && orders[i] % 2 == 1 {
            out.push((orders[i], fg.centralizer(&fg.element(i))?.len()));
        }
    }
    Ok(out)
}

/// The element-order spectrum.
pub fn spectrum(fg: &FiniteGroup<SuzukiGroup>) -> BTreeSet<u64> {
    fg.order_spectrum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_data() {
        let d = suzuki_order_data(3).unwrap();
        assert_eq!((d.q_minus_1, d.q_plus_r_plus_1, d.q_minus_r_plus_1, d.n), (7, 13, 5, 13));
        assert!(d.q_minus_1_coprime_to_5);
        let d = suzuki_order_data(5).unwrap();
        assert_eq!((d.q_plus_r_plus_1, d.q_minus_r_plus_1, d.n), (41, 25, 41));
        for e in [3, 5, 7, 9, 11, 13] {
            let d = suzuki_order_data(e).unwrap();
            assert_eq!(d.q_plus_r_plus_1 * d.q_minus_r_plus_1, d.q * d.q + 1);
            assert_eq!(d.r * d.r, 2 * d.q);
        }
        assert!(suzuki_order_data(4).is_err());

        let r = ree_order_data(3).unwrap();
        assert_eq!((r.q, r.r, r.candidates, r.n), (27, 9, [37, 19], 19));
        assert_eq!(r.t2_type, (13, 19, 19));
        assert!(r.coprime);
        for e in [3, 5, 7, 9] {
            let r = ree_order_data(e).unwrap();
            assert_eq!(r.candidates[0] * r.candidates[1], r.q * r.q - r.q + 1);
        }
    }

    #[test]
    fn generators_are_invertible_and_theta_squares() {
        let ctx = SzContext::new(3).unwrap();
        let f = &ctx.field;
        for x in f.elements() {
            assert_eq!(ctx.theta(ctx.theta(x)), f.square(x));
        }
        for g in sz_generators(&ctx) {
            let gi = g.inverse(f).unwrap();
            assert_eq!(g.mul(f, &gi), Mat4::identity());
        }
    }
}
