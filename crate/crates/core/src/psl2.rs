//! 2x2 matrices over a finite field and the groups SL_2, GL_2, PSL_2, PGL_2.
//!
//! Projective elements are stored as a canonical matrix representative:
//! PSL_2 picks the sign whose first nonzero entry (scan order a, b, c, d) is
//! the smaller of itself and its negation, PGL_2 scales that entry to 1.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::ffield::{Fe, Field, QElem, QuadExtension};
use crate::grouptool::Group;

/// Row-major `[[a, b], [c, d]]`. Entries only mean something relative to a [`Field`].
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    pub a: Fe,
    pub b: Fe,
    pub c: Fe,
    pub d: Fe,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { a: Fe(1), b: Fe(0), c: Fe(0), d: Fe(1) };

    pub fn new(a: Fe, b: Fe, c: Fe, d: Fe) -> Mat2 {
        Mat2 { a, b, c, d }
    }

    /// Integer entries reduced into the prime subfield.
    pub fn from_ints(f: &Field, [[a, b], [c, d]]: [[i64; 2]; 2]) -> Mat2 {
        Mat2::new(f.int(a), f.int(b), f.int(c), f.int(d))
    }

    /// Entries in the polynomial text form accepted by [`Field::parse`].
    pub fn parse(f: &Field, [a, b, c, d]: [&str; 4]) -> Result<Mat2> {
        Ok(Mat2::new(f.parse(a)?, f.parse(b)?, f.parse(c)?, f.parse(d)?))
    }

    pub fn diag(x: Fe, y: Fe) -> Mat2 {
        Mat2::new(x, Fe(0), Fe(0), y)
    }

    pub fn entries(self) -> [Fe; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(self, f: &Field) -> Fe {
        f.sub(f.mul(self.a, self.d), f.mul(self.b, self.c))
    }

    pub fn trace(self, f: &Field) -> Fe {
        f.add(self.a, self.d)
    }

    pub fn mul(self, f: &Field, o: Mat2) -> Mat2 {
        Mat2 {
            a: f.add(f.mul(self.a, o.a), f.mul(self.b, o.c)),
            b: f.add(f.mul(self.a, o.b), f.mul(self.b, o.d)),
            c: f.add(f.mul(self.c, o.a), f.mul(self.d, o.c)),
            d: f.add(f.mul(self.c, o.b), f.mul(self.d, o.d)),
        }
    }

    pub fn scale(self, f: &Field, k: Fe) -> Mat2 {
        Mat2::new(f.mul(k, self.a), f.mul(k, self.b), f.mul(k, self.c), f.mul(k, self.d))
    }

    pub fn neg(self, f: &Field) -> Mat2 {
        Mat2::new(f.neg(self.a), f.neg(self.b), f.neg(self.c), f.neg(self.d))
    }

    pub fn inverse(self, f: &Field) -> Result<Mat2> {
        let di = f.inv(self.det(f)).ok_or(Error::Singular)?;
        Ok(Mat2::new(self.d, f.neg(self.b), f.neg(self.c), self.a).scale(f, di))
    }

    /// Inverse of a determinant-one matrix, without a field inversion.
    pub fn adjugate(self, f: &Field) -> Mat2 {
        Mat2::new(self.d, f.neg(self.b), f.neg(self.c), self.a)
    }

    pub fn pow(self, f: &Field, mut n: u128) -> Mat2 {
        let mut base = self;
        let mut acc = Mat2::IDENTITY;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(f, base);
            }
            base = base.mul(f, base);
            n >>= 1;
        }
        acc
    }

    /// Entrywise `x -> x^(p^j)`.
    pub fn frobenius(self, f: &Field, j: u32) -> Mat2 {
        Mat2::new(
            f.frobenius(self.a, j),
            f.frobenius(self.b, j),
            f.frobenius(self.c, j),
            f.frobenius(self.d, j),
        )
    }

    pub fn is_scalar(self) -> bool {
        self.b == Fe(0) && self.c == Fe(0) && self.a == self.d
    }

    pub fn in_field(self, f: &Field) -> bool {
        self.entries().iter().all(|&x| f.contains(x))
    }

    pub fn display(self, f: &Field) -> String {
        format!(
            "[[{}, {}], [{}, {}]]",
            f.format(self.a),
            f.format(self.b),
            f.format(self.c),
            f.format(self.d)
        )
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    SL2,
    GL2,
    PSL2,
    PGL2,
}

impl Mode {
    pub fn is_projective(self) -> bool {
        matches!(self, Mode::PSL2 | Mode::PGL2)
    }

    pub fn is_special(self) -> bool {
        matches!(self, Mode::SL2 | Mode::PSL2)
    }

    pub fn projective(self) -> Mode {
        match self {
            Mode::SL2 | Mode::PSL2 => Mode::PSL2,
            Mode::GL2 | Mode::PGL2 => Mode::PGL2,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One of SL_2(q), GL_2(q), PSL_2(q), PGL_2(q) with elements in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearGroup {
    field: Field,
    mode: Mode,
}

impl LinearGroup {
    pub fn new(field: &Field, mode: Mode) -> LinearGroup {
        LinearGroup { field: field.clone(), mode }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn canonical(&self, m: Mat2) -> Mat2 {
        let f = &self.field;
        match self.mode {
            Mode::SL2 | Mode::GL2 => m,
            Mode::PSL2 => {
                let lead = m.entries().into_iter().find(|&x| x != Fe(0)).unwrap_or(Fe(0));
                if f.neg(lead) < lead {
                    m.neg(f)
                } else {
                    m
                }
            }
            Mode::PGL2 => match m.entries().into_iter().find(|&x| x != Fe(0)) {
                Some(lead) => m.scale(f, f.inv(lead).expect("nonzero")),
                None => m,
            },
        }
    }

    /// Validates membership and returns the canonical representative.
    pub fn element(&self, m: Mat2) -> Result<Mat2> {
        if !m.in_field(&self.field) {
            return Err(Error::NotInGroup);
        }
        let det = m.det(&self.field);
        if det == Fe(0) {
            return Err(Error::Singular);
        }
        if self.mode.is_special() && det != Fe(1) {
            return Err(Error::NotInGroup);
        }
        Ok(self.canonical(m))
    }

    /// Whether two matrices represent the same element.
    pub fn same(&self, m: Mat2, n: Mat2) -> bool {
        self.canonical(m) == self.canonical(n)
    }

    pub fn is_identity(&self, m: Mat2) -> bool {
        match self.mode {
            Mode::SL2 | Mode::GL2 => m == Mat2::IDENTITY,
            Mode::PSL2 => m == Mat2::IDENTITY || m == Mat2::IDENTITY.neg(&self.field),
            Mode::PGL2 => m.is_scalar() && m.a != Fe(0),
        }
    }

    /// Group order.
    pub fn order(&self) -> u64 {
        let q = self.field.q();
        let sl = q * (q * q - 1);
        match self.mode {
            Mode::SL2 | Mode::PGL2 => sl,
            Mode::GL2 => sl * (q - 1),
            Mode::PSL2 => sl / self.field.k(),
        }
    }

    /// A generating set: unitriangular `[[1,1],[0,1]]`, `[[1,0],[1,1]]` and a
    /// torus element from the field generator (plus a determinant generator in
    /// GL_2/PGL_2).
    pub fn standard_generators(&self) -> Vec<Mat2> {
        let f = &self.field;
        let g = f.generator();
        let mut gens = vec![
            Mat2::new(f.one(), f.one(), f.zero(), f.one()),
            Mat2::new(f.one(), f.zero(), f.one(), f.one()),
        ];
        if f.q() > 3 {
            gens.push(Mat2::diag(g, f.inv(g).expect("nonzero")));
        }
        if !self.mode.is_special() {
            gens.push(Mat2::diag(g, f.one()));
        }
        gens.into_iter().map(|m| self.canonical(m)).collect()
    }

    /// Element order: the trace class bounds the candidates, then prime
    /// divisors are peeled off while the power stays trivial.
    pub fn element_order(&self, m: Mat2) -> u64 {
        let f = &self.field;
        let (p, q) = (f.p(), f.q());
        let bound = if self.mode.is_special() && m.det(f) == Fe(1) {
            trace_class(f, m.trace(f)).linear_bound(f, m.trace(f))
        } else {
            p * (q * q - 1)
        };
        let mut order = bound;
        debug_assert!(self.is_identity(m.pow(f, order as u128)));
        for (r, _) in arith::factorize(bound) {
            while order % r == 0 && self.is_identity(m.pow(f, (order / r) as u128)) {
                order /= r;
            }
        }
        order
    }

    /// Reference implementation: multiply until the identity appears.
    pub fn order_by_powering(&self, m: Mat2) -> u64 {
        let f = &self.field;
        let mut acc = m;
        let mut n = 1;
        while !self.is_identity(acc) {
            acc = acc.mul(f, m);
            n += 1;
        }
        n
    }
}

impl Group for LinearGroup {
    type Elem = Mat2;

    fn identity(&self) -> Mat2 {
        Mat2::IDENTITY
    }

    fn mul(&self, a: Mat2, b: Mat2) -> Mat2 {
        self.canonical(a.mul(&self.field, b))
    }

    fn inv(&self, a: Mat2) -> Mat2 {
        let f = &self.field;
        let m = if self.mode.is_special() {
            a.adjugate(f)
        } else {
            a.inverse(f).expect("group elements are invertible")
        };
        self.canonical(m)
    }

    fn encode(&self, a: Mat2, out: &mut Vec<u8>) {
        for x in a.entries() {
            out.extend_from_slice(&(x.index() as u32).to_le_bytes());
        }
    }

    fn decode(&self, bytes: &[u8]) -> Option<Mat2> {
        if bytes.len() != 16 {
            return None;
        }
        let mut e = [Fe(0); 4];
        for (i, chunk) in bytes.chunks_exact(4).enumerate() {
            let v = u32::from_le_bytes(chunk.try_into().ok()?) as u64;
            e[i] = self.field.element(v).ok()?;
        }
        let m = Mat2::new(e[0], e[1], e[2], e[3]);
        self.element(m).ok().filter(|&c| c == m)
    }

    fn element_order(&self, a: Mat2) -> u64 {
        LinearGroup::element_order(self, a)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceKind {
    Split,
    Parabolic,
    Nonsplit,
}

/// The eigenvalue type of an SL_2 element with a given trace.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct TraceClass {
    pub kind: TraceKind,
}

impl TraceClass {
    /// A multiple of the projective order: `(q-1)/k`, `p` or `(q+1)/k`.
    pub fn projective_bound(self, f: &Field) -> u64 {
        let (q, k) = (f.q(), f.k());
        match self.kind {
            TraceKind::Split => (q - 1) / k,
            TraceKind::Parabolic => f.p(),
            TraceKind::Nonsplit => (q + 1) / k,
        }
    }

    /// A multiple of the order in SL_2 of an element with trace `tau`.
    pub fn linear_bound(self, f: &Field, tau: Fe) -> u64 {
        let (p, q) = (f.p(), f.q());
        match self.kind {
            TraceKind::Split => q - 1,
            TraceKind::Nonsplit => q + 1,
            TraceKind::Parabolic if tau == f.int(2) => p,
            TraceKind::Parabolic => 2 * p,
        }
    }
}

/// Classifies `tau` by whether `x^2 - tau x + 1` has distinct roots in F_q,
/// a repeated root, or roots only in GF(q^2).
pub fn trace_class(f: &Field, tau: Fe) -> TraceClass {
    let kind = if f.p() == 2 {
        if tau == f.zero() {
            TraceKind::Parabolic
        } else {
            // x = tau w turns the polynomial into w^2 + w + 1/tau^2
            let gamma = f.inv(f.square(tau)).expect("nonzero");
            if f.absolute_trace(gamma) == f.zero() {
                TraceKind::Split
            } else {
                TraceKind::Nonsplit
            }
        }
    } else {
        let disc = f.sub(f.square(tau), f.int(4));
        if disc == f.zero() {
            TraceKind::Parabolic
        } else if f.is_square(disc) {
            TraceKind::Split
        } else {
            TraceKind::Nonsplit
        }
    };
    TraceClass { kind }
}

/// A point of the projective line: `[x : 1]` or `[1 : 0]`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjPoint<T> {
    At(T),
    Inf,
}

/// Fixed points on P^1(F_q); `None` for scalar matrices, which fix everything.
pub fn fixed_points(f: &Field, m: Mat2) -> Option<Vec<ProjPoint<Fe>>> {
    if m.is_scalar() {
        return None;
    }
    // a z + b = z (c z + d)  <=>  c z^2 + (d - a) z - b = 0
    let mut pts = Vec::new();
    if m.c == f.zero() {
        pts.push(ProjPoint::Inf);
        let lin = f.sub(m.d, m.a);
        if lin != f.zero() {
            pts.push(ProjPoint::At(f.div(m.b, lin).expect("nonzero")));
        }
    } else {
        let lin = f.sub(m.d, m.a);
        let con = f.neg(m.b);
        pts.extend(f.elements().filter(|&z| {
            f.add(f.add(f.mul(m.c, f.square(z)), f.mul(lin, z)), con) == f.zero()
        }).map(ProjPoint::At));
    }
    pts.sort();
    Some(pts)
}

/// Fixed points on P^1(GF(q^2)); `None` for scalar matrices.
pub fn fixed_points_ext(ext: &QuadExtension, m: Mat2) -> Option<Vec<ProjPoint<QElem>>> {
    let f = ext.base();
    if m.is_scalar() {
        return None;
    }
    let mut pts = Vec::new();
    if m.c == f.zero() {
        pts.push(ProjPoint::Inf);
        let lin = f.sub(m.d, m.a);
        if lin != f.zero() {
            pts.push(ProjPoint::At(ext.embed(f.div(m.b, lin).expect("nonzero"))));
        }
    } else {
        let roots = ext.solve_quadratic(m.c, f.sub(m.d, m.a), f.neg(m.b));
        pts.extend(roots.into_iter().map(ProjPoint::At));
    }
    Some(pts)
}

/// Whether two determinant-one matrices share an eigenvector over the
/// algebraic closure (equivalently a fixed point on P^1(GF(q^2))):
/// exactly when `tr(M N M^-1 N^-1) = 2`.
pub fn common_fixed_point(f: &Field, m: Mat2, n: Mat2) -> bool {
    let comm = m.mul(f, n).mul(f, m.adjugate(f)).mul(f, n.adjugate(f));
    comm.trace(f) == f.int(2)
}

/// Whether conjugation by `a` (any invertible matrix) inverts `m` in `group`.
pub fn is_inverted_by(group: &LinearGroup, m: Mat2, a: Mat2) -> Result<bool> {
    let f = group.field();
    let ai = a.inverse(f)?;
    let conj = a.mul(f, m).mul(f, ai);
    let minv = m.inverse(f)?;
    Ok(group.same(conj, minv))
}

/// The literal criterion for `A = [[0,1],[1,0]]` acting on SL_2: `b + c = 0`.
pub fn swap_inverts(f: &Field, m: Mat2) -> bool {
    f.add(m.b, m.c) == f.zero()
}

/// Candidate conjugators for strongly real structures: `A = [[0,1],[1,0]]`,
/// then `B = [[0,1],[t+1,0]]` when q = 9, then every `[[0,1],[l,0]]`.
pub fn standard_involutors(f: &Field) -> Vec<Mat2> {
    let anti = |l: Fe| Mat2::new(f.zero(), f.one(), l, f.zero());
    let mut out = vec![anti(f.one())];
    if f.q() == 9 {
        out.push(anti(f.add(f.t(), f.one())));
    }
    for l in f.nonzero() {
        let m = anti(l);
        if !out.contains(&m) {
            out.push(m);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{make_field, Poly};

    fn f13() -> Field {
        Field::prime(13).unwrap()
    }

    #[test]
    fn basic_arithmetic() {
        let f = f13();
        let m = Mat2::from_ints(&f, [[2, 0], [0, 7]]);
        assert_eq!(m.inverse(&f).unwrap(), Mat2::from_ints(&f, [[7, 0], [0, 2]]));
        assert_eq!(m.pow(&f, 0), Mat2::IDENTITY);
        let x2 = Mat2::from_ints(&f, [[2, 0], [0, 7]]);
        let y2 = Mat2::from_ints(&f, [[3, 3], [-3, 6]]);
        let z2 = Mat2::from_ints(&f, [[3, -6], [-5, 6]]);
        assert_eq!(x2.mul(&f, y2), z2.inverse(&f).unwrap());
        assert_eq!(Mat2::from_ints(&f, [[1, 1], [1, 1]]).inverse(&f), Err(Error::Singular));
    }

    #[test]
    fn orders_in_both_modes() {
        let f = f13();
        let sl = LinearGroup::new(&f, Mode::SL2);
        let psl = LinearGroup::new(&f, Mode::PSL2);
        let m = Mat2::from_ints(&f, [[2, 0], [0, 7]]);
        assert_eq!(sl.element_order(m), 12);
        assert_eq!(psl.element_order(psl.canonical(m)), 6);
        let u = Mat2::from_ints(&f, [[1, 0], [5, 1]]);
        assert_eq!(sl.element_order(u), 13);
        assert_eq!(psl.element_order(u), 13);

        let f37 = Field::prime(37).unwrap();
        let sl = LinearGroup::new(&f37, Mode::SL2);
        let psl = LinearGroup::new(&f37, Mode::PSL2);
        for m in [[[4, 0], [0, -9]], [[-1, 16], [-16, -4]], [[-1, 10], [4, -4]]] {
            let m = Mat2::from_ints(&f37, m);
            assert_eq!(sl.element_order(m), 18);
            assert_eq!(psl.element_order(m), 9);
        }
    }

    #[test]
    fn trace_classes() {
        let f = f13();
        let c = trace_class(&f, f.int(9));
        assert_eq!(c.kind, TraceKind::Split);
        assert_eq!(c.projective_bound(&f), 6);
        assert_eq!(trace_class(&f, f.int(2)).kind, TraceKind::Parabolic);
        assert_eq!(trace_class(&f, f.int(-2)).kind, TraceKind::Parabolic);
        let c = trace_class(&f, f.int(5));
        assert_eq!(c.kind, TraceKind::Nonsplit);
        assert_eq!(c.projective_bound(&f), 7);
    }

    #[test]
    fn fixed_point_examples() {
        let f = f13();
        let d = Mat2::from_ints(&f, [[2, 0], [0, 7]]);
        assert_eq!(
            fixed_points(&f, d),
            Some(vec![ProjPoint::At(f.zero()), ProjPoint::Inf])
        );
        let f11 = Field::prime(11).unwrap();
        // the order-12 matrix with trace 5 is nonsplit; the trace -4 one fixes 3 and 4
        let x1 = Mat2::from_ints(&f11, [[0, 1], [-1, 5]]);
        assert_eq!(fixed_points(&f11, x1), Some(vec![]));
        let x2 = Mat2::from_ints(&f11, [[0, 1], [-1, -4]]);
        assert_eq!(
            fixed_points(&f11, x2),
            Some(vec![ProjPoint::At(f11.int(3)), ProjPoint::At(f11.int(4))])
        );
        let z2 = Mat2::from_ints(&f11, [[1, 0], [-4, 1]]);
        assert_eq!(fixed_points(&f11, z2), Some(vec![ProjPoint::At(f11.zero())]));
        let u = Mat2::from_ints(&f, [[1, 0], [4, 1]]);
        assert_eq!(fixed_points(&f, u).unwrap().len(), 1);
        assert_eq!(fixed_points(&f, Mat2::IDENTITY), None);
        assert!(common_fixed_point(&f, d, Mat2::from_ints(&f, [[4, 0], [0, 10]])));
        assert!(!common_fixed_point(&f, d, Mat2::from_ints(&f, [[3, 3], [-3, 6]])));
    }

    #[test]
    fn inversion_by_swap() {
        let f = f13();
        let sl = LinearGroup::new(&f, Mode::SL2);
        let a = standard_involutors(&f)[0];
        assert_eq!(a, Mat2::from_ints(&f, [[0, 1], [1, 0]]));
        let y2 = Mat2::from_ints(&f, [[3, 3], [-3, 6]]);
        assert!(is_inverted_by(&sl, y2, a).unwrap());
        let x1 = Mat2::from_ints(&f, [[0, 1], [-1, 5]]);
        assert!(is_inverted_by(&sl, x1, a).unwrap());
        let m = Mat2::from_ints(&f, [[1, 1], [1, 2]]);
        assert!(!is_inverted_by(&sl, m, a).unwrap());
        assert!(!swap_inverts(&f, m));
    }

    #[test]
    fn involutors_for_f9() {
        let f9 = make_field(3, 2, Some(Poly::parse(3, "t^2+1").unwrap())).unwrap();
        let inv = standard_involutors(&f9);
        assert_eq!(inv[1], Mat2::parse(&f9, ["0", "1", "t+1", "0"]).unwrap());
        assert_eq!(inv.len(), 8);
        assert_eq!(standard_involutors(&f13()).len(), 12);
    }

    #[test]
    fn canonical_forms() {
        let f = f13();
        let psl = LinearGroup::new(&f, Mode::PSL2);
        let m = Mat2::from_ints(&f, [[0, 5], [-5, 3]]);
        let c = psl.canonical(m);
        assert_eq!(c, psl.canonical(m.neg(&f)));
        assert_eq!(psl.canonical(c), c);
        let pgl = LinearGroup::new(&f, Mode::PGL2);
        let c = pgl.canonical(m.scale(&f, f.int(7)));
        assert_eq!(c.b, f.one());
        assert_eq!(pgl.canonical(m), c);
    }

    #[test]
    fn group_orders() {
        let f = f13();
        assert_eq!(LinearGroup::new(&f, Mode::PSL2).order(), 1092);
        assert_eq!(LinearGroup::new(&f, Mode::SL2).order(), 2184);
        let f8 = Field::of_order(8).unwrap();
        assert_eq!(LinearGroup::new(&f8, Mode::PSL2).order(), 504);
    }
}
