//! GF(q^2) as a degree-2 extension of a base field GF(q).
//!
//! Odd `q`: `s^2 = nu` with `nu` the smallest non-square of the base.
//! Even `q`: `s^2 + s + beta = 0` with `beta` the smallest element of absolute
//! trace 1. An element is `c0 + c1 s`.

use crate::arith;
use crate::error::{Error, Result};

use super::{Fe, Field};

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QElem {
    pub c0: Fe,
    pub c1: Fe,
}

#[derive(Clone, Debug)]
pub struct QuadExtension {
    base: Field,
    /// `nu` for odd q, `beta` for even q.
    constant: Fe,
    generator: QElem,
}

impl QuadExtension {
    pub fn new(base: &Field) -> QuadExtension {
        let constant = if base.p() == 2 {
            base.nonzero()
                .find(|&b| base.absolute_trace(b) == base.one())
                .expect("trace is onto F_2")
        } else {
            base.nonzero()
                .find(|&a| !base.is_square(a))
                .expect("odd fields have non-squares")
        };
        let mut ext = QuadExtension {
            base: base.clone(),
            constant,
            generator: QElem::default(),
        };
        ext.generator = ext.search_generator();
        ext
    }

    fn search_generator(&self) -> QElem {
        let q = self.base.q();
        let n = q * q - 1;
        let divs = arith::prime_divisors(n);
        (1..q * q)
            .map(|i| self.from_index(i))
            .find(|&v| divs.iter().all(|&r| self.pow(v, (n / r) as u128) != self.one()))
            .expect("multiplicative group is cyclic")
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    /// `nu` (odd q) or `beta` (even q) from the defining polynomial of `s`.
    pub fn defining_constant(&self) -> Fe {
        self.constant
    }

    /// A fixed generator of GF(q^2)*.
    pub fn generator(&self) -> QElem {
        self.generator
    }

    /// Canonical index `c0 + c1 q`.
    pub fn index(&self, v: QElem) -> u64 {
        v.c0.0 + v.c1.0 * self.base.q()
    }

    pub fn from_index(&self, i: u64) -> QElem {
        let q = self.base.q();
        QElem { c0: Fe(i % q), c1: Fe(i / q) }
    }

    pub fn embed(&self, a: Fe) -> QElem {
        QElem { c0: a, c1: Fe(0) }
    }

    pub fn zero(&self) -> QElem {
        QElem::default()
    }

    pub fn one(&self) -> QElem {
        self.embed(Fe(1))
    }

    pub fn s(&self) -> QElem {
        QElem { c0: Fe(0), c1: Fe(1) }
    }

    /// The base-field value of `v`, if it lies in the base.
    pub fn to_base(&self, v: QElem) -> Option<Fe> {
        (v.c1 == Fe(0)).then_some(v.c0)
    }

    pub fn add(&self, u: QElem, v: QElem) -> QElem {
        let f = &self.base;
        QElem { c0: f.add(u.c0, v.c0), c1: f.add(u.c1, v.c1) }
    }

    pub fn neg(&self, v: QElem) -> QElem {
        QElem { c0: self.base.neg(v.c0), c1: self.base.neg(v.c1) }
    }

    pub fn sub(&self, u: QElem, v: QElem) -> QElem {
        self.add(u, self.neg(v))
    }

    pub fn mul(&self, u: QElem, v: QElem) -> QElem {
        let f = &self.base;
        let a0b0 = f.mul(u.c0, v.c0);
        let a1b1 = f.mul(u.c1, v.c1);
        let cross = f.add(f.mul(u.c0, v.c1), f.mul(u.c1, v.c0));
        if f.p() == 2 {
            // s^2 = s + beta
            QElem {
                c0: f.add(a0b0, f.mul(a1b1, self.constant)),
                c1: f.add(cross, a1b1),
            }
        } else {
            QElem { c0: f.add(a0b0, f.mul(a1b1, self.constant)), c1: cross }
        }
    }

    pub fn pow(&self, v: QElem, mut exp: u128) -> QElem {
        let mut base = v;
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// The nontrivial automorphism `v -> v^q`.
    pub fn conj(&self, v: QElem) -> QElem {
        let f = &self.base;
        if f.p() == 2 {
            // the other root of s^2 + s + beta is s + 1
            QElem { c0: f.add(v.c0, v.c1), c1: v.c1 }
        } else {
            QElem { c0: v.c0, c1: f.neg(v.c1) }
        }
    }

    /// `v * v^q`, in the base field.
    pub fn norm(&self, v: QElem) -> Fe {
        self.to_base(self.mul(v, self.conj(v))).expect("norm lies in the base")
    }

    /// `v + v^q`, in the base field.
    pub fn trace(&self, v: QElem) -> Fe {
        self.to_base(self.add(v, self.conj(v))).expect("trace lies in the base")
    }

    pub fn inv(&self, v: QElem) -> Option<QElem> {
        let n = self.base.inv(self.norm(v))?;
        let c = self.conj(v);
        Some(QElem { c0: self.base.mul(c.c0, n), c1: self.base.mul(c.c1, n) })
    }

    pub fn order(&self, v: QElem) -> Result<u64> {
        if v == self.zero() {
            return Err(Error::ZeroElement);
        }
        let q = self.base.q();
        let mut order = q * q - 1;
        for (r, _) in arith::factorize(order) {
            while order % r == 0 && self.pow(v, (order / r) as u128) == self.one() {
                order /= r;
            }
        }
        Ok(order)
    }

    /// All elements of exact multiplicative order `n`, ordered by exponent of the generator.
    pub fn elements_of_order(&self, n: u64) -> Result<Vec<QElem>> {
        let q = self.base.q();
        let m = q * q - 1;
        if n == 0 || m % n != 0 {
            return Err(Error::NoSuchTorus { n });
        }
        let u = self.pow(self.generator, (m / n) as u128);
        Ok((1..=n)
            .filter(|&k| arith::gcd(k, n) == 1)
            .map(|k| self.pow(u, k as u128))
            .collect())
    }

    /// The distinct values `u + u^{-1}` over `u` of exact order `n`, sorted.
    ///
    /// These are the traces of the SL_2 elements with eigenvalues `u^{±1}`;
    /// `n` must divide `q - 1` (split torus) or `q + 1` (norm-one circle).
    pub fn traces_of_order(&self, n: u64) -> Result<Vec<Fe>> {
        let q = self.base.q();
        if n == 0 || ((q - 1) % n != 0 && (q + 1) % n != 0) {
            return Err(Error::NoSuchTorus { n });
        }
        let mut out: Vec<Fe> = self
            .elements_of_order(n)?
            .into_iter()
            .map(|u| {
                let s = self.add(u, self.inv(u).expect("nonzero"));
                self.to_base(s).expect("u + 1/u lies in the base when n | q±1")
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Traces of SL_2 elements whose image in PSL_2 has order `n`.
    pub fn traces_of_projective_order(&self, n: u64) -> Result<Vec<Fe>> {
        if self.base.p() == 2 {
            return self.traces_of_order(n);
        }
        let mut out = self.traces_of_order(2 * n).unwrap_or_default();
        if n % 2 == 1 {
            out.extend(self.traces_of_order(n).unwrap_or_default());
        }
        if out.is_empty() {
            return Err(Error::NoSuchTorus { n });
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// The smallest trace `u + u^{-1}` with `u` of exact order `n`.
    pub fn find_norm_one_trace(&self, n: u64) -> Result<Fe> {
        Ok(self.traces_of_order(n)?[0])
    }

    /// The two smallest distinct traces of elements of exact order `n`.
    pub fn two_traces(&self, n: u64) -> Result<(Fe, Fe)> {
        let traces = self.traces_of_order(n)?;
        if traces.len() < 2 {
            return Err(Error::TooFewTraces { n, wanted: 2, found: traces.len() });
        }
        Ok((traces[0], traces[1]))
    }

    /// A square root in GF(q^2) (every base element has one). Returns the
    /// root with the smaller canonical index.
    pub fn sqrt(&self, v: QElem) -> Option<QElem> {
        if v == self.zero() {
            return Some(v);
        }
        let q = self.base.q() as u128;
        if self.base.p() == 2 {
            return Some(self.pow(v, q * q / 2));
        }
        let m = q * q - 1;
        if self.pow(v, m / 2) != self.one() {
            return None;
        }
        let r = self.tonelli_shanks(v, m as u64);
        let nr = self.neg(r);
        Some(if self.index(nr) < self.index(r) { nr } else { r })
    }

    fn tonelli_shanks(&self, a: QElem, m: u64) -> QElem {
        let s = m.trailing_zeros();
        let t = m >> s;
        // the generator is a non-square
        let mut c = self.pow(self.generator, t as u128);
        let mut x = self.pow(a, t.div_ceil(2) as u128);
        let mut b = self.pow(a, t as u128);
        let mut k = s;
        while b != self.one() {
            let mut i = 0;
            let mut b2 = b;
            while b2 != self.one() {
                b2 = self.mul(b2, b2);
                i += 1;
            }
            let mut f = c;
            for _ in 0..k - i - 1 {
                f = self.mul(f, f);
            }
            x = self.mul(x, f);
            c = self.mul(f, f);
            b = self.mul(b, c);
            k = i;
        }
        x
    }

    /// Roots in GF(q^2) of `a z^2 + b z + c` with base coefficients and
    /// `a != 0`; one root when it is a double root, two otherwise.
    pub fn solve_quadratic(&self, a: Fe, b: Fe, c: Fe) -> Vec<QElem> {
        let f = &self.base;
        let ainv = f.inv(a).expect("leading coefficient must be nonzero");
        let (b, c) = (f.mul(b, ainv), f.mul(c, ainv));
        let mut roots = if f.p() == 2 {
            if b == f.zero() {
                vec![self.embed(f.sqrt(c).expect("char 2"))]
            } else {
                // z = b w with w^2 + w = c / b^2
                let gamma = f.div(c, f.square(b)).expect("b != 0");
                let w = self.artin_schreier(gamma);
                let z = self.mul(self.embed(b), w);
                vec![z, self.add(z, self.embed(b))]
            }
        } else {
            let half = f.inv(f.int(2)).expect("odd characteristic");
            let disc = f.sub(f.square(b), f.mul(f.int(4), c));
            let r = self.sqrt(self.embed(disc)).expect("base elements are squares in GF(q^2)");
            let mb = self.embed(f.neg(b));
            let h = self.embed(half);
            let z1 = self.mul(self.add(mb, r), h);
            let z2 = self.mul(self.sub(mb, r), h);
            if z1 == z2 {
                vec![z1]
            } else {
                vec![z1, z2]
            }
        };
        roots.sort_by_key(|&z| self.index(z));
        roots
    }

    /// A solution of `w^2 + w = gamma` for base `gamma` (characteristic 2),
    /// found by solving the F_2-linear system in the bit coordinates.
    fn artin_schreier(&self, gamma: Fe) -> QElem {
        let e = self.base.e() as usize;
        let dim = 2 * e;
        let to_bits = |v: QElem| v.c0.0 | (v.c1.0 << e);
        let from_bits = |x: u64| QElem { c0: Fe(x & ((1 << e) - 1)), c1: Fe(x >> e) };
        // column j = L(basis_j) where L(w) = w^2 + w
        let cols: Vec<u64> = (0..dim)
            .map(|j| {
                let w = from_bits(1 << j);
                to_bits(self.add(self.mul(w, w), w))
            })
            .collect();
        // Gaussian elimination on rows of the augmented matrix
        let target = to_bits(self.embed(gamma));
        let mut rows: Vec<(u64, bool)> = (0..dim)
            .map(|i| {
                let mut row = 0u64;
                for (j, &col) in cols.iter().enumerate() {
                    if (col >> i) & 1 == 1 {
                        row |= 1 << j;
                    }
                }
                (row, (target >> i) & 1 == 1)
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for j in 0..dim {
            let Some(k) = (r..dim).find(|&k| (rows[k].0 >> j) & 1 == 1) else {
                continue;
            };
            rows.swap(r, k);
            for k in 0..dim {
                if k != r && (rows[k].0 >> j) & 1 == 1 {
                    rows[k].0 ^= rows[r].0;
                    rows[k].1 ^= rows[r].1;
                }
            }
            pivots.push(j);
            r += 1;
        }
        let mut x = 0u64;
        for (i, &j) in pivots.iter().enumerate() {
            if rows[i].1 {
                x |= 1 << j;
            }
        }
        let w = from_bits(x);
        debug_assert_eq!(self.add(self.mul(w, w), w), self.embed(gamma));
        w
    }
}
