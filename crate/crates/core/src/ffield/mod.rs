//! Finite fields GF(p^e) = F_p[t]/(f(t)).
//!
//! A [`Field`] is a cheap, shareable handle (an `Arc`) and elements are
//! plain [`Fe`] indices: the coefficient vector `(c_0, ..., c_{e-1})` of
//! `c_0 + c_1 t + ... + c_{e-1} t^{e-1}` read as the base-`p` number
//! `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`. Index order is the canonical total
//! order used for every tie-break: constants come first and higher-degree
//! coefficients are more significant.

mod poly;
pub mod quad;
pub mod symbols;

use std::fmt;
use std::sync::Arc;

use crate::arith::{self, mul_mod, pow_mod};
use crate::error::{Error, Result};

pub use poly::{Poly, PolyClass};
pub use quad::{QElem, QuadExtension};
pub use symbols::{dedekind_symbol, legendre};

/// Log/antilog tables are built for extension fields up to this order.
const LOG_TABLE_LIMIT: u64 = 1 << 20;
/// Addition tables are built for odd-characteristic extension fields up to this order.
const ADD_TABLE_LIMIT: u64 = 1 << 10;
/// Below this order square roots are found by scanning the whole field.
const SQRT_SCAN_LIMIT: u64 = 1 << 10;

/// An element of a [`Field`], stored as its canonical index.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(pub(crate) u64);

impl Fe {
    pub fn index(self) -> u64 {
        self.0
    }
}

#[derive(Clone)]
pub struct Field(Arc<Inner>);

struct Inner {
    p: u64,
    e: u32,
    q: u64,
    modulus: Poly,
    primitive_modulus: bool,
    generator: Fe,
    /// `exp[i] = generator^i`, `log[exp[i]] = i`.
    tables: Option<(Vec<u32>, Vec<u32>)>,
    add_table: Option<Vec<u16>>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}) = F_{}[t]/({})", self.q(), self.p(), self.modulus())
    }
}

/// Builds GF(p^e). When `modulus` is `None` the smallest primitive monic
/// polynomial of degree `e` is used (for `e = 1`, `t - g` with `g` the
/// smallest primitive root mod `p`).
pub fn make_field(p: u64, e: u32, modulus: Option<Poly>) -> Result<Field> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 {
        return Err(Error::ZeroDegree);
    }
    let q = p.checked_pow(e).ok_or(Error::FieldTooLarge)?;
    if q > u64::MAX / 4 {
        return Err(Error::FieldTooLarge);
    }
    let modulus = match modulus {
        Some(m) => {
            if m.p() != p {
                return Err(Error::Malformed(format!(
                    "modulus is over F_{}, not F_{p}",
                    m.p()
                )));
            }
            let deg = m.degree().unwrap_or(0);
            if deg != e as usize {
                return Err(Error::DegreeMismatch { expected: e as usize, found: deg });
            }
            if !m.is_monic() {
                return Err(Error::NotMonic);
            }
            if !m.is_irreducible()? {
                return Err(Error::Reducible(p));
            }
            m
        }
        None => default_modulus(p, e)?,
    };
    Field::build(p, e, q, modulus)
}

fn smallest_primitive_root_mod(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let divs = arith::prime_divisors(p - 1);
    (2..p)
        .find(|&g| divs.iter().all(|&r| pow_mod(g, (p - 1) / r, p) != 1))
        .expect("every prime has a primitive root")
}

fn default_modulus(p: u64, e: u32) -> Result<Poly> {
    if e == 1 {
        let g = smallest_primitive_root_mod(p);
        return Ok(Poly::new(p, vec![(p - g) % p, 1]));
    }
    let count = p.checked_pow(e).ok_or(Error::FieldTooLarge)?;
    for k in 0..count {
        let mut coeffs = Vec::with_capacity(e as usize + 1);
        let mut rest = k;
        for _ in 0..e {
            coeffs.push(rest % p);
            rest /= p;
        }
        coeffs.push(1);
        let f = Poly::new(p, coeffs);
        if f.classify()? == PolyClass::Primitive {
            return Ok(f);
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

impl Field {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Field> {
        make_field(p, 1, None)
    }

    /// GF(q) with the default modulus.
    pub fn of_order(q: u64) -> Result<Field> {
        let (p, e) = arith::prime_power(q).ok_or(Error::NotPrimePower(q))?;
        make_field(p, e, None)
    }

    fn build(p: u64, e: u32, q: u64, modulus: Poly) -> Result<Field> {
        let primitive_modulus = modulus.classify()? == PolyClass::Primitive;
        // table-free handle, used to find a generator and fill the tables
        let bare = Field(Arc::new(Inner {
            p,
            e,
            q,
            modulus: modulus.clone(),
            primitive_modulus,
            generator: Fe(0),
            tables: None,
            add_table: None,
        }));
        let generator = if primitive_modulus {
            bare.t()
        } else {
            bare.search_generator()
        };
        let mut tables = None;
        if e > 1 && q <= LOG_TABLE_LIMIT {
            let mut exp = Vec::with_capacity((q - 1) as usize);
            let mut log = vec![0u32; q as usize];
            let mut acc = bare.one();
            for i in 0..q - 1 {
                exp.push(acc.0 as u32);
                log[acc.0 as usize] = i as u32;
                acc = bare.mul(acc, generator);
            }
            tables = Some((exp, log));
        }
        let mut add_table = None;
        if e > 1 && p != 2 && q <= ADD_TABLE_LIMIT {
            let mut table = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = bare.add_digits(Fe(a), Fe(b)).0 as u16;
                }
            }
            add_table = Some(table);
        }
        Ok(Field(Arc::new(Inner {
            p,
            e,
            q,
            modulus,
            primitive_modulus,
            generator,
            tables,
            add_table,
        })))
    }

    fn search_generator(&self) -> Fe {
        let n = self.q() - 1;
        let divs = arith::prime_divisors(n);
        (1..self.q())
            .map(Fe)
            .find(|&a| divs.iter().all(|&r| self.pow(a, (n / r) as u128) != self.one()))
            .expect("multiplicative group is cyclic")
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn e(&self) -> u32 {
        self.0.e
    }

    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// `gcd(2, q - 1)`.
    pub fn k(&self) -> u64 {
        if self.p() == 2 {
            1
        } else {
            2
        }
    }

    pub fn modulus(&self) -> &Poly {
        &self.0.modulus
    }

    /// Whether the modulus is primitive, i.e. `t` generates the multiplicative group.
    pub fn has_primitive_modulus(&self) -> bool {
        self.0.primitive_modulus
    }

    /// A fixed generator of the multiplicative group (`t` for a primitive modulus).
    pub fn generator(&self) -> Fe {
        self.0.generator
    }

    pub fn zero(&self) -> Fe {
        Fe(0)
    }

    pub fn one(&self) -> Fe {
        Fe(1)
    }

    /// The residue class of `t`.
    pub fn t(&self) -> Fe {
        if self.e() == 1 {
            Fe((self.p() - self.modulus().coeff(0)) % self.p())
        } else {
            Fe(self.p())
        }
    }

    /// The image of an integer.
    pub fn int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p() as i64) as u64)
    }

    pub fn element(&self, index: u64) -> Result<Fe> {
        if index < self.q() {
            Ok(Fe(index))
        } else {
            Err(Error::ResidueOutOfRange { value: index, p: self.q() })
        }
    }

    pub fn contains(&self, a: Fe) -> bool {
        a.0 < self.q()
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q()).map(Fe)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Fe> {
        (1..self.q()).map(Fe)
    }

    /// Element from exactly `e` residues, lowest degree first.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Fe> {
        if coeffs.len() != self.e() as usize {
            return Err(Error::BadCoefficients {
                expected: self.e() as usize,
                found: coeffs.len(),
            });
        }
        let mut idx = 0u64;
        for &c in coeffs.iter().rev() {
            if c >= self.p() {
                return Err(Error::ResidueOutOfRange { value: c, p: self.p() });
            }
            idx = idx * self.p() + c;
        }
        Ok(Fe(idx))
    }

    /// Coordinates in the basis `1, t, ..., t^{e-1}`.
    pub fn coeffs(&self, a: Fe) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.e() as usize);
        let mut rest = a.0;
        for _ in 0..self.e() {
            out.push(rest % self.p());
            rest /= self.p();
        }
        out
    }

    pub fn to_poly(&self, a: Fe) -> Poly {
        Poly::new(self.p(), self.coeffs(a))
    }

    /// Reduces a polynomial modulo the field's modulus.
    pub fn from_poly(&self, g: &Poly) -> Fe {
        let r = g.rem(self.modulus());
        let mut coeffs: Vec<u64> = r.coeffs().to_vec();
        coeffs.resize(self.e() as usize, 0);
        self.from_coeffs(&coeffs).expect("reduced polynomial fits")
    }

    /// Parses `t^2+1` style text (prime fields also accept plain integers).
    pub fn parse(&self, text: &str) -> Result<Fe> {
        let g = Poly::parse(self.p(), text)?;
        if self.e() == 1 {
            // t is the root of the modulus
            let t = self.t();
            let mut acc = self.zero();
            for &c in g.coeffs().iter().rev() {
                acc = self.add(self.mul(acc, t), Fe(c));
            }
            return Ok(acc);
        }
        Ok(self.from_poly(&g))
    }

    /// Human-readable polynomial form (plain residue for prime fields).
    pub fn format(&self, a: Fe) -> String {
        if self.e() == 1 {
            a.0.to_string()
        } else {
            self.to_poly(a).to_string()
        }
    }

    fn add_digits(&self, a: Fe, b: Fe) -> Fe {
        let p = self.p();
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e() {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        Fe(out)
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let inner = &*self.0;
        if inner.e == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= inner.p { s - inner.p } else { s });
        }
        if inner.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        if let Some(table) = &inner.add_table {
            return Fe(table[(a.0 * inner.q + b.0) as usize] as u64);
        }
        self.add_digits(a, b)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        let inner = &*self.0;
        if inner.p == 2 {
            return a;
        }
        if inner.e == 1 {
            return Fe(if a.0 == 0 { 0 } else { inner.p - a.0 });
        }
        let p = inner.p;
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..inner.e {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        Fe(out)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        let inner = &*self.0;
        if inner.e == 1 {
            return Fe(mul_mod(a.0, b.0, inner.p));
        }
        if a.0 == 0 || b.0 == 0 {
            return Fe(0);
        }
        if let Some((exp, log)) = &inner.tables {
            let n = inner.q - 1;
            let s = log[a.0 as usize] as u64 + log[b.0 as usize] as u64;
            return Fe(exp[(if s >= n { s - n } else { s }) as usize] as u64);
        }
        let prod = self.to_poly(a).mul_mod(&self.to_poly(b), self.modulus());
        self.from_poly(&prod)
    }

    pub fn square(&self, a: Fe) -> Fe {
        self.mul(a, a)
    }

    pub fn pow(&self, a: Fe, mut exp: u128) -> Fe {
        if let (Some((table_exp, log)), true) = (&self.0.tables, a.0 != 0) {
            let n = (self.q() - 1) as u128;
            let idx = (log[a.0 as usize] as u128 * (exp % n)) % n;
            return Fe(table_exp[idx as usize] as u64);
        }
        let mut base = a;
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

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.0 == 0 {
            return None;
        }
        if let Some((exp, log)) = &self.0.tables {
            let n = self.q() - 1;
            let l = log[a.0 as usize] as u64;
            return Some(Fe(exp[((n - l) % n) as usize] as u64));
        }
        Some(self.pow(a, (self.q() - 2) as u128))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Option<Fe> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// `a^(p^j)`.
    pub fn frobenius(&self, a: Fe, j: u32) -> Fe {
        let mut out = a;
        for _ in 0..j % self.e() {
            out = self.pow(out, self.p() as u128);
        }
        out
    }

    /// For characteristic 2: the absolute trace `a + a^2 + ... + a^(2^(e-1))`,
    /// which lies in F_2.
    pub fn absolute_trace(&self, a: Fe) -> Fe {
        let mut acc = self.zero();
        let mut x = a;
        for _ in 0..self.e() {
            acc = self.add(acc, x);
            x = self.pow(x, self.p() as u128);
        }
        acc
    }

    /// Zero counts as a square; every element is a square when `q` is even.
    pub fn is_square(&self, a: Fe) -> bool {
        if self.p() == 2 || a.0 == 0 {
            return true;
        }
        if let Some((_, log)) = &self.0.tables {
            return log[a.0 as usize] % 2 == 0;
        }
        self.pow(a, ((self.q() - 1) / 2) as u128) == self.one()
    }

    /// Quadratic character: 0, 1 or -1.
    pub fn quadratic_character(&self, a: Fe) -> i8 {
        if a.0 == 0 {
            0
        } else if self.is_square(a) {
            1
        } else {
            -1
        }
    }

    /// The canonical (smaller) square root, or `None` for a non-square.
    pub fn sqrt(&self, a: Fe) -> Option<Fe> {
        if a.0 == 0 {
            return Some(a);
        }
        if self.p() == 2 {
            return Some(self.pow(a, (self.q() / 2) as u128));
        }
        if !self.is_square(a) {
            return None;
        }
        if self.q() < SQRT_SCAN_LIMIT {
            return self.elements().find(|&r| self.square(r) == a);
        }
        let r = self.tonelli_shanks(a);
        debug_assert_eq!(self.square(r), a);
        Some(r.min(self.neg(r)))
    }

    fn tonelli_shanks(&self, a: Fe) -> Fe {
        let mut s = 0u32;
        let mut t = self.q() - 1;
        while t % 2 == 0 {
            t /= 2;
            s += 1;
        }
        let z = self
            .nonzero()
            .find(|&z| !self.is_square(z))
            .expect("odd fields have non-squares");
        let mut m = s;
        let mut c = self.pow(z, t as u128);
        let mut x = self.pow(a, ((t + 1) / 2) as u128);
        let mut b = self.pow(a, t as u128);
        while b != self.one() {
            let mut i = 0;
            let mut b2 = b;
            while b2 != self.one() {
                b2 = self.square(b2);
                i += 1;
            }
            let mut f = c;
            for _ in 0..m - i - 1 {
                f = self.square(f);
            }
            x = self.mul(x, f);
            c = self.square(f);
            b = self.mul(b, c);
            m = i;
        }
        x
    }

    /// Least `n >= 1` with `a^n = 1`.
    pub fn multiplicative_order(&self, a: Fe) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::ZeroElement);
        }
        let n = self.q() - 1;
        if let Some((_, log)) = &self.0.tables {
            return Ok(n / arith::gcd(log[a.0 as usize] as u64, n));
        }
        let mut order = n;
        for (r, _) in arith::factorize(n) {
            while order % r == 0 && self.pow(a, (order / r) as u128) == self.one() {
                order /= r;
            }
        }
        Ok(order)
    }

    pub fn is_primitive_root(&self, a: Fe) -> bool {
        a.0 != 0 && self.multiplicative_order(a) == Ok(self.q() - 1)
    }

    /// Every generator of the multiplicative group, in canonical order.
    pub fn primitive_roots(&self) -> Vec<Fe> {
        let n = self.q() - 1;
        if let Some((exp, _)) = &self.0.tables {
            let mut roots: Vec<Fe> = (1..n.max(2))
                .filter(|&i| arith::gcd(i, n) == 1)
                .map(|i| Fe(exp[i as usize] as u64))
                .collect();
            if n == 1 {
                roots = vec![self.one()];
            }
            roots.sort_unstable();
            return roots;
        }
        self.nonzero().filter(|&a| self.is_primitive_root(a)).collect()
    }

    pub fn smallest_primitive_root(&self) -> Fe {
        self.nonzero()
            .find(|&a| self.is_primitive_root(a))
            .expect("multiplicative group is cyclic")
    }
}
