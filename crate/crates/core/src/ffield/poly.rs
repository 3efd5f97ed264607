//! Dense polynomials over a prime field F_p.

use std::fmt;

use crate::arith::{self, mul_mod, pow_mod};
use crate::error::{Error, Result};

/// A polynomial over F_p, lowest-degree coefficient first.
///
/// Always normalized: every coefficient is reduced mod `p` and there are no
/// trailing zeros, so the zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u64,
    coeffs: Vec<u64>,
}

/// Outcome of [`Poly::classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PolyClass {
    Reducible,
    Irreducible,
    Primitive,
}

impl Poly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut poly = Poly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        poly.trim();
        poly
    }

    /// Builds from signed coefficients, reducing each mod `p`.
    pub fn from_signed(p: u64, coeffs: &[i64]) -> Self {
        let reduced = coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
        Poly::new(p, reduced)
    }

    pub fn zero(p: u64) -> Self {
        Poly { p, coeffs: Vec::new() }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Poly::new(p, vec![c])
    }

    pub fn one(p: u64) -> Self {
        Poly::constant(p, 1)
    }

    /// The monomial `t^k`.
    pub fn monomial(p: u64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = 1;
        Poly { p, coeffs }
    }

    pub fn t(p: u64) -> Self {
        Poly::monomial(p, 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of `t^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    fn inv_mod_p(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        pow_mod(a, self.p - 2, self.p)
    }

    /// Scales so the leading coefficient is 1. The zero polynomial is returned as is.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.inv_mod_p(self.leading());
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> Poly {
        Poly::new(
            self.p,
            self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect(),
        )
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| (self.coeff(i) + other.coeff(i)) % self.p)
            .collect();
        Poly::new(self.p, coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(
            self.p,
            self.coeffs.iter().map(|&a| (self.p - a) % self.p).collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        Poly::new(self.p, out)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = self.inv_mod_p(divisor.leading());
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return (Poly::zero(self.p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = mul_mod(rem[i], lead_inv, self.p);
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = (rem[k] + self.p - mul_mod(c, b, self.p)) % self.p;
            }
        }
        (Poly::new(self.p, quot), Poly::new(self.p, rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mul_mod(&self, other: &Poly, modulus: &Poly) -> Poly {
        self.mul(other).rem(modulus)
    }

    pub fn pow_mod(&self, mut exp: u128, modulus: &Poly) -> Poly {
        let mut base = self.rem(modulus);
        let mut acc = Poly::one(self.p).rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_mod(&base, modulus);
            }
            base = base.mul_mod(&base, modulus);
            exp >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, self.p) + c) % self.p)
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = self.degree().ok_or(Error::ConstantPolynomial)?;
        if n == 0 {
            return Err(Error::ConstantPolynomial);
        }
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        if n == 1 {
            return Ok(true);
        }
        let t = Poly::t(self.p);
        // frob[i] = t^(p^i) mod f
        let mut frob = Vec::with_capacity(n + 1);
        frob.push(t.rem(self));
        for i in 1..=n {
            let next = frob[i - 1].pow_mod(self.p as u128, self);
            frob.push(next);
        }
        if frob[n] != t.rem(self) {
            return Ok(false);
        }
        for r in arith::prime_divisors(n as u64) {
            let h = frob[n / r as usize].sub(&t);
            if !h.gcd(self).is_constant() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Reducible, irreducible, or primitive (irreducible with `t` of full order).
    pub fn classify(&self) -> Result<PolyClass> {
        if !self.is_irreducible()? {
            return Ok(PolyClass::Reducible);
        }
        let n = self.degree().unwrap() as u32;
        let order = self
            .p
            .checked_pow(n)
            .ok_or(Error::FieldTooLarge)?
            - 1;
        let t = Poly::t(self.p);
        if t.rem(self).is_zero() {
            return Ok(PolyClass::Irreducible);
        }
        let one = Poly::one(self.p);
        for r in arith::prime_divisors(order) {
            if t.pow_mod((order / r) as u128, self) == one {
                return Ok(PolyClass::Irreducible);
            }
        }
        Ok(PolyClass::Primitive)
    }

    /// Parses the ascii form used on the command line, e.g. `t^3-t+1`, `2t^2 + 1`, `2*t`.
    pub fn parse(p: u64, text: &str) -> Result<Poly> {
        let err = || Error::Parse(text.to_string());
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);

        let mut acc: Vec<i64> = Vec::new();
        for term in terms {
            let (sign, body) = match term.as_bytes().first() {
                Some(b'-') => (-1i64, &term[1..]),
                Some(b'+') => (1, &term[1..]),
                _ => (1, term),
            };
            if body.is_empty() {
                return Err(err());
            }
            let (coef, power) = match body.find('t') {
                None => (body.parse::<i64>().map_err(|_| err())?, 0usize),
                Some(pos) => {
                    let coef_part = body[..pos].trim_end_matches('*');
                    let coef = if coef_part.is_empty() {
                        1
                    } else {
                        coef_part.parse::<i64>().map_err(|_| err())?
                    };
                    let rest = &body[pos + 1..];
                    let power = if rest.is_empty() {
                        1
                    } else if let Some(exp) = rest.strip_prefix('^') {
                        exp.parse::<usize>().map_err(|_| err())?
                    } else {
                        return Err(err());
                    };
                    (coef, power)
                }
            };
            if acc.len() <= power {
                acc.resize(power + 1, 0);
            }
            acc[power] = (acc[power] + sign * coef).rem_euclid(p as i64);
        }
        Ok(Poly::from_signed(p, &acc))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}t")?,
                (i, 1) => write!(f, "t^{i}")?,
                (i, c) => write!(f, "{c}t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}](mod {})", self, self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let f = Poly::parse(3, "t^3-t+1").unwrap();
        assert_eq!(f.coeffs(), &[1, 2, 0, 1]);
        assert_eq!(f.to_string(), "t^3+2t+1");
        assert_eq!(Poly::parse(2, "t^3 + t + 1").unwrap().coeffs(), &[1, 1, 0, 1]);
        assert_eq!(Poly::parse(5, "2*t^2+3t").unwrap().coeffs(), &[0, 3, 2]);
        assert_eq!(Poly::parse(3, "-t^2-1").unwrap().coeffs(), &[2, 0, 2]);
        assert!(Poly::parse(3, "t^").is_err());
        assert!(Poly::parse(3, "x+1").is_err());
        assert!(Poly::parse(3, "").is_err());
    }

    #[test]
    fn classify_examples() {
        let p = |q, s| Poly::parse(q, s).unwrap();
        assert_eq!(p(2, "t^3+t+1").classify(), Ok(PolyClass::Primitive));
        assert_eq!(p(3, "t^3-t+1").classify(), Ok(PolyClass::Primitive));
        assert_eq!(p(3, "t^2+1").classify(), Ok(PolyClass::Irreducible));
        assert_eq!(p(2, "t^2+1").classify(), Ok(PolyClass::Reducible));
        assert_eq!(p(2, "t").classify(), Ok(PolyClass::Irreducible));
        assert_eq!(p(3, "2t^2+1").classify(), Err(Error::NotMonic));
        assert_eq!(p(3, "1").classify(), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn order_of_t_mod_t2_plus_1_over_f3_is_four() {
        // direct powering of t in F_3[t]/(t^2+1)
        let f = Poly::parse(3, "t^2+1").unwrap();
        let t = Poly::t(3);
        let one = Poly::one(3);
        let mut acc = t.clone();
        let mut k = 1;
        while acc != one {
            acc = acc.mul_mod(&t, &f);
            k += 1;
        }
        assert_eq!(k, 4);
    }

    #[test]
    fn division_identity() {
        let a = Poly::parse(7, "3t^5+t^3+6t+2").unwrap();
        let b = Poly::parse(7, "2t^2+5").unwrap();
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(a.gcd(&a.mul(&b)), a.monic());
    }
}
