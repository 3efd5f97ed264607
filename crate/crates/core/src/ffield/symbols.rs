//! Quadratic residue symbols over F_p and F_p[t].

use crate::arith::{self, pow_mod};
use crate::error::{Error, Result};

use super::Poly;

/// Legendre symbol `(a/p)` by Euler's criterion.
pub fn legendre(a: i64, p: u64) -> Result<i8> {
    if p == 2 || !arith::is_prime(p) {
        return Err(if p == 2 { Error::EvenCharacteristic } else { Error::NotPrime(p) });
    }
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(r, (p - 1) / 2, p) == 1 { 1 } else { -1 })
}

/// Quadratic symbol `(g/f)` for polynomials over an odd prime field.
///
/// For irreducible monic `f` this is the quadratic character of `g` in
/// `F_p[t]/(f)`; for composite `f` it is the product over the irreducible
/// factors. Evaluated without factoring, by the Jacobi-style recursion: reduce
/// `g` mod `f`, pull out the leading coefficient (a constant `c` contributes
/// `(c/p)^{deg f}`), then flip with
/// `(g/f)(f/g) = (-1)^{deg f * deg g * (p-1)/2}`.
pub fn dedekind_symbol(g: &Poly, f: &Poly) -> Result<i8> {
    let p = f.p();
    if g.p() != p {
        return Err(Error::Malformed("symbol arguments over different fields".into()));
    }
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    match f.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        _ => {}
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let half = (p - 1) / 2;
    let mut sign: i8 = 1;
    let mut num = g.rem(f);
    let mut den = f.clone();
    loop {
        if num.is_zero() {
            return Ok(0);
        }
        let dd = den.degree().unwrap();
        let lead = num.leading();
        if legendre(lead as i64, p)? == -1 && dd % 2 == 1 {
            sign = -sign;
        }
        let monic = num.monic();
        let dn = monic.degree().unwrap();
        if dn == 0 {
            return Ok(sign);
        }
        if (dd as u64 * dn as u64 * half) % 2 == 1 {
            sign = -sign;
        }
        num = den.rem(&monic);
        den = monic;
    }
}
