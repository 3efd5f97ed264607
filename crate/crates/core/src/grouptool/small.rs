//! Small hand-rolled groups for exhaustive checks.

use crate::arith::pow_mod;

use super::Group;

fn encode_pair(i: u64, j: u64, out: &mut Vec<u8>) {
    out.extend_from_slice(&(i as u32).to_le_bytes());
    out.extend_from_slice(&(j as u32).to_le_bytes());
}

fn decode_pair(bytes: &[u8]) -> Option<(u64, u64)> {
    if bytes.len() != 8 {
        return None;
    }
    let i = u32::from_le_bytes(bytes[..4].try_into().ok()?) as u64;
    let j = u32::from_le_bytes(bytes[4..].try_into().ok()?) as u64;
    Some((i, j))
}

/// The metacyclic group of order p^3 with `a^(p^2) = b^p = 1`,
/// `b a b^-1 = a^(p+1)`; the pair `(i, j)` stands for `a^i b^j`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Metacyclic {
    p: u64,
}

impl Metacyclic {
    pub fn new(p: u64) -> Metacyclic {
        Metacyclic { p }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn a(&self) -> (u64, u64) {
        (1, 0)
    }

    pub fn b(&self) -> (u64, u64) {
        (0, 1)
    }

    pub fn generators(&self) -> Vec<(u64, u64)> {
        vec![self.a(), self.b()]
    }

    fn twist(&self, j: u64) -> u64 {
        let p2 = self.p * self.p;
        pow_mod(self.p + 1, j, p2)
    }
}

impl Group for Metacyclic {
    type Elem = (u64, u64);

    fn identity(&self) -> (u64, u64) {
        (0, 0)
    }

    fn mul(&self, (i, j): (u64, u64), (k, l): (u64, u64)) -> (u64, u64) {
        let p2 = self.p * self.p;
        ((i + k * self.twist(j)) % p2, (j + l) % self.p)
    }

    fn inv(&self, (i, j): (u64, u64)) -> (u64, u64) {
        let p2 = self.p * self.p;
        let back = self.twist((self.p - j) % self.p);
        ((p2 - i * back % p2) % p2, (self.p - j) % self.p)
    }

    fn encode(&self, (i, j): (u64, u64), out: &mut Vec<u8>) {
        encode_pair(i, j, out);
    }

    fn decode(&self, bytes: &[u8]) -> Option<(u64, u64)> {
        decode_pair(bytes).filter(|&(i, j)| i < self.p * self.p && j < self.p)
    }
}

/// `C_m x C_n`, written additively as pairs.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct CyclicProduct {
    m: u64,
    n: u64,
}

impl CyclicProduct {
    pub fn new(m: u64, n: u64) -> CyclicProduct {
        CyclicProduct { m, n }
    }

    pub fn generators(&self) -> Vec<(u64, u64)> {
        vec![(1 % self.m, 0), (0, 1 % self.n)]
    }
}

impl Group for CyclicProduct {
    type Elem = (u64, u64);

    fn identity(&self) -> (u64, u64) {
        (0, 0)
    }

    fn mul(&self, (i, j): (u64, u64), (k, l): (u64, u64)) -> (u64, u64) {
        ((i + k) % self.m, (j + l) % self.n)
    }

    fn inv(&self, (i, j): (u64, u64)) -> (u64, u64) {
        ((self.m - i) % self.m, (self.n - j) % self.n)
    }

    fn encode(&self, (i, j): (u64, u64), out: &mut Vec<u8>) {
        encode_pair(i, j, out);
    }

    fn decode(&self, bytes: &[u8]) -> Option<(u64, u64)> {
        decode_pair(bytes).filter(|&(i, j)| i < self.m && j < self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouptool::{closure, DEFAULT_BOUND};

    #[test]
    fn metacyclic_structure() {
        let g = Metacyclic::new(5);
        let (a, b) = (g.a(), g.b());
        // b a b^-1 = a^(p+1)
        assert_eq!(g.conj(b, a), g.pow(a, 6));
        let full = closure(g, &g.generators(), DEFAULT_BOUND).unwrap();
        assert_eq!(full.order(), 125);
        // everything outside <a^p, b> has order p^2
        for &(i, j) in full.elements() {
            let o = full.element_order(&(i, j)).unwrap();
            if i % 5 == 0 {
                assert!(o <= 5);
            } else {
                assert_eq!(o, 25);
            }
        }
        for &x in full.elements() {
            assert_eq!(g.mul(x, g.inv(x)), (0, 0));
        }
    }

    #[test]
    fn product_orders() {
        let g = CyclicProduct::new(5, 5);
        let full = closure(g, &g.generators(), DEFAULT_BOUND).unwrap();
        assert_eq!(full.order(), 25);
        assert_eq!(full.classes().count(), 25);
    }
}
