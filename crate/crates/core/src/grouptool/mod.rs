//! A small finite-group engine over any element type with canonical forms.
//!
//! [`FiniteGroup`] enumerates a closure breadth-first, so element indices are
//! a deterministic function of the generator list. Conjugacy classes,
//! element orders, Sigma-sets and triple counts are all computed on indices.

mod dump;
mod frobenius;
pub mod generation;
mod genus;
mod search;
pub mod small;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::sync::OnceLock;

use crate::arith;
use crate::error::{Error, Result};

pub use dump::{cached_closure, read_dump, write_dump, CACHE_ENV};
pub use generation::{generates_by_closure, ladder, lift_check, Generation, LiftReport};
pub use genus::genus;
pub use search::{exhaustive_beauville_search, SearchOutcome, SEARCH_LIMIT};

/// Default cap on the number of elements a closure may enumerate.
pub const DEFAULT_BOUND: usize = 2_000_000;

/// A group given by operations on canonical element representatives.
///
/// `mul` and `inv` must return canonical representatives, so that equal group
/// elements compare equal and hash identically.
pub trait Group {
    type Elem: Copy + Eq + Hash + Ord + fmt::Debug;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn inv(&self, a: Self::Elem) -> Self::Elem;
    /// Appends a byte encoding of a canonical element.
    fn encode(&self, a: Self::Elem, out: &mut Vec<u8>);
    fn decode(&self, bytes: &[u8]) -> Option<Self::Elem>;

    fn pow(&self, a: Self::Elem, mut n: u64) -> Self::Elem {
        let mut base = a;
        let mut acc = self.identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// `g h g^-1`.
    fn conj(&self, g: Self::Elem, h: Self::Elem) -> Self::Elem {
        self.mul(self.mul(g, h), self.inv(g))
    }

    fn element_order(&self, a: Self::Elem) -> u64 {
        let id = self.identity();
        let mut acc = a;
        let mut n = 1;
        while acc != id {
            acc = self.mul(acc, a);
            n += 1;
        }
        n
    }
}

/// Conjugacy class data, keyed by element index.
#[derive(Clone, Debug)]
pub struct Classes {
    /// Class id of every element.
    pub class_of: Vec<u32>,
    /// Smallest element index in each class; class ids follow this order.
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl Classes {
    pub fn count(&self) -> usize {
        self.reps.len()
    }
}

/// An enumerated group.
pub struct FiniteGroup<G: Group> {
    group: G,
    generators: Vec<G::Elem>,
    elements: Vec<G::Elem>,
    index: HashMap<G::Elem, u32>,
    classes: OnceLock<Classes>,
    orders: OnceLock<Vec<u64>>,
}

impl<G: Group> fmt::Debug for FiniteGroup<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order())
            .field("generators", &self.generators.len())
            .finish()
    }
}

/// Breadth-first closure of `generators` under right multiplication.
pub fn closure<G: Group>(group: G, generators: &[G::Elem], bound: usize) -> Result<FiniteGroup<G>> {
    let id = group.identity();
    let mut elements = vec![id];
    let mut index = HashMap::new();
    index.insert(id, 0u32);
    let mut i = 0;
    while i < elements.len() {
        let h = elements[i];
        for &g in generators {
            let k = group.mul(h, g);
            if !index.contains_key(&k) {
                if elements.len() >= bound {
                    return Err(Error::BoundExceeded { bound, partial: elements.len() });
                }
                index.insert(k, elements.len() as u32);
                elements.push(k);
            }
        }
        i += 1;
    }
    Ok(FiniteGroup::from_parts(group, generators.to_vec(), elements, index))
}

impl<G: Group> FiniteGroup<G> {
    fn from_parts(
        group: G,
        generators: Vec<G::Elem>,
        elements: Vec<G::Elem>,
        index: HashMap<G::Elem, u32>,
    ) -> Self {
        FiniteGroup {
            group,
            generators,
            elements,
            index,
            classes: OnceLock::new(),
            orders: OnceLock::new(),
        }
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn generators(&self) -> &[G::Elem] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[G::Elem] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> G::Elem {
        self.elements[i]
    }

    pub fn index_of(&self, g: &G::Elem) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    pub fn contains(&self, g: &G::Elem) -> bool {
        self.index.contains_key(g)
    }

    fn idx(&self, g: &G::Elem) -> Result<usize> {
        self.index_of(g).ok_or(Error::NotInGroup)
    }

    pub fn mul_idx(&self, i: usize, j: usize) -> usize {
        let k = self.group.mul(self.elements[i], self.elements[j]);
        self.index[&k] as usize
    }

    pub fn inv_idx(&self, i: usize) -> usize {
        self.index[&self.group.inv(self.elements[i])] as usize
    }

    /// Element orders, indexed like the elements.
    pub fn orders(&self) -> &[u64] {
        self.orders.get_or_init(|| {
            let mut orders = vec![0u64; self.order()];
            for i in 0..self.order() {
                if orders[i] != 0 {
                    continue;
                }
                let n = self.group.element_order(self.elements[i]);
                orders[i] = n;
                // every generator of <g> has the same order
                let g = self.elements[i];
                let mut acc = g;
                for k in 2..n {
                    acc = self.group.mul(acc, g);
                    if arith::gcd(k, n) == 1 {
                        orders[self.index[&acc] as usize] = n;
                    }
                }
            }
            orders
        })
    }

    pub fn element_order(&self, g: &G::Elem) -> Result<u64> {
        Ok(self.orders()[self.idx(g)?])
    }

    /// Sorted set of element orders.
    pub fn order_spectrum(&self) -> BTreeSet<u64> {
        self.orders().iter().copied().collect()
    }

    /// Conjugacy classes, as orbits under conjugation by the generators.
    pub fn classes(&self) -> &Classes {
        self.classes.get_or_init(|| {
            let n = self.order();
            let mut class_of = vec![u32::MAX; n];
            let mut reps = Vec::new();
            let mut sizes = Vec::new();
            let gens: Vec<(G::Elem, G::Elem)> = self
                .generators
                .iter()
                .map(|&g| (g, self.group.inv(g)))
                .collect();
            for start in 0..n {
                if class_of[start] != u32::MAX {
                    continue;
                }
                let id = reps.len() as u32;
                class_of[start] = id;
                let mut queue = VecDeque::from([start]);
                let mut size = 0;
                while let Some(i) = queue.pop_front() {
                    size += 1;
                    for &(g, gi) in &gens {
                        let k = self.group.mul(self.group.mul(g, self.elements[i]), gi);
                        let k = self.index[&k] as usize;
                        if class_of[k] == u32::MAX {
                            class_of[k] = id;
                            queue.push_back(k);
                        }
                    }
                }
                reps.push(start);
                sizes.push(size);
            }
            Classes { class_of, reps, sizes }
        })
    }

    pub fn class_id(&self, g: &G::Elem) -> Result<u32> {
        Ok(self.classes().class_of[self.idx(g)?])
    }

    /// The conjugacy class of `g`, as element indices in increasing order.
    pub fn conjugacy_class(&self, g: &G::Elem) -> Result<Vec<usize>> {
        let id = self.class_id(g)?;
        Ok(self.class_members(id))
    }

    pub fn class_members(&self, id: u32) -> Vec<usize> {
        let class_of = &self.classes().class_of;
        (0..self.order()).filter(|&i| class_of[i] == id).collect()
    }

    /// Centralizer of `g`, as element indices.
    pub fn centralizer(&self, g: &G::Elem) -> Result<Vec<usize>> {
        self.idx(g)?;
        Ok((0..self.order())
            .filter(|&i| {
                let h = self.elements[i];
                self.group.mul(h, *g) == self.group.mul(*g, h)
            })
            .collect())
    }

    /// Order of the subgroup generated by `gens`, stopping early once it
    /// exceeds `stop_above` (the returned count is then only a lower bound).
    pub fn subgroup_order(&self, gens: &[G::Elem], stop_above: usize) -> Result<usize> {
        let gi: Vec<usize> = gens.iter().map(|g| self.idx(g)).collect::<Result<_>>()?;
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let h = queue[head];
            head += 1;
            for &g in &gi {
                let k = self.mul_idx(h, g);
                if !seen[k] {
                    seen[k] = true;
                    queue.push(k);
                    if queue.len() > stop_above {
                        return Ok(queue.len());
                    }
                }
            }
        }
        Ok(queue.len())
    }

    pub fn generates(&self, gens: &[G::Elem]) -> Result<bool> {
        Ok(self.subgroup_order(gens, self.order())? == self.order())
    }

    /// Indices of the non-identity powers of `g`.
    pub fn power_indices(&self, g: &G::Elem) -> Result<Vec<usize>> {
        let n = self.element_order(g)?;
        let mut out = Vec::with_capacity(n as usize);
        let mut acc = *g;
        for _ in 1..n {
            out.push(self.idx(&acc)?);
            acc = self.group.mul(acc, *g);
        }
        Ok(out)
    }

    /// The Sigma-set of a triple, as the set of conjugacy class ids met by
    /// powers of its elements (the identity class 0 included).
    pub fn sigma_set(&self, triple: &[G::Elem; 3]) -> Result<BTreeSet<u32>> {
        let class_of = &self.classes().class_of;
        let mut out = BTreeSet::from([class_of[0]]);
        for g in triple {
            for i in self.power_indices(g)? {
                out.insert(class_of[i]);
            }
        }
        Ok(out)
    }

    /// Condition (3): the two Sigma-sets meet only in the identity. When the
    /// product orders are coprime the answer is known in advance; that
    /// shortcut is checked against the intersection.
    pub fn condition3(&self, t1: &[G::Elem; 3], t2: &[G::Elem; 3]) -> Result<bool> {
        let s1 = self.sigma_set(t1)?;
        let s2 = self.sigma_set(t2)?;
        let holds = s1.intersection(&s2).count() == 1;
        if gcd_shortcut(self.triple_type(t1)?, self.triple_type(t2)?) {
            assert!(holds, "coprime triple orders but intersecting Sigma-sets");
        }
        Ok(holds)
    }

    pub fn triple_type(&self, t: &[G::Elem; 3]) -> Result<(u64, u64, u64)> {
        Ok((self.element_order(&t[0])?, self.element_order(&t[1])?, self.element_order(&t[2])?))
    }

    /// `N(X, Y, Z)`: solutions of `x y z = 1` with `x, y, z` in the given classes.
    pub fn frobenius_count(&self, cx: u32, cy: u32, cz: u32) -> u64 {
        frobenius::count(self, cx, cy, cz)
    }

    /// The same count by a full double loop over `X` and `Y`.
    pub fn frobenius_count_naive(&self, cx: u32, cy: u32, cz: u32) -> u64 {
        frobenius::count_naive(self, cx, cy, cz)
    }
}

/// `gcd(l1 m1 n1, l2 m2 n2) = 1`, which forces condition (3).
pub fn gcd_shortcut(t1: (u64, u64, u64), t2: (u64, u64, u64)) -> bool {
    let p1 = t1.0 as u128 * t1.1 as u128 * t1.2 as u128;
    let p2 = t2.0 as u128 * t2.1 as u128 * t2.2 as u128;
    let (mut a, mut b) = (p1, p2);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a == 1
}

/// `1/l + 1/m + 1/n < 1`, decided in integers.
pub fn is_hyperbolic(l: u64, m: u64, n: u64) -> bool {
    if l == 0 || m == 0 || n == 0 {
        return false;
    }
    let (l, m, n) = (l as u128, m as u128, n as u128);
    m * n + l * n + l * m < l * m * n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::Field;
    use crate::psl2::{LinearGroup, Mat2, Mode};

    fn psl(q: u64) -> FiniteGroup<LinearGroup> {
        let f = Field::of_order(q).unwrap();
        let g = LinearGroup::new(&f, Mode::PSL2);
        let gens = g.standard_generators();
        closure(g, &gens, DEFAULT_BOUND).unwrap()
    }

    #[test]
    fn closure_orders() {
        assert_eq!(psl(7).order(), 168);
        assert_eq!(psl(8).order(), 504);
        assert_eq!(psl(13).order(), 1092);
        let f = Field::prime(5).unwrap();
        let g = LinearGroup::new(&f, Mode::SL2);
        assert_eq!(closure(g.clone(), &[], 10).unwrap().order(), 1);
        let gens = g.standard_generators();
        assert!(matches!(
            closure(g, &gens, 50),
            Err(Error::BoundExceeded { bound: 50, .. })
        ));
    }

    #[test]
    fn closure_is_deterministic() {
        let a = psl(11);
        let b = psl(11);
        assert_eq!(a.elements(), b.elements());
    }

    #[test]
    fn classes_partition() {
        let g = psl(7);
        let cl = g.classes();
        assert_eq!(cl.sizes.iter().sum::<usize>(), 168);
        assert_eq!(cl.count(), 6);
        assert_eq!(g.conjugacy_class(&Mat2::IDENTITY).unwrap(), vec![0]);
        for &s in &cl.sizes {
            assert_eq!(168 % s, 0);
        }
        // A_5: the 24 elements of order 5 fall into two classes
        let a5 = psl(5);
        assert_eq!(a5.order(), 60);
        let fives: BTreeSet<u32> = (0..60)
            .filter(|&i| a5.orders()[i] == 5)
            .map(|i| a5.classes().class_of[i])
            .collect();
        assert_eq!(fives.len(), 2);
    }

    #[test]
    fn hyperbolic_types() {
        assert!(is_hyperbolic(2, 4, 5));
        assert!(!is_hyperbolic(2, 3, 6));
        assert!(!is_hyperbolic(2, 3, 3));
        assert!(is_hyperbolic(2, 3, 7));
        assert!(gcd_shortcut((2, 4, 5), (7, 13, 13)));
        assert!(!gcd_shortcut((2, 4, 5), (5, 13, 13)));
    }
}
