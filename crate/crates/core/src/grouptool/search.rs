//! Exhaustive search for Beauville structures in small groups.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

use super::{is_hyperbolic, FiniteGroup, Group};

/// Groups above this order are refused.
pub const SEARCH_LIMIT: usize = 10_000;

#[derive(Clone, Debug)]
pub struct SearchOutcome<E> {
    /// Hyperbolic generating triples found, one per orbit of simultaneous conjugation.
    pub triples_examined: usize,
    /// Distinct Sigma-signatures among those triples.
    pub signatures: usize,
    /// The first structure in canonical order, if any.
    pub structure: Option<([E; 3], [E; 3])>,
}

/// Orbit representatives (smallest index) of `H` acting on `G` by
/// conjugation, where `H` is given by generators.
fn conjugation_orbit_reps<G: Group>(g: &FiniteGroup<G>, h_gens: &[usize]) -> Vec<usize> {
    let n = g.order();
    let mut seen = vec![false; n];
    let h_inv: Vec<usize> = h_gens.iter().map(|&h| g.inv_idx(h)).collect();
    let mut reps = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        reps.push(start);
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for (&h, &hi) in h_gens.iter().zip(&h_inv) {
                let k = g.mul_idx(g.mul_idx(h, i), hi);
                if !seen[k] {
                    seen[k] = true;
                    stack.push(k);
                }
            }
        }
    }
    reps
}

/// A small generating set of the subgroup with the given element indices.
fn generating_subset<G: Group>(g: &FiniteGroup<G>, members: &[usize]) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut inside = vec![false; g.order()];
    inside[0] = true;
    let mut elems = vec![0usize];
    for &m in members {
        if inside[m] {
            continue;
        }
        gens.push(m);
        // re-close: multiply everything found so far by every generator
        let mut head = 0;
        elems.push(m);
        inside[m] = true;
        while head < elems.len() {
            let h = elems[head];
            head += 1;
            for &s in &gens {
                let k = g.mul_idx(h, s);
                if !inside[k] {
                    inside[k] = true;
                    elems.push(k);
                }
            }
        }
    }
    gens
}

/// Searches every hyperbolic generating triple up to simultaneous
/// conjugation (x over class representatives, y over orbit representatives
/// of the centraliser of x, z = (xy)^-1) and every pair of their
/// Sigma-signatures. Returns the first structure in canonical order or
/// certifies that none exists.
pub fn exhaustive_beauville_search<G: Group>(g: &FiniteGroup<G>) -> Result<SearchOutcome<G::Elem>> {
    if g.order() > SEARCH_LIMIT {
        return Err(Error::TooLargeForSearch { order: g.order(), limit: SEARCH_LIMIT });
    }
    let orders = g.orders().to_vec();
    let class_of = g.classes().class_of.clone();
    let reps = g.classes().reps.clone();
    let n = g.order();

    let signature = |t: [usize; 3]| -> BTreeSet<u32> {
        let mut s = BTreeSet::new();
        for &i in &t {
            let mut acc = i;
            for _ in 1..orders[i] {
                s.insert(class_of[acc]);
                acc = g.mul_idx(acc, i);
            }
        }
        s
    };

    let mut triples: Vec<[usize; 3]> = Vec::new();
    for &x in &reps {
        if orders[x] == 1 {
            continue;
        }
        let xe = g.element(x);
        let cent = g.centralizer(&xe)?;
        let cgens = generating_subset(g, &cent);
        for y in conjugation_orbit_reps(g, &cgens) {
            if orders[y] == 1 {
                continue;
            }
            let z = g.inv_idx(g.mul_idx(x, y));
            if !is_hyperbolic(orders[x], orders[y], orders[z]) {
                continue;
            }
            if g.subgroup_order(&[xe, g.element(y)], n)? == n {
                triples.push([x, y, z]);
            }
        }
    }

    let mut sigs: Vec<(BTreeSet<u32>, usize)> = Vec::new();
    for (i, &t) in triples.iter().enumerate() {
        let s = signature(t);
        if !sigs.iter().any(|(seen, _)| *seen == s) {
            sigs.push((s, i));
        }
    }
    let mut structure = None;
    'outer: for (a, (sa, ia)) in sigs.iter().enumerate() {
        for (sb, ib) in &sigs[a + 1..] {
            if sa.is_disjoint(sb) {
                let t1 = triples[*ia].map(|i| g.element(i));
                let t2 = triples[*ib].map(|i| g.element(i));
                structure = Some((t1, t2));
                break 'outer;
            }
        }
    }
    Ok(SearchOutcome { triples_examined: triples.len(), signatures: sigs.len(), structure })
}
