use super::{FiniteGroup, Group};

/// Every `x` in a class has the same number of completions `y, z`, so one
/// representative suffices: `N = |X| * #{y in Y : (x0 y)^-1 in Z}`.
pub(super) fn count<G: Group>(g: &FiniteGroup<G>, cx: u32, cy: u32, cz: u32) -> u64 {
    let classes = g.classes();
    let x0 = classes.reps[cx as usize];
    let hits = g
        .class_members(cy)
        .into_iter()
        .filter(|&y| classes.class_of[g.inv_idx(g.mul_idx(x0, y))] == cz)
        .count() as u64;
    classes.sizes[cx as usize] as u64 * hits
}

pub(super) fn count_naive<G: Group>(g: &FiniteGroup<G>, cx: u32, cy: u32, cz: u32) -> u64 {
    let classes = g.classes();
    let xs = g.class_members(cx);
    let ys = g.class_members(cy);
    let mut n = 0;
    for &x in &xs {
        for &y in &ys {
            if classes.class_of[g.inv_idx(g.mul_idx(x, y))] == cz {
                n += 1;
            }
        }
    }
    n
}
