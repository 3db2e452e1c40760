//! Canonical fixtures shared by tests, the battery and the acceptance suite.

use crate::carrier::{Carrier, Subset};
use crate::fintop::FiniteSpace;
use crate::gpd::FiniteGroupoid;
use crate::rel::RelStructure;

/// E1, the two-element antichain: `{a,b}` with only the loops `a≺a`, `b≺b`.
pub fn e1() -> RelStructure {
    let c = Carrier::new(["a", "b"]).unwrap();
    RelStructure::new(c, &[(0, 0), (1, 1)]).unwrap()
}

/// E2, the "vee": `{a,b,c}`, reflexive plus `c≺a`, `c≺b`.
pub fn e2() -> RelStructure {
    let c = Carrier::new(["a", "b", "c"]).unwrap();
    RelStructure::new(c, &[(0, 0), (1, 1), (2, 2), (2, 0), (2, 1)]).unwrap()
}

/// E3, the Boolean algebra on two atoms minus zero: `{x,y,t}`, reflexive
/// plus `x≺t`, `y≺t`.
pub fn e3() -> RelStructure {
    let c = Carrier::new(["x", "y", "t"]).unwrap();
    RelStructure::new(c, &[(0, 0), (1, 1), (2, 2), (0, 2), (1, 2)]).unwrap()
}

/// E4, mixed reflexivity: `{u,v}` with `u≺u`, `u≺v` (`v` not reflexive).
pub fn e4() -> RelStructure {
    let c = Carrier::new(["u", "v"]).unwrap();
    RelStructure::new(c, &[(0, 0), (0, 1)]).unwrap()
}

/// The powerset of an `n`-element set minus the empty set, ordered by
/// inclusion. Elements are labelled by their characteristic bit masks,
/// e.g. `"101"` for `{0,2}` with the low bit first.
pub fn boolean_algebra_rel(n: usize) -> RelStructure {
    assert!(n >= 1 && n <= 6);
    let masks: Vec<u32> = (1..(1u32 << n)).collect();
    let labels: Vec<String> = masks
        .iter()
        .map(|m| (0..n).map(|b| if m >> b & 1 == 1 { '1' } else { '0' }).collect())
        .collect();
    let c = Carrier::new(labels).unwrap();
    let mut edges = Vec::new();
    for (i, mi) in masks.iter().enumerate() {
        for (j, mj) in masks.iter().enumerate() {
            if mi & !mj == 0 {
                edges.push((i, j));
            }
        }
    }
    RelStructure::new(c, &edges).unwrap()
}

/// Discrete space on `n` points labelled `p0..`.
pub fn discrete_space(n: usize) -> FiniteSpace {
    let points = Carrier::new((0..n).map(|i| format!("p{i}"))).unwrap();
    discrete_space_points(points)
}

pub fn discrete_space_points(points: Carrier) -> FiniteSpace {
    FiniteSpace::discrete(points).unwrap()
}

/// Sierpinski space: points `{p0,p1}`, opens `∅, {p1}, {p0,p1}`.
pub fn sierpinski() -> FiniteSpace {
    let points = Carrier::new(["p0", "p1"]).unwrap();
    let opens = vec![points.empty(), points.singleton(1), points.full()];
    FiniteSpace::new(points, opens).unwrap()
}

/// Indiscrete space on `n` points: only `∅` and the full set are open.
pub fn indiscrete_space(n: usize) -> FiniteSpace {
    let points = Carrier::new((0..n).map(|i| format!("p{i}"))).unwrap();
    let opens = vec![points.empty(), points.full()];
    FiniteSpace::new(points, opens).unwrap()
}

/// All singleton opens of a space.
pub fn singletons(space: &FiniteSpace) -> Vec<Subset> {
    (0..space.size()).map(|i| space.points().singleton(i)).collect()
}

/// The pair groupoid on `n` base points: arrows `x:y` with
/// `(x:y)(y:z) = x:z` and `(x:y)⁻¹ = y:x`; units are the `x:x`.
pub fn pair_groupoid(n: usize) -> FiniteGroupoid {
    assert!(n >= 1 && n <= 5);
    let labels: Vec<String> = (1..=n)
        .flat_map(|x| (1..=n).map(move |y| format!("{x}:{y}")))
        .collect();
    let elements = Carrier::new(labels).unwrap();
    let idx = |x: usize, y: usize| (x - 1) * n + (y - 1);
    let mut inv = vec![0usize; n * n];
    let mut product = vec![None; n * n * n * n];
    for x in 1..=n {
        for y in 1..=n {
            inv[idx(x, y)] = idx(y, x);
            for z in 1..=n {
                for w in 1..=n {
                    if y == z {
                        product[idx(x, y) * n * n + idx(z, w)] = Some(idx(x, w));
                    }
                }
            }
        }
    }
    FiniteGroupoid::new(elements, inv, product).unwrap()
}

/// The unit groupoid on `n` points: every element is its own unit and the
/// only products are `u·u = u`.
pub fn unit_groupoid(n: usize) -> FiniteGroupoid {
    let elements = Carrier::new((1..=n).map(|i| format!("u{i}"))).unwrap();
    let inv: Vec<usize> = (0..n).collect();
    let mut product = vec![None; n * n];
    for i in 0..n {
        product[i * n + i] = Some(i);
    }
    FiniteGroupoid::new(elements, inv, product).unwrap()
}
