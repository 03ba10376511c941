//! Small constructors shared by the unit tests.

use crate::group::{FiniteGroup, SubgroupHandle};
use crate::perm::Permutation;

pub fn perm(text: &str, degree: usize) -> Permutation {
    Permutation::parse_cycles(text, degree).unwrap()
}

pub fn symmetric(n: usize) -> FiniteGroup {
    let gens = if n >= 2 {
        let cycle: Vec<u32> = (0..n as u32).collect();
        vec![
            Permutation::from_cycles(&[cycle], n).unwrap(),
            Permutation::from_cycles(&[vec![0, 1]], n).unwrap(),
        ]
    } else {
        vec![]
    };
    FiniteGroup::generate(n.max(1), &gens).unwrap()
}

pub fn alternating(n: usize) -> FiniteGroup {
    let mut gens = Vec::new();
    for i in 0..n.saturating_sub(2) {
        gens.push(
            Permutation::from_cycles(&[vec![i as u32, i as u32 + 1, i as u32 + 2]], n).unwrap(),
        );
    }
    FiniteGroup::generate(n.max(1), &gens).unwrap()
}

pub fn cyclic(n: usize) -> FiniteGroup {
    if n <= 1 {
        return FiniteGroup::generate(1, &[]).unwrap();
    }
    let cycle: Vec<u32> = (0..n as u32).collect();
    FiniteGroup::generate(n, &[Permutation::from_cycles(&[cycle], n).unwrap()]).unwrap()
}

/// Dihedral of order 8 acting on the square.
pub fn dihedral8() -> FiniteGroup {
    FiniteGroup::generate(4, &[perm("(1 2 3 4)", 4), perm("(1 4)(2 3)", 4)]).unwrap()
}

/// C2 x C2 in its degree-4 representation.
pub fn klein() -> FiniteGroup {
    FiniteGroup::generate(4, &[perm("(1 2)", 4), perm("(3 4)", 4)]).unwrap()
}

/// Stabilizer of a 0-based point in the natural action.
pub fn stab(g: &FiniteGroup, point: u32) -> SubgroupHandle {
    let ids: Vec<u32> = (0..g.order() as u32)
        .filter(|&id| g.element(id).apply(point) == point)
        .collect();
    g.subgroup_closure_ids(&ids)
}

pub fn sub(g: &FiniteGroup, gens: &[&str]) -> SubgroupHandle {
    let perms: Vec<Permutation> = gens.iter().map(|t| perm(t, g.degree())).collect();
    g.subgroup_closure(&perms).unwrap()
}
