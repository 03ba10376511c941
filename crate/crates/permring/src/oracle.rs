//! Slow reference computations along deliberately different routes.
//!
//! Each oracle answers a question the main modules also answer, but never
//! shares the algorithm: the stable degree searches subsets of coset
//! classes instead of climbing tuple levels, product orbits come from
//! union-find instead of double cosets, map counts from enumeration
//! instead of the fixed-point formula, and the normal core from subgroup
//! enumeration instead of intersecting conjugates. Tests compare both
//! routes on the same inputs.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, SubgroupHandle};
use crate::gset::GSet;

pub const GMAP_BUDGET: u64 = 1_000_000;
pub const CORE_ORDER_BUDGET: u64 = 360;

/// Largest number of pairwise distinct coset classes whose conjugate
/// intersection keeps order divisible by p, by depth-first subset search
/// with divisibility pruning.
pub fn oracle_degree_stable(
    group: &FiniteGroup,
    subgroup: &SubgroupHandle,
    prime: u32,
) -> Result<usize> {
    if !subgroup.parent().same_group(group) {
        return Err(Error::ParentMismatch);
    }
    let (reps, _) = group.right_coset_classes(subgroup)?;
    let conjugates: Vec<SubgroupHandle> =
        reps.iter().map(|&g| subgroup.conjugate_by_id(g)).collect();
    let mut best = 0usize;
    subset_search(
        &conjugates,
        prime as usize,
        0,
        &group.full_subgroup(),
        0,
        &mut best,
    );
    Ok(best)
}

fn subset_search(
    conjugates: &[SubgroupHandle],
    prime: usize,
    start: usize,
    meet: &SubgroupHandle,
    depth: usize,
    best: &mut usize,
) {
    if depth > *best {
        *best = depth;
    }
    if *best == conjugates.len() {
        return;
    }
    for i in start..conjugates.len() {
        let narrowed = meet
            .intersect(&conjugates[i])
            .expect("conjugates share the parent group");
        if narrowed.order() % prime != 0 {
            continue;
        }
        subset_search(conjugates, prime, i + 1, &narrowed, depth + 1, best);
        if *best == conjugates.len() {
            return;
        }
    }
}

/// Orbit decomposition of a product action as a sorted multiset of
/// (orbit size, stabilizer order) pairs, with stabilizer orders derived
/// from orbit sizes alone.
pub fn oracle_product_orbits(x: &GSet, y: &GSet) -> Result<Vec<(usize, usize)>> {
    if !x.group().same_group(y.group()) {
        return Err(Error::GroupMismatch);
    }
    let group = x.group();
    let width = y.size();
    let mut uf = UnionFind::new(x.size() * width);
    for k in 0..group.generators().len() {
        for i in 0..x.size() as u32 {
            for j in 0..width as u32 {
                let a = i as usize * width + j as usize;
                let b = x.act_gen(k, i) as usize * width + y.act_gen(k, j) as usize;
                uf.union(a, b);
            }
        }
    }
    let mut sizes: HashMap<usize, usize> = HashMap::new();
    for point in 0..x.size() * width {
        *sizes.entry(uf.find(point)).or_insert(0) += 1;
    }
    let mut out: Vec<(usize, usize)> = sizes
        .values()
        .map(|&s| (s, group.order() / s))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Counts equivariant maps by enumerating every function and testing
/// equivariance against the generators. Refuses more than a million
/// candidates.
pub fn oracle_gmap_count(source: &GSet, target: &GSet) -> Result<u64> {
    if !source.group().same_group(target.group()) {
        return Err(Error::GroupMismatch);
    }
    let n = source.size();
    let m = target.size() as u64;
    let mut total: u64 = 1;
    for _ in 0..n {
        total = total.saturating_mul(m);
        if total > GMAP_BUDGET {
            return Err(Error::BudgetExceeded {
                work: total,
                budget: GMAP_BUDGET,
            });
        }
    }
    let gens = source.group().generators().len();
    let mut count = 0u64;
    let mut map = vec![0u32; n];
    for code in 0..total {
        let mut c = code;
        for slot in map.iter_mut() {
            *slot = (c % m) as u32;
            c /= m;
        }
        let equivariant = (0..gens).all(|k| {
            (0..n as u32).all(|p| map[source.act_gen(k, p) as usize] == target.act_gen(k, map[p as usize]))
        });
        if equivariant {
            count += 1;
        }
    }
    Ok(count)
}

/// Largest subgroup normal in the whole group among all subgroups of the
/// given one, found by enumerating those subgroups outright. Restricted to
/// small groups; the elementwise normality test never touches conjugate
/// intersections.
pub fn oracle_normal_core(subgroup: &SubgroupHandle) -> Result<SubgroupHandle> {
    let group = subgroup.parent().clone();
    if group.order() as u64 > CORE_ORDER_BUDGET {
        return Err(Error::BudgetExceeded {
            work: group.order() as u64,
            budget: CORE_ORDER_BUDGET,
        });
    }
    let candidates = subgroups_within(&group, subgroup);
    let normals: Vec<&SubgroupHandle> = candidates
        .iter()
        .filter(|s| elementwise_normal(&group, s))
        .collect();
    let best = normals
        .iter()
        .max_by_key(|s| s.order())
        .expect("the trivial subgroup is always present")
        .to_owned();
    for n in &normals {
        assert!(
            n.ids().iter().all(|&id| best.contains_id(id)),
            "normal subgroups below a subgroup must nest under the largest"
        );
    }
    Ok(best.clone())
}

fn elementwise_normal(group: &FiniteGroup, subgroup: &SubgroupHandle) -> bool {
    (0..group.order() as u32).all(|g| {
        subgroup
            .ids()
            .iter()
            .all(|&s| subgroup.contains_id(group.conjugate_element(s, g)))
    })
}

/// Every subgroup, ordered by (order, element ids).
pub fn all_subgroups(group: &FiniteGroup) -> Vec<SubgroupHandle> {
    subgroups_within(group, &group.full_subgroup())
}

/// Every subgroup contained in `bound`, by breadth-first extension of known
/// subgroups with one more element at a time.
fn subgroups_within(group: &FiniteGroup, bound: &SubgroupHandle) -> Vec<SubgroupHandle> {
    let trivial = group.trivial_subgroup();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(trivial.ids().to_vec());
    let mut found = vec![trivial];
    let mut head = 0;
    while head < found.len() {
        let seed: Vec<u32> = found[head].ids().to_vec();
        head += 1;
        for &x in bound.ids() {
            if seed.binary_search(&x).is_ok() {
                continue;
            }
            let mut extended = seed.clone();
            extended.push(x);
            let bigger = group.subgroup_closure_ids(&extended);
            if !bigger.ids().iter().all(|&id| bound.contains_id(id)) {
                continue;
            }
            if seen.insert(bigger.ids().to_vec()) {
                found.push(bigger);
            }
        }
    }
    found.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.ids().cmp(b.ids()))
    });
    found
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
