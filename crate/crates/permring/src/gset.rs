//! Finite G-sets: coset spaces, disjoint unions, products, distinct-tuple
//! spaces, orbit scans, and equivariant-map counting.
//!
//! A `GSet` stores one permutation of its points per group generator.
//! Arbitrary elements act through the factorization chain recorded at group
//! construction, so no per-element action tables are kept. Constructions
//! that can explode (products, tuple spaces) are guarded by a point budget.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, SubgroupHandle};

/// Default bound on the number of points any construction may produce.
pub const DEFAULT_POINT_BUDGET: usize = 500_000;

#[derive(Clone)]
pub struct GSet {
    group: FiniteGroup,
    size: usize,
    gen_actions: Vec<Vec<u32>>,
}

/// One orbit of a G-set: least-point representative, size, and the full
/// point stabilizer of that representative.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub representative: u32,
    pub size: usize,
    pub stabilizer: SubgroupHandle,
}

impl GSet {
    fn new(group: FiniteGroup, size: usize, gen_actions: Vec<Vec<u32>>) -> Self {
        debug_assert_eq!(gen_actions.len(), group.generators().len());
        debug_assert!(gen_actions.iter().all(|a| a.len() == size));
        GSet {
            group,
            size,
            gen_actions,
        }
    }

    pub(crate) fn from_parts(group: FiniteGroup, size: usize, gen_actions: Vec<Vec<u32>>) -> Self {
        GSet::new(group, size, gen_actions)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// The natural action of a permutation group on its own points.
    pub fn natural(group: &FiniteGroup) -> GSet {
        let size = group.degree();
        let gen_actions = group
            .generators()
            .iter()
            .map(|g| (0..size as u32).map(|p| g.apply(p)).collect())
            .collect();
        GSet::new(group.clone(), size, gen_actions)
    }

    /// The empty G-set.
    pub fn empty(group: &FiniteGroup) -> GSet {
        let gens = group.generators().len();
        GSet::new(group.clone(), 0, vec![Vec::new(); gens])
    }

    /// `n` fixed points.
    pub fn trivial(group: &FiniteGroup, n: usize) -> GSet {
        let gens = group.generators().len();
        GSet::new(group.clone(), n, vec![(0..n as u32).collect(); gens])
    }

    pub fn one_point(group: &FiniteGroup) -> GSet {
        GSet::trivial(group, 1)
    }

    /// Left cosets xH with g · (xH) = (gx)H. Point 0 is the coset H; points
    /// ascend with their least element.
    pub fn cosets(group: &FiniteGroup, subgroup: &SubgroupHandle) -> Result<GSet> {
        if !subgroup.parent().same_group(group) {
            return Err(Error::ParentMismatch);
        }
        let order = group.order();
        let mut coset_of = vec![u32::MAX; order];
        let mut reps: Vec<u32> = Vec::new();
        for e in 0..order as u32 {
            if coset_of[e as usize] != u32::MAX {
                continue;
            }
            let index = reps.len() as u32;
            reps.push(e);
            for &h in subgroup.ids() {
                coset_of[group.mul(e, h) as usize] = index;
            }
        }
        let gen_actions = group
            .generator_ids()
            .iter()
            .map(|&g| {
                reps.iter()
                    .map(|&r| coset_of[group.mul(g, r) as usize])
                    .collect()
            })
            .collect();
        Ok(GSet::new(group.clone(), reps.len(), gen_actions))
    }

    /// Apply the k-th generator to a point.
    #[inline]
    pub fn act_gen(&self, k: usize, point: u32) -> u32 {
        self.gen_actions[k][point as usize]
    }

    /// Apply an arbitrary element (by id) to a point, walking the element's
    /// generator factorization.
    pub fn act(&self, element: u32, point: u32) -> u32 {
        let mut e = element;
        let mut x = point;
        while let Some((prev, k)) = self.group.factorization(e) {
            x = self.gen_actions[k as usize][x as usize];
            e = prev;
        }
        x
    }

    /// The full permutation of points induced by an element.
    pub fn element_action(&self, element: u32) -> Vec<u32> {
        (0..self.size as u32).map(|p| self.act(element, p)).collect()
    }

    /// Stabilizer of one point, by direct membership test. The fixer set is
    /// already a subgroup, so no closure pass is needed.
    pub fn point_stabilizer(&self, point: u32) -> SubgroupHandle {
        let ids: Vec<u32> = (0..self.group.order() as u32)
            .filter(|&e| self.act(e, point) == point)
            .collect();
        self.group.subgroup_from_sorted_ids(ids)
    }

    /// Elements acting trivially on every point. For a coset space this is
    /// the normal core of the subgroup.
    pub fn action_kernel(&self) -> SubgroupHandle {
        let ids: Vec<u32> = (0..self.group.order() as u32)
            .filter(|&e| (0..self.size as u32).all(|p| self.act(e, p) == p))
            .collect();
        self.group.subgroup_from_sorted_ids(ids)
    }

    /// Orbits in ascending order of least point, stabilizers by direct test.
    pub fn orbits(&self) -> Vec<Orbit> {
        let (orbit_of, reps, _) = self.orbit_partition();
        let mut sizes = vec![0usize; reps.len()];
        for &o in &orbit_of {
            sizes[o as usize] += 1;
        }
        reps.iter()
            .zip(sizes)
            .map(|(&rep, size)| Orbit {
                representative: rep,
                size,
                stabilizer: self.point_stabilizer(rep),
            })
            .collect()
    }

    /// (orbit index per point, ascending representatives, transversal): the
    /// transversal holds for each point an element id mapping the orbit
    /// representative to that point.
    pub fn orbit_partition(&self) -> (Vec<u32>, Vec<u32>, Vec<u32>) {
        let mut orbit_of = vec![u32::MAX; self.size];
        let mut reps = Vec::new();
        let mut transversal = vec![0u32; self.size];
        let gen_ids = self.group.generator_ids();
        let mut queue = Vec::new();
        for start in 0..self.size as u32 {
            if orbit_of[start as usize] != u32::MAX {
                continue;
            }
            let index = reps.len() as u32;
            reps.push(start);
            orbit_of[start as usize] = index;
            transversal[start as usize] = self.group.identity_id();
            queue.clear();
            queue.push(start);
            let mut head = 0;
            while head < queue.len() {
                let p = queue[head];
                head += 1;
                for (k, &g) in gen_ids.iter().enumerate() {
                    let q = self.gen_actions[k][p as usize];
                    if orbit_of[q as usize] == u32::MAX {
                        orbit_of[q as usize] = index;
                        transversal[q as usize] = self.group.mul(g, transversal[p as usize]);
                        queue.push(q);
                    }
                }
            }
        }
        (orbit_of, reps, transversal)
    }

    /// Orbit partition under a subgroup: (orbit index per point, ascending
    /// representatives).
    pub fn subgroup_orbit_partition(&self, subgroup: &SubgroupHandle) -> Result<(Vec<u32>, Vec<u32>)> {
        if !subgroup.parent().same_group(&self.group) {
            return Err(Error::ParentMismatch);
        }
        let actions: Vec<Vec<u32>> = subgroup
            .generating_set()
            .iter()
            .map(|&g| self.element_action(g))
            .collect();
        let mut orbit_of = vec![u32::MAX; self.size];
        let mut reps = Vec::new();
        let mut queue = Vec::new();
        for start in 0..self.size as u32 {
            if orbit_of[start as usize] != u32::MAX {
                continue;
            }
            let index = reps.len() as u32;
            reps.push(start);
            orbit_of[start as usize] = index;
            queue.clear();
            queue.push(start);
            let mut head = 0;
            while head < queue.len() {
                let p = queue[head];
                head += 1;
                for action in &actions {
                    let q = action[p as usize];
                    if orbit_of[q as usize] == u32::MAX {
                        orbit_of[q as usize] = index;
                        queue.push(q);
                    }
                }
            }
        }
        Ok((orbit_of, reps))
    }

    /// Points fixed by every element of a subgroup.
    pub fn fixed_points(&self, subgroup: &SubgroupHandle) -> Result<Vec<u32>> {
        if !subgroup.parent().same_group(&self.group) {
            return Err(Error::ParentMismatch);
        }
        let actions: Vec<Vec<u32>> = subgroup
            .generating_set()
            .iter()
            .map(|&g| self.element_action(g))
            .collect();
        Ok((0..self.size as u32)
            .filter(|&p| actions.iter().all(|a| a[p as usize] == p))
            .collect())
    }

    pub fn is_transitive(&self) -> bool {
        if self.size == 0 {
            return false;
        }
        let (_, reps, _) = self.orbit_partition();
        reps.len() == 1
    }

    /// X ⊔ Y with X's points first.
    pub fn disjoint_union(&self, other: &GSet) -> Result<GSet> {
        if !self.group.same_group(&other.group) {
            return Err(Error::GroupMismatch);
        }
        let size = self.size + other.size;
        if size > DEFAULT_POINT_BUDGET {
            return Err(Error::SizeBudgetExceeded {
                requested: size,
                budget: DEFAULT_POINT_BUDGET,
            });
        }
        let shift = self.size as u32;
        let gen_actions = self
            .gen_actions
            .iter()
            .zip(&other.gen_actions)
            .map(|(a, b)| {
                a.iter()
                    .copied()
                    .chain(b.iter().map(|&q| q + shift))
                    .collect()
            })
            .collect();
        Ok(GSet::new(self.group.clone(), size, gen_actions))
    }

    /// X x Y with the diagonal action; point (x, y) is x·|Y| + y.
    pub fn product(&self, other: &GSet) -> Result<GSet> {
        if !self.group.same_group(&other.group) {
            return Err(Error::GroupMismatch);
        }
        let size = self.size.checked_mul(other.size).unwrap_or(usize::MAX);
        if size > DEFAULT_POINT_BUDGET {
            return Err(Error::SizeBudgetExceeded {
                requested: size,
                budget: DEFAULT_POINT_BUDGET,
            });
        }
        let w = other.size as u32;
        let gen_actions = self
            .gen_actions
            .iter()
            .zip(&other.gen_actions)
            .map(|(a, b)| {
                let mut table = Vec::with_capacity(size);
                for &ax in a {
                    for &by in b {
                        table.push(ax * w + by);
                    }
                }
                table
            })
            .collect();
        Ok(GSet::new(self.group.clone(), size, gen_actions))
    }

    /// Restriction to an invariant set of points, renumbered in the given
    /// order's sorted form.
    pub fn sub_gset(&self, points: &[u32]) -> Result<GSet> {
        let mut sorted: Vec<u32> = points.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut new_index = HashMap::new();
        for (i, &p) in sorted.iter().enumerate() {
            new_index.insert(p, i as u32);
        }
        let gen_actions = self
            .gen_actions
            .iter()
            .map(|a| {
                sorted
                    .iter()
                    .map(|&p| {
                        new_index
                            .get(&a[p as usize])
                            .copied()
                            .ok_or_else(|| Error::Config("point set is not invariant".into()))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GSet::new(self.group.clone(), sorted.len(), gen_actions))
    }

    /// Ordered n-tuples of pairwise distinct points, in lexicographic order,
    /// with the diagonal action. n may reach |X| + 1, giving the empty G-set.
    pub fn distinct_tuples(&self, n: usize) -> Result<GSet> {
        self.distinct_tuples_bounded(n, DEFAULT_POINT_BUDGET)
    }

    pub fn distinct_tuples_bounded(&self, n: usize, budget: usize) -> Result<GSet> {
        if n > self.size + 1 {
            return Err(Error::TupleLengthOutOfRange {
                length: n,
                points: self.size,
            });
        }
        let count = match falling_factorial_capped(self.size, n, budget as u64) {
            Some(c) => c as usize,
            None => {
                return Err(Error::SizeBudgetExceeded {
                    requested: budget + 1,
                    budget,
                })
            }
        };
        let m = self.size;
        let gen_actions = self
            .gen_actions
            .iter()
            .map(|a| {
                let mut table = Vec::with_capacity(count);
                let mut tuple = vec![0u32; n];
                let mut image = vec![0u32; n];
                for r in 0..count as u64 {
                    unrank_tuple(r, m, n, &mut tuple);
                    for (i, &t) in tuple.iter().enumerate() {
                        image[i] = a[t as usize];
                    }
                    table.push(rank_tuple(&image, m) as u32);
                }
                table
            })
            .collect();
        Ok(GSet::new(self.group.clone(), count, gen_actions))
    }

    /// Number of equivariant maps from `self` to `target`: the product over
    /// orbits of `self` of the number of target points fixed by the orbit
    /// stabilizer.
    pub fn count_equivariant_maps(&self, target: &GSet) -> Result<u64> {
        if !self.group.same_group(&target.group) {
            return Err(Error::GroupMismatch);
        }
        let mut total: u64 = 1;
        for orbit in self.orbits() {
            let fixed = target.fixed_points(&orbit.stabilizer)?.len() as u64;
            total = total.checked_mul(fixed).ok_or(Error::CountOverflow)?;
        }
        Ok(total)
    }

    /// G-set isomorphism by matching orbit stabilizers up to conjugacy.
    pub fn isomorphic(&self, other: &GSet) -> Result<bool> {
        if !self.group.same_group(&other.group) {
            return Err(Error::GroupMismatch);
        }
        if self.size != other.size {
            return Ok(false);
        }
        let mine = self.orbits();
        let theirs = other.orbits();
        if mine.len() != theirs.len() {
            return Ok(false);
        }
        let mut used = vec![false; theirs.len()];
        for orbit in &mine {
            let mut matched = false;
            for (j, candidate) in theirs.iter().enumerate() {
                if used[j] || candidate.size != orbit.size {
                    continue;
                }
                if orbit.stabilizer.is_conjugate_to(&candidate.stabilizer)? {
                    used[j] = true;
                    matched = true;
                    break;
                }
            }
            if !matched {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl std::fmt::Debug for GSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GSet({} points, {:?})", self.size, self.group)
    }
}

/// m·(m-1)·…·(m-n+1), or None once the product would exceed `cap`.
pub fn falling_factorial_capped(m: usize, n: usize, cap: u64) -> Option<u64> {
    let mut product: u64 = 1;
    for i in 0..n {
        if i >= m {
            return Some(0);
        }
        product = product.checked_mul((m - i) as u64)?;
        if product > cap {
            return None;
        }
    }
    Some(product)
}

/// Rank of an injective tuple over m points in the lexicographic order.
pub(crate) fn rank_tuple(tuple: &[u32], m: usize) -> u64 {
    let n = tuple.len();
    let mut rank: u64 = 0;
    for i in 0..n {
        let smaller_unused = tuple[..i].iter().filter(|&&p| p < tuple[i]).count();
        let choices = tuple[i] as usize - smaller_unused;
        // positions after i choose among (m - i - 1) remaining points
        let mut weight: u64 = 1;
        for j in (i + 1)..n {
            weight *= (m - j) as u64;
        }
        rank += choices as u64 * weight;
    }
    rank
}

/// Inverse of `rank_tuple`; writes into `out`.
pub(crate) fn unrank_tuple(rank: u64, m: usize, n: usize, out: &mut [u32]) {
    let mut r = rank;
    let mut used = vec![false; m];
    for i in 0..n {
        let mut weight: u64 = 1;
        for j in (i + 1)..n {
            weight *= (m - j) as u64;
        }
        let c = (r / weight) as usize;
        r %= weight;
        // the (c+1)-th unused point
        let mut seen = 0;
        for (p, flag) in used.iter_mut().enumerate() {
            if !*flag {
                if seen == c {
                    *flag = true;
                    out[i] = p as u32;
                    break;
                }
                seen += 1;
            }
        }
    }
}
