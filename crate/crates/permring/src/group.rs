//! Fully enumerated finite permutation groups and subgroup combinatorics.
//!
//! Groups are immutable once built: elements are enumerated eagerly (no
//! Schreier-Sims machinery; the whole point is desk-scale exactness), sorted
//! lexicographically by image sequence, and addressed by dense `u32` ids.
//! Subgroups are sorted id lists tied to their parent. Every operation is
//! deterministic: scans ascend ids, representatives are least elements.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default bound on group orders accepted by `generate`.
pub const DEFAULT_ORDER_BOUND: usize = 10_080;

struct GroupInner {
    degree: usize,
    generators: Vec<Permutation>,
    gen_ids: Vec<u32>,
    elements: Vec<Permutation>,
    inverses: Vec<u32>,
    /// For each non-identity element e, a pair (prev, k) with
    /// e = prev ∘ gen_k; the identity holds None. Lets G-sets act by
    /// arbitrary elements knowing only the generator actions.
    factors: Vec<Option<(u32, u16)>>,
}

#[derive(Clone)]
pub struct FiniteGroup {
    inner: Arc<GroupInner>,
}

impl FiniteGroup {
    /// Enumerates the group generated by `generators` on `degree` points,
    /// with the default order bound.
    pub fn generate(degree: usize, generators: &[Permutation]) -> Result<Self> {
        Self::generate_bounded(degree, generators, DEFAULT_ORDER_BOUND)
    }

    pub fn generate_bounded(degree: usize, generators: &[Permutation], bound: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidDegree(0));
        }
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }

        // Breadth-first closure, recording one factorization per element.
        let identity = Permutation::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Permutation, u32> = HashMap::new();
        index.insert(identity, 0);
        let mut factors: Vec<Option<(u32, u16)>> = vec![None];
        let mut head = 0usize;
        while head < elements.len() {
            let current = elements[head].clone();
            for (k, g) in generators.iter().enumerate() {
                let next = current.compose(g);
                if !index.contains_key(&next) {
                    if elements.len() >= bound {
                        return Err(Error::OrderBoundExceeded { bound });
                    }
                    index.insert(next.clone(), elements.len() as u32);
                    elements.push(next);
                    factors.push(Some((head as u32, k as u16)));
                }
            }
            head += 1;
        }

        // Re-index in lexicographic order of image sequences. The identity
        // sorts first, so it keeps id 0.
        let mut order: Vec<u32> = (0..elements.len() as u32).collect();
        order.sort_by(|&a, &b| elements[a as usize].cmp(&elements[b as usize]));
        let mut new_of_old = vec![0u32; elements.len()];
        for (new, &old) in order.iter().enumerate() {
            new_of_old[old as usize] = new as u32;
        }
        let sorted_elements: Vec<Permutation> =
            order.iter().map(|&old| elements[old as usize].clone()).collect();
        let sorted_factors: Vec<Option<(u32, u16)>> = order
            .iter()
            .map(|&old| factors[old as usize].map(|(prev, k)| (new_of_old[prev as usize], k)))
            .collect();
        debug_assert!(sorted_elements[0].is_identity());

        let sorted_index: HashMap<&Permutation, u32> = sorted_elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p, i as u32))
            .collect();
        let inverses: Vec<u32> = sorted_elements
            .iter()
            .map(|p| sorted_index[&p.inverse()])
            .collect();
        let gen_ids: Vec<u32> = generators.iter().map(|g| sorted_index[g]).collect();

        Ok(FiniteGroup {
            inner: Arc::new(GroupInner {
                degree,
                generators: generators.to_vec(),
                gen_ids,
                elements: sorted_elements,
                inverses,
                factors: sorted_factors,
            }),
        })
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn order(&self) -> usize {
        self.inner.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.inner.elements
    }

    pub fn element(&self, id: u32) -> &Permutation {
        &self.inner.elements[id as usize]
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.generators
    }

    pub fn generator_ids(&self) -> &[u32] {
        &self.inner.gen_ids
    }

    pub fn identity_id(&self) -> u32 {
        0
    }

    pub fn id_of(&self, p: &Permutation) -> Option<u32> {
        if p.degree() != self.inner.degree {
            return None;
        }
        self.inner
            .elements
            .binary_search_by(|e| e.cmp(p))
            .ok()
            .map(|i| i as u32)
    }

    pub fn require_id(&self, p: &Permutation) -> Result<u32> {
        self.id_of(p).ok_or(Error::NotAnElement)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let product = self.element(a).compose(self.element(b));
        self.id_of(&product).expect("group is closed under composition")
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inner.inverses[a as usize]
    }

    /// g⁻¹ h g, matching the convention H^g = g⁻¹Hg.
    pub fn conjugate_element(&self, h: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), h), g)
    }

    pub(crate) fn factorization(&self, id: u32) -> Option<(u32, u16)> {
        self.inner.factors[id as usize]
    }

    /// Pointer or structural equality; either way the two values are
    /// interchangeable as parents.
    pub fn same_group(&self, other: &FiniteGroup) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.degree == other.inner.degree && self.inner.elements == other.inner.elements)
    }

    pub fn full_subgroup(&self) -> SubgroupHandle {
        SubgroupHandle {
            parent: self.clone(),
            ids: (0..self.order() as u32).collect(),
        }
    }

    pub fn trivial_subgroup(&self) -> SubgroupHandle {
        SubgroupHandle {
            parent: self.clone(),
            ids: vec![0],
        }
    }

    pub(crate) fn subgroup_from_sorted_ids(&self, ids: Vec<u32>) -> SubgroupHandle {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        SubgroupHandle {
            parent: self.clone(),
            ids,
        }
    }

    /// Closure of a set of element ids inside the group.
    pub fn subgroup_closure_ids(&self, seed: &[u32]) -> SubgroupHandle {
        let mut members: HashSet<u32> = HashSet::new();
        members.insert(0);
        let mut queue: Vec<u32> = vec![0];
        for &s in seed {
            if members.insert(s) {
                queue.push(s);
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let e = queue[head];
            head += 1;
            for &s in seed {
                let n = self.mul(e, s);
                if members.insert(n) {
                    queue.push(n);
                }
            }
        }
        let mut ids: Vec<u32> = members.into_iter().collect();
        ids.sort_unstable();
        self.subgroup_from_sorted_ids(ids)
    }

    /// Closure of a list of permutations, which must all lie in the group.
    pub fn subgroup_closure(&self, generators: &[Permutation]) -> Result<SubgroupHandle> {
        let seed: Vec<u32> = generators
            .iter()
            .map(|g| self.require_id(g))
            .collect::<Result<_>>()?;
        Ok(self.subgroup_closure_ids(&seed))
    }

    /// Decomposes G into double cosets KgH, scanning ascending so each class
    /// is represented by its least element.
    pub fn double_cosets(
        &self,
        left: &SubgroupHandle,
        right: &SubgroupHandle,
    ) -> Result<DoubleCosetDecomposition> {
        if !left.parent.same_group(self) || !right.parent.same_group(self) {
            return Err(Error::ParentMismatch);
        }
        let mut class_of = vec![u32::MAX; self.order()];
        let mut rep_ids = Vec::new();
        let mut class_sizes = Vec::new();
        for g in 0..self.order() as u32 {
            if class_of[g as usize] != u32::MAX {
                continue;
            }
            let class_index = rep_ids.len() as u32;
            rep_ids.push(g);
            let mut size = 0usize;
            for &k in &left.ids {
                let kg = self.mul(k, g);
                for &h in &right.ids {
                    let kgh = self.mul(kg, h);
                    if class_of[kgh as usize] == u32::MAX {
                        class_of[kgh as usize] = class_index;
                        size += 1;
                    }
                }
            }
            class_sizes.push(size);
        }
        let representatives = rep_ids.iter().map(|&id| self.element(id).clone()).collect();
        Ok(DoubleCosetDecomposition {
            left: left.clone(),
            right: right.clone(),
            representatives,
            class_sizes,
            rep_ids,
            class_of,
        })
    }

    /// Right cosets Hg: ascending class representatives and the class index
    /// of every element.
    pub fn right_coset_classes(&self, subgroup: &SubgroupHandle) -> Result<(Vec<u32>, Vec<u32>)> {
        if !subgroup.parent.same_group(self) {
            return Err(Error::ParentMismatch);
        }
        let mut class_of = vec![u32::MAX; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() as u32 {
            if class_of[g as usize] != u32::MAX {
                continue;
            }
            let class_index = reps.len() as u32;
            reps.push(g);
            for &h in &subgroup.ids {
                class_of[self.mul(h, g) as usize] = class_index;
            }
        }
        Ok((reps, class_of))
    }

    /// One canonical representative per conjugacy class of elementary
    /// abelian p-subgroups, found by breadth-first extension of commuting
    /// order-p generator sets with conjugacy pruning at every rank.
    pub fn elementary_abelian_classes(
        &self,
        prime: u32,
        include_trivial: bool,
    ) -> Result<ElementaryAbelianClassList> {
        if !is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        let order_p: Vec<u32> = (0..self.order() as u32)
            .filter(|&id| self.element(id).order() == prime as usize)
            .collect();

        // Each class is kept as (sorted element ids, generating ids).
        let mut classes: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
        let mut frontier: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
        let mut seen_sets: HashSet<Vec<u32>> = HashSet::new();
        for &x in &order_p {
            let sub = self.subgroup_closure_ids(&[x]);
            if !seen_sets.insert(sub.ids.clone()) {
                continue;
            }
            if !frontier
                .iter()
                .any(|(ids, _)| self.sets_conjugate(ids, &sub.ids))
            {
                frontier.push((sub.ids.clone(), vec![x]));
            }
        }
        while !frontier.is_empty() {
            let mut next: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
            let mut next_sets: HashSet<Vec<u32>> = HashSet::new();
            for (ids, gens) in &frontier {
                for &x in &order_p {
                    if ids.binary_search(&x).is_ok() {
                        continue;
                    }
                    if !gens.iter().all(|&g| self.mul(g, x) == self.mul(x, g)) {
                        continue;
                    }
                    let mut seed = gens.clone();
                    seed.push(x);
                    let sub = self.subgroup_closure_ids(&seed);
                    if !next_sets.insert(sub.ids.clone()) {
                        continue;
                    }
                    if !next
                        .iter()
                        .any(|(known, _)| self.sets_conjugate(known, &sub.ids))
                    {
                        next.push((sub.ids, seed));
                    }
                }
            }
            classes.append(&mut frontier);
            frontier = next;
        }

        // Canonicalize: replace each representative by its least conjugate,
        // then order classes by (order, element ids).
        let mut canon: Vec<Vec<u32>> = classes
            .iter()
            .map(|(ids, _)| self.least_conjugate(ids))
            .collect();
        canon.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let mut reps: Vec<SubgroupHandle> = Vec::new();
        if include_trivial {
            reps.push(self.trivial_subgroup());
        }
        reps.extend(canon.into_iter().map(|ids| self.subgroup_from_sorted_ids(ids)));
        Ok(ElementaryAbelianClassList {
            prime,
            include_trivial,
            classes: reps,
        })
    }

    fn conjugate_sorted_ids(&self, ids: &[u32], g: u32) -> Vec<u32> {
        let mut out: Vec<u32> = ids.iter().map(|&h| self.conjugate_element(h, g)).collect();
        out.sort_unstable();
        out
    }

    fn sets_conjugate(&self, a: &[u32], b: &[u32]) -> bool {
        if a.len() != b.len() {
            return false;
        }
        (0..self.order() as u32).any(|g| self.conjugate_sorted_ids(a, g) == b)
    }

    fn least_conjugate(&self, ids: &[u32]) -> Vec<u32> {
        (0..self.order() as u32)
            .map(|g| self.conjugate_sorted_ids(ids, g))
            .min()
            .expect("group is nonempty")
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteGroup(order {}, degree {})",
            self.order(),
            self.degree()
        )
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_group(other)
    }
}
impl Eq for FiniteGroup {}

/// A subgroup as a sorted list of parent element ids.
#[derive(Clone)]
pub struct SubgroupHandle {
    parent: FiniteGroup,
    ids: Vec<u32>,
}

impl SubgroupHandle {
    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.ids.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn ids(&self) -> &[u32] {
        &self.ids
    }

    pub fn contains_id(&self, id: u32) -> bool {
        self.ids.binary_search(&id).is_ok()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.parent.id_of(p).is_some_and(|id| self.contains_id(id))
    }

    pub fn elements(&self) -> impl Iterator<Item = &Permutation> {
        self.ids.iter().map(|&id| self.parent.element(id))
    }

    pub fn is_trivial(&self) -> bool {
        self.ids.len() == 1
    }

    pub fn is_full(&self) -> bool {
        self.ids.len() == self.parent.order()
    }

    /// H^g = g⁻¹Hg for an element id of the parent.
    pub fn conjugate_by_id(&self, g: u32) -> SubgroupHandle {
        let ids = self.parent.conjugate_sorted_ids(&self.ids, g);
        self.parent.subgroup_from_sorted_ids(ids)
    }

    pub fn conjugate(&self, g: &Permutation) -> Result<SubgroupHandle> {
        Ok(self.conjugate_by_id(self.parent.require_id(g)?))
    }

    pub fn intersect(&self, other: &SubgroupHandle) -> Result<SubgroupHandle> {
        if !self.parent.same_group(&other.parent) {
            return Err(Error::ParentMismatch);
        }
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.ids.len() && j < other.ids.len() {
            match self.ids[i].cmp(&other.ids[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(self.ids[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(self.parent.subgroup_from_sorted_ids(out))
    }

    /// Largest normal subgroup of the parent inside H: the intersection of
    /// all conjugates, with early exit once it collapses to the identity.
    pub fn normal_core(&self) -> SubgroupHandle {
        let mut core = self.clone();
        for g in 0..self.parent.order() as u32 {
            if core.is_trivial() {
                break;
            }
            core = core
                .intersect(&self.conjugate_by_id(g))
                .expect("same parent");
        }
        core
    }

    /// { g : H^g = H }, by direct scan. Conjugating the generators suffices
    /// since conjugation preserves order.
    pub fn normalizer(&self) -> SubgroupHandle {
        let gens = self.generating_set();
        let ids: Vec<u32> = (0..self.parent.order() as u32)
            .filter(|&g| {
                gens.iter()
                    .all(|&h| self.contains_id(self.parent.conjugate_element(h, g)))
            })
            .collect();
        self.parent.subgroup_from_sorted_ids(ids)
    }

    pub fn is_normal(&self) -> bool {
        self.normalizer().is_full()
    }

    /// True when some conjugate of `self` lies inside `other`.
    pub fn is_subconjugate_to(&self, other: &SubgroupHandle) -> Result<bool> {
        if !self.parent.same_group(&other.parent) {
            return Err(Error::ParentMismatch);
        }
        if self.order() > other.order() || other.order() % self.order() != 0 {
            return Ok(false);
        }
        let gens = self.generating_set();
        Ok((0..self.parent.order() as u32).any(|g| {
            gens.iter()
                .all(|&h| other.contains_id(self.parent.conjugate_element(h, g)))
        }))
    }

    pub fn is_conjugate_to(&self, other: &SubgroupHandle) -> Result<bool> {
        Ok(self.order() == other.order() && self.is_subconjugate_to(other)?)
    }

    /// Greedy generating set: ascending elements, keeping those outside the
    /// closure so far. Deterministic and small, not guaranteed minimal.
    pub fn generating_set(&self) -> Vec<u32> {
        let mut gens: Vec<u32> = Vec::new();
        let mut closed = self.parent.trivial_subgroup();
        for &id in &self.ids {
            if closed.order() == self.ids.len() {
                break;
            }
            if !closed.contains_id(id) {
                gens.push(id);
                closed = self.parent.subgroup_closure_ids(&gens);
            }
        }
        gens
    }

    pub fn generator_perms(&self) -> Vec<Permutation> {
        self.generating_set()
            .into_iter()
            .map(|id| self.parent.element(id).clone())
            .collect()
    }

    /// Generators in 1-based cycle notation, ascending.
    pub fn generator_cycles(&self) -> Vec<String> {
        self.generator_perms()
            .iter()
            .map(|p| p.cycle_string())
            .collect()
    }
}

impl PartialEq for SubgroupHandle {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same_group(&other.parent) && self.ids == other.ids
    }
}
impl Eq for SubgroupHandle {}

impl fmt::Debug for SubgroupHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SubgroupHandle(order {}, gens {:?})",
            self.order(),
            self.generator_cycles()
        )
    }
}

/// The partition of G into classes KgH.
pub struct DoubleCosetDecomposition {
    pub left: SubgroupHandle,
    pub right: SubgroupHandle,
    /// Least element of each class, in ascending order of that element.
    pub representatives: Vec<Permutation>,
    pub class_sizes: Vec<usize>,
    rep_ids: Vec<u32>,
    class_of: Vec<u32>,
}

impl DoubleCosetDecomposition {
    pub fn class_count(&self) -> usize {
        self.rep_ids.len()
    }

    pub fn rep_ids(&self) -> &[u32] {
        &self.rep_ids
    }

    pub fn class_index_of(&self, id: u32) -> u32 {
        self.class_of[id as usize]
    }

    /// K ∩ gHg⁻¹ per class, the stabilizer shape of the product of coset
    /// spaces G/K x G/H attached to the class of g.
    pub fn mackey_stabilizers(&self) -> Vec<SubgroupHandle> {
        let group = self.left.parent();
        self.rep_ids
            .iter()
            .map(|&g| {
                self.left
                    .intersect(&self.right.conjugate_by_id(group.inv(g)))
                    .expect("same parent")
            })
            .collect()
    }
}

/// Conjugacy classes of elementary abelian p-subgroups; when requested the
/// trivial subgroup appears first.
pub struct ElementaryAbelianClassList {
    pub prime: u32,
    pub include_trivial: bool,
    pub classes: Vec<SubgroupHandle>,
}

impl ElementaryAbelianClassList {
    pub fn nontrivial(&self) -> &[SubgroupHandle] {
        if self.include_trivial {
            &self.classes[1..]
        } else {
            &self.classes
        }
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{stab, symmetric};

    fn perm(text: &str, degree: usize) -> Permutation {
        Permutation::parse_cycles(text, degree).unwrap()
    }

    #[test]
    fn generates_expected_orders() {
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(symmetric(3).order(), 6);
        let trivial = FiniteGroup::generate(1, &[]).unwrap();
        assert_eq!(trivial.order(), 1);
        assert_eq!(trivial.degree(), 1);
    }

    #[test]
    fn order_bound_is_enforced() {
        let gens = [perm("(1 2 3 4 5)", 5), perm("(1 2)", 5)];
        match FiniteGroup::generate_bounded(5, &gens, 100) {
            Err(Error::OrderBoundExceeded { bound: 100 }) => {}
            other => panic!("expected OrderBoundExceeded, got {other:?}"),
        }
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let gens = [perm("(1 2)", 2), perm("(1 2 3)", 3)];
        assert!(matches!(
            FiniteGroup::generate(2, &gens),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn identity_has_id_zero_and_elements_are_sorted() {
        let g = symmetric(4);
        assert!(g.element(0).is_identity());
        for w in g.elements().windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn multiplication_and_inverse_agree_with_permutations() {
        let g = symmetric(4);
        for a in 0..g.order() as u32 {
            let inv = g.inv(a);
            assert_eq!(g.mul(a, inv), 0);
        }
        let a = g.id_of(&perm("(1 2)", 4)).unwrap();
        let b = g.id_of(&perm("(2 3)", 4)).unwrap();
        assert_eq!(g.element(g.mul(a, b)), &perm("(1 2)", 4).compose(&perm("(2 3)", 4)));
    }

    #[test]
    fn subgroup_closure_matches_known_subgroups() {
        let g = symmetric(4);
        let s3 = g.subgroup_closure(&[perm("(1 2)", 4), perm("(1 2 3)", 4)]).unwrap();
        assert_eq!(s3.order(), 6);
        let v4 = g
            .subgroup_closure(&[perm("(1 2)(3 4)", 4), perm("(1 3)(2 4)", 4)])
            .unwrap();
        assert_eq!(v4.order(), 4);
        assert!(v4.is_normal());
        assert!(!s3.is_normal());
    }

    #[test]
    fn closure_rejects_outsiders() {
        let g = FiniteGroup::generate(3, &[perm("(1 2 3)", 3)]).unwrap();
        assert!(matches!(
            g.subgroup_closure(&[perm("(1 2)", 3)]),
            Err(Error::NotAnElement)
        ));
    }

    #[test]
    fn conjugation_preserves_order_and_composes() {
        let g = symmetric(4);
        let h = stab(&g, 3);
        for a in 0..g.order() as u32 {
            let c = h.conjugate_by_id(a);
            assert_eq!(c.order(), h.order());
            for b in 0..g.order() as u32 {
                assert_eq!(c.conjugate_by_id(b), h.conjugate_by_id(g.mul(a, b)));
            }
        }
    }

    #[test]
    fn intersection_is_lagrange_compatible() {
        let g = symmetric(4);
        let h = stab(&g, 3);
        let k = stab(&g, 2);
        let hk = h.intersect(&k).unwrap();
        assert_eq!(hk.order(), 2); // permutations fixing points 2 and 3
        assert!(h.order() % hk.order() == 0);
    }

    #[test]
    fn normal_core_examples() {
        let g = symmetric(4);
        assert!(stab(&g, 3).normal_core().is_trivial());

        // Dihedral of order 8 on the square; its rotation subgroup is normal.
        let d8 = FiniteGroup::generate(4, &[perm("(1 2 3 4)", 4), perm("(1 4)(2 3)", 4)]).unwrap();
        assert_eq!(d8.order(), 8);
        let c4 = d8.subgroup_closure(&[perm("(1 2 3 4)", 4)]).unwrap();
        assert_eq!(c4.normal_core(), c4);

        // A Sylow 2-subgroup of S4 cores down to the Klein four-group.
        let sylow = g
            .subgroup_closure(&[perm("(1 2 3 4)", 4), perm("(1 3)", 4)])
            .unwrap();
        assert_eq!(sylow.order(), 8);
        assert_eq!(sylow.normal_core().order(), 4);
    }

    #[test]
    fn normalizer_examples() {
        let g = symmetric(4);
        let c4 = g.subgroup_closure(&[perm("(1 2 3 4)", 4)]).unwrap();
        assert_eq!(c4.normalizer().order(), 8);
        let v4 = g
            .subgroup_closure(&[perm("(1 2)(3 4)", 4), perm("(1 3)(2 4)", 4)])
            .unwrap();
        assert!(v4.normalizer().is_full());
        let s3 = symmetric(3);
        let c2 = s3.subgroup_closure(&[perm("(1 2)", 3)]).unwrap();
        assert_eq!(c2.normalizer(), c2);
    }

    #[test]
    fn double_cosets_partition_the_group() {
        let g = symmetric(4);
        let h = stab(&g, 2);
        let dc = g.double_cosets(&h, &h).unwrap();
        assert_eq!(dc.class_count(), 2);
        assert_eq!(dc.class_sizes, vec![6, 18]);
        assert_eq!(dc.class_sizes.iter().sum::<usize>(), g.order());

        let s3 = symmetric(3);
        let c2 = s3.subgroup_closure(&[perm("(1 2)", 3)]).unwrap();
        let dc = s3.double_cosets(&c2, &c2).unwrap();
        assert_eq!(dc.class_sizes, vec![2, 4]);

        let full = g.full_subgroup();
        let dc = g.double_cosets(&full, &stab(&g, 3)).unwrap();
        assert_eq!(dc.class_count(), 1);
    }

    #[test]
    fn double_coset_sizes_match_intersection_formula() {
        let g = symmetric(4);
        let k = stab(&g, 3);
        let h = g.subgroup_closure(&[perm("(1 2 3 4)", 4)]).unwrap();
        let dc = g.double_cosets(&k, &h).unwrap();
        for (i, &rep) in dc.rep_ids().iter().enumerate() {
            let conj = h.conjugate_by_id(g.inv(rep)); // gHg⁻¹
            let meet = k.intersect(&conj).unwrap();
            assert_eq!(dc.class_sizes[i], k.order() * h.order() / meet.order());
        }
    }

    #[test]
    fn double_coset_representatives_are_least_and_stable() {
        let g = symmetric(4);
        let h = stab(&g, 3);
        let dc = g.double_cosets(&h, &h).unwrap();
        for (i, rep) in dc.representatives.iter().enumerate() {
            let rep_id = g.id_of(rep).unwrap();
            assert_eq!(dc.class_index_of(rep_id), i as u32);
            // least member of its class
            for e in 0..g.order() as u32 {
                if dc.class_index_of(e) == i as u32 {
                    assert!(rep_id <= e);
                }
            }
        }
    }

    #[test]
    fn elementary_abelian_classes_of_s4() {
        let g = symmetric(4);
        let list = g.elementary_abelian_classes(2, false).unwrap();
        // transposition, double transposition, mixed Klein, diagonal Klein
        assert_eq!(list.classes.len(), 4);
        let orders: Vec<usize> = list.classes.iter().map(|c| c.order()).collect();
        assert_eq!(orders, vec![2, 2, 4, 4]);

        let with_trivial = g.elementary_abelian_classes(2, true).unwrap();
        assert_eq!(with_trivial.classes.len(), 5);
        assert!(with_trivial.classes[0].is_trivial());

        assert_eq!(g.elementary_abelian_classes(3, false).unwrap().classes.len(), 1);
        assert!(g.elementary_abelian_classes(5, false).unwrap().classes.is_empty());
        assert!(matches!(
            g.elementary_abelian_classes(4, false),
            Err(Error::NotPrime(4))
        ));
    }

    #[test]
    fn elementary_abelian_classes_of_klein_group() {
        let v4 = FiniteGroup::generate(4, &[perm("(1 2)", 4), perm("(3 4)", 4)]).unwrap();
        assert_eq!(v4.order(), 4);
        let list = v4.elementary_abelian_classes(2, false).unwrap();
        // conjugacy is trivial in an abelian group: three C2s and V4 itself
        assert_eq!(list.classes.len(), 4);
    }

    #[test]
    fn subconjugacy_examples() {
        let g = symmetric(4);
        let c2 = g.subgroup_closure(&[perm("(1 2)", 4)]).unwrap();
        let s3 = stab(&g, 3);
        assert!(c2.is_subconjugate_to(&s3).unwrap());
        let double = g.subgroup_closure(&[perm("(1 2)(3 4)", 4)]).unwrap();
        assert!(!double.is_subconjugate_to(&s3).unwrap());
        let v4 = g
            .subgroup_closure(&[perm("(1 2)(3 4)", 4), perm("(1 3)(2 4)", 4)])
            .unwrap();
        assert!(double.is_subconjugate_to(&v4).unwrap());
        assert!(!v4.is_subconjugate_to(&s3).unwrap());
    }

    #[test]
    fn generating_sets_regenerate() {
        let g = symmetric(4);
        for sub in [stab(&g, 3), g.full_subgroup(), g.trivial_subgroup()] {
            let gens = sub.generating_set();
            assert_eq!(g.subgroup_closure_ids(&gens), sub);
        }
    }

    #[test]
    fn right_cosets_partition() {
        let g = symmetric(4);
        let h = stab(&g, 3);
        let (reps, class_of) = g.right_coset_classes(&h).unwrap();
        assert_eq!(reps.len(), 4);
        let mut counts = vec![0usize; reps.len()];
        for &c in &class_of {
            counts[c as usize] += 1;
        }
        assert!(counts.iter().all(|&c| c == h.order()));
    }
}
