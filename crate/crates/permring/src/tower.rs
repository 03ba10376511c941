//! Splitting towers: the ring of n-tuples of pairwise distinct points, its
//! degree, and the quasi-Galois closure read off the top level.
//!
//! The level-n ring is classified without materializing tuples: every orbit
//! of (n+1)-tuples contains a representative extending a level-n
//! representative t by a point outside t, and two extensions of t are
//! equivalent exactly when the new points share an orbit under the
//! stabilizer of t. The climb therefore carries one (tuple, stabilizer)
//! pair per orbit and never compares across representatives. In the stable
//! category, classes whose stabilizer order is prime to p are dropped the
//! moment they appear.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::group::SubgroupHandle;
use crate::gset::{GSet, DEFAULT_POINT_BUDGET};
use crate::perm::Permutation;
use crate::ring::{strongly_p_embedded_in, support_of_stabilizers, CategoryTag, PermRing};

/// One orbit of n-tuples of pairwise distinct carrier points.
#[derive(Clone, Debug)]
pub struct TupleClass {
    /// Representative tuple, built left to right during the climb.
    pub tuple: Vec<u32>,
    /// Joint stabilizer of the representative's points.
    pub stabilizer: SubgroupHandle,
    /// Size of the orbit of the tuple.
    pub orbit_size: u64,
}

#[derive(Clone, Debug)]
pub struct TowerLevel {
    pub level: usize,
    pub classes: Vec<TupleClass>,
    pub total_size: u64,
}

impl TowerLevel {
    pub fn stabilizer_orders(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.stabilizer.order()).collect()
    }

    /// Builds the level as an honest G-set of tuples, one point per tuple,
    /// tuples in lexicographic order.
    pub fn materialize(&self, ring: &PermRing) -> Result<GSet> {
        let carrier = ring.carrier();
        let group = ring.group();
        let n_gens = group.generators().len();
        let mut tuples: Vec<Vec<u32>> = Vec::new();
        for class in &self.classes {
            let start = tuples.len();
            let mut seen: HashSet<Vec<u32>> = HashSet::new();
            seen.insert(class.tuple.clone());
            tuples.push(class.tuple.clone());
            let mut head = start;
            while head < tuples.len() {
                for k in 0..n_gens {
                    let image: Vec<u32> = tuples[head]
                        .iter()
                        .map(|&p| carrier.act_gen(k, p))
                        .collect();
                    if seen.insert(image.clone()) {
                        tuples.push(image);
                    }
                }
                head += 1;
            }
            debug_assert_eq!((tuples.len() - start) as u64, class.orbit_size);
        }
        tuples.sort();
        let index: HashMap<&[u32], u32> = tuples
            .iter()
            .enumerate()
            .map(|(i, t)| (t.as_slice(), i as u32))
            .collect();
        let gen_actions: Vec<Vec<u32>> = (0..n_gens)
            .map(|k| {
                tuples
                    .iter()
                    .map(|t| {
                        let image: Vec<u32> =
                            t.iter().map(|&p| carrier.act_gen(k, p)).collect();
                        index[image.as_slice()]
                    })
                    .collect()
            })
            .collect();
        Ok(GSet::from_parts(group.clone(), tuples.len(), gen_actions))
    }
}

#[derive(Clone, Debug)]
pub struct TowerReport {
    /// Index of the last level with a surviving class.
    pub degree: usize,
    /// Levels 0 through `degree`; level 0 is the unit.
    pub levels: Vec<TowerLevel>,
}

/// Quasi-Galois closure of a transitive nonzero ring.
#[derive(Clone, Debug)]
pub struct ClosureReport {
    /// None when the category carries no prime to take supports at.
    pub constant_degree: Option<bool>,
    pub closure: PermRing,
    /// Joint stabilizer of the witness tuple; the closure is its coset ring.
    pub stabilizer: SubgroupHandle,
    /// Coset representatives of the witness tuple, first one the identity.
    pub tuple_witness: Vec<Permutation>,
}

/// Stabilizer of every point, conjugating each orbit representative's
/// stabilizer along the transversal instead of re-testing per point.
fn all_point_stabilizers(carrier: &GSet) -> Vec<SubgroupHandle> {
    let group = carrier.group();
    let (orbit_of, reps, transversal) = carrier.orbit_partition();
    let rep_stabs: Vec<SubgroupHandle> = reps
        .iter()
        .map(|&r| carrier.point_stabilizer(r))
        .collect();
    (0..carrier.size())
        .map(|q| {
            let o = orbit_of[q] as usize;
            if reps[o] == q as u32 {
                rep_stabs[o].clone()
            } else {
                rep_stabs[o].conjugate_by_id(group.inv(transversal[q]))
            }
        })
        .collect()
}

impl PermRing {
    /// Surviving tuple classes per level, level 1 first; empty for a zero
    /// ring. The running point count per level is held under `budget`.
    fn climb(&self, budget: usize) -> Result<Vec<Vec<TupleClass>>> {
        let carrier = self.carrier();
        let group_order = self.group().order() as u64;
        let stabs = all_point_stabilizers(carrier);
        let (_, reps, _) = carrier.orbit_partition();
        let mut current: Vec<TupleClass> = Vec::new();
        let mut total = 0u64;
        for &r in &reps {
            let stab = stabs[r as usize].clone();
            if !self.orbit_survives(stab.order()) {
                continue;
            }
            let orbit_size = group_order / stab.order() as u64;
            total += orbit_size;
            current.push(TupleClass {
                tuple: vec![r],
                stabilizer: stab,
                orbit_size,
            });
        }
        if total > budget as u64 {
            return Err(Error::SizeBudgetExceeded {
                requested: total as usize,
                budget,
            });
        }
        let mut levels: Vec<Vec<TupleClass>> = Vec::new();
        while !current.is_empty() {
            let mut next: Vec<TupleClass> = Vec::new();
            let mut next_total = 0u64;
            for class in &current {
                let (_, ext_reps) = carrier.subgroup_orbit_partition(&class.stabilizer)?;
                for &q in &ext_reps {
                    if class.tuple.contains(&q) {
                        continue;
                    }
                    let stab = class.stabilizer.intersect(&stabs[q as usize])?;
                    if !self.orbit_survives(stab.order()) {
                        continue;
                    }
                    let orbit_size = group_order / stab.order() as u64;
                    next_total += orbit_size;
                    if next_total > budget as u64 {
                        return Err(Error::SizeBudgetExceeded {
                            requested: next_total as usize,
                            budget,
                        });
                    }
                    let mut tuple = class.tuple.clone();
                    tuple.push(q);
                    next.push(TupleClass {
                        tuple,
                        stabilizer: stab,
                        orbit_size,
                    });
                }
            }
            levels.push(std::mem::take(&mut current));
            current = next;
        }
        Ok(levels)
    }

    /// Largest level of the splitting tower with a surviving class. Outside
    /// the stable category this is the carrier size: tuple classes never
    /// die, so the tower runs out exactly when the points do. In the stable
    /// category the pruned climb is performed and may hit the budget.
    pub fn degree(&self) -> Result<usize> {
        self.degree_with(DEFAULT_POINT_BUDGET)
    }

    pub fn degree_with(&self, budget: usize) -> Result<usize> {
        match self.category() {
            CategoryTag::Stable { .. } => Ok(self.climb(budget)?.len()),
            _ => Ok(self.carrier().size()),
        }
    }

    pub fn splitting_tower(&self) -> Result<TowerReport> {
        self.splitting_tower_with(DEFAULT_POINT_BUDGET)
    }

    pub fn splitting_tower_with(&self, budget: usize) -> Result<TowerReport> {
        let climbed = self.climb(budget)?;
        let mut levels = vec![TowerLevel {
            level: 0,
            classes: vec![TupleClass {
                tuple: Vec::new(),
                stabilizer: self.group().full_subgroup(),
                orbit_size: 1,
            }],
            total_size: 1,
        }];
        for (i, classes) in climbed.into_iter().enumerate() {
            let total_size = classes.iter().map(|c| c.orbit_size).sum();
            levels.push(TowerLevel {
                level: i + 1,
                classes,
                total_size,
            });
        }
        Ok(TowerReport {
            degree: levels.len() - 1,
            levels,
        })
    }

    /// Whether the degree is the same across the whole support: the support
    /// of the top tower level must equal the support of the ring itself.
    /// Outside the stable category the top level's stabilizers all equal the
    /// action kernel, so no climb is needed; a zero ring is constant
    /// trivially.
    pub fn has_constant_degree(&self) -> Result<bool> {
        self.has_constant_degree_with(DEFAULT_POINT_BUDGET)
    }

    pub fn has_constant_degree_with(&self, budget: usize) -> Result<bool> {
        let prime = self.category().require_prime()?;
        if self.is_zero() {
            return Ok(true);
        }
        let own = self.support()?;
        let top_stabs: Vec<SubgroupHandle> = match self.category() {
            CategoryTag::Stable { .. } => {
                let levels = self.climb(budget)?;
                levels
                    .last()
                    .expect("nonzero ring has a first level")
                    .iter()
                    .map(|c| c.stabilizer.clone())
                    .collect()
            }
            _ => vec![self.carrier().action_kernel()],
        };
        let classes = self.group().elementary_abelian_classes(prime, false)?;
        let top = support_of_stabilizers(
            prime,
            classes.nontrivial(),
            &top_stabs,
            !self.category().is_stable(),
        )?;
        Ok(own == top)
    }

    pub fn quasi_galois_closure(&self) -> Result<ClosureReport> {
        self.quasi_galois_closure_with(DEFAULT_POINT_BUDGET)
    }

    /// The least extension splitting the ring: the coset ring of the joint
    /// stabilizer of a longest surviving tuple. The witness tuple is the
    /// lexicographically least one among all that realize the degree, so
    /// repeated runs agree. In the stable category every top class must
    /// produce a conjugate stabilizer; a violation reports
    /// `NonConjugateClosures` rather than an arbitrary pick.
    pub fn quasi_galois_closure_with(&self, budget: usize) -> Result<ClosureReport> {
        if !self.carrier().is_transitive() {
            return Err(Error::NotTransitive);
        }
        if self.is_zero() {
            return Err(Error::ZeroRing);
        }
        let constant_degree = match self.category().prime() {
            Some(_) => Some(self.has_constant_degree_with(budget)?),
            None => None,
        };
        let carrier = self.carrier();
        let group = self.group().clone();
        let (tuple, stabilizer) = match self.category() {
            CategoryTag::Stable { prime } => {
                let levels = self.climb(budget)?;
                let depth = levels.len();
                let stabs = all_point_stabilizers(carrier);
                let mut tuple = Vec::with_capacity(depth);
                let stabilizer = lex_least_valid_tuple(
                    carrier,
                    &stabs,
                    prime as usize,
                    depth,
                    &mut tuple,
                    group.full_subgroup(),
                )
                .expect("a surviving top class exists");
                for class in levels.last().expect("nonzero ring") {
                    if !class.stabilizer.is_conjugate_to(&stabilizer)? {
                        return Err(Error::NonConjugateClosures);
                    }
                }
                (tuple, stabilizer)
            }
            _ => {
                let tuple: Vec<u32> = (0..carrier.size() as u32).collect();
                (tuple, carrier.action_kernel())
            }
        };
        let (_, _, transversal) = carrier.orbit_partition();
        let tuple_witness = tuple
            .iter()
            .map(|&q| group.element(transversal[q as usize]).clone())
            .collect();
        let closure = PermRing::new(self.category(), GSet::cosets(&group, &stabilizer)?)?;
        Ok(ClosureReport {
            constant_degree,
            closure,
            stabilizer,
            tuple_witness,
        })
    }

    pub fn splitting_rings(&self) -> Result<Vec<PermRing>> {
        self.splitting_rings_with(DEFAULT_POINT_BUDGET)
    }

    /// Coset rings of the top-level stabilizers, one per conjugacy class.
    /// Empty for a zero ring; a single ring whenever the closure is defined.
    pub fn splitting_rings_with(&self, budget: usize) -> Result<Vec<PermRing>> {
        if self.is_zero() {
            return Ok(Vec::new());
        }
        let reps: Vec<SubgroupHandle> = match self.category() {
            CategoryTag::Stable { .. } => {
                let levels = self.climb(budget)?;
                let mut kept: Vec<SubgroupHandle> = Vec::new();
                for class in levels.last().expect("nonzero ring") {
                    let mut known = false;
                    for k in kept.iter() {
                        if k.is_conjugate_to(&class.stabilizer)? {
                            known = true;
                            break;
                        }
                    }
                    if !known {
                        kept.push(class.stabilizer.clone());
                    }
                }
                kept
            }
            _ => vec![self.carrier().action_kernel()],
        };
        reps.into_iter()
            .map(|k| PermRing::new(self.category(), GSet::cosets(self.group(), &k)?))
            .collect()
    }

    /// Whether this ring splits `other`: scalar extension of `other` along
    /// this ring must become a product of deg(other) unit factors. The
    /// double coset decomposition classifies the factors by intersections
    /// of this ring's stabilizer K with conjugates of the other's; a factor
    /// is the unit when its intersection is all of K, except in the stable
    /// world where strongly p-embedded in K suffices.
    pub fn splits(&self, other: &PermRing) -> Result<bool> {
        if !self.group().same_group(other.group()) {
            return Err(Error::GroupMismatch);
        }
        if self.category() != other.category() {
            return Err(Error::CategoryMismatch);
        }
        if !self.carrier().is_transitive() || !other.carrier().is_transitive() {
            return Err(Error::NotTransitive);
        }
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroRing);
        }
        let k = self.carrier().point_stabilizer(0);
        let h = other.carrier().point_stabilizer(0);
        let decomposition = self.group().double_cosets(&k, &h)?;
        let mut units = 0usize;
        for s in decomposition.mackey_stabilizers() {
            if !self.orbit_survives(s.order()) {
                continue;
            }
            let unit = match self.category() {
                CategoryTag::Stable { prime } => strongly_p_embedded_in(&s, &k, prime)?,
                _ => s.order() == k.order(),
            };
            if !unit {
                return Ok(false);
            }
            units += 1;
        }
        Ok(units == other.degree()?)
    }
}

/// Depth-first search for the lexicographically least tuple of `depth`
/// distinct points whose joint stabilizer keeps order divisible by p.
/// Divisibility is inherited by prefixes, so pruning on it is safe.
fn lex_least_valid_tuple(
    carrier: &GSet,
    stabs: &[SubgroupHandle],
    prime: usize,
    depth: usize,
    tuple: &mut Vec<u32>,
    stabilizer: SubgroupHandle,
) -> Option<SubgroupHandle> {
    if tuple.len() == depth {
        return Some(stabilizer);
    }
    for q in 0..carrier.size() as u32 {
        if tuple.contains(&q) {
            continue;
        }
        let next = stabilizer
            .intersect(&stabs[q as usize])
            .expect("stabilizers share the parent group");
        if next.order() % prime != 0 {
            continue;
        }
        tuple.push(q);
        if let Some(found) = lex_least_valid_tuple(carrier, stabs, prime, depth, tuple, next) {
            return Some(found);
        }
        tuple.pop();
    }
    None
}
