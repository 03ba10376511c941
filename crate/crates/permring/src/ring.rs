//! Separable rings modeled by G-sets, tagged with the ambient category.
//!
//! A ring is a G-set carrier plus a category tag: plain modules, the derived
//! world (where everything behaves as in modules), or the stable world at a
//! prime p dividing |G|, where orbits with stabilizer of order prime to p
//! die and the unit is detected by strong p-embedding.

use crate::error::{Error, Result};
use crate::group::{is_prime, FiniteGroup, SubgroupHandle};
use crate::gset::GSet;
use crate::perm::Permutation;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CategoryTag {
    Mod { prime: Option<u32> },
    Derived { prime: Option<u32> },
    Stable { prime: u32 },
}

impl CategoryTag {
    pub fn prime(&self) -> Option<u32> {
        match *self {
            CategoryTag::Mod { prime } | CategoryTag::Derived { prime } => prime,
            CategoryTag::Stable { prime } => Some(prime),
        }
    }

    pub fn is_stable(&self) -> bool {
        matches!(self, CategoryTag::Stable { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            CategoryTag::Mod { .. } => "mod",
            CategoryTag::Derived { .. } => "derived",
            CategoryTag::Stable { .. } => "stable",
        }
    }

    pub fn require_prime(&self) -> Result<u32> {
        self.prime().ok_or(Error::PrimeRequired)
    }
}

#[derive(Clone)]
pub struct PermRing {
    category: CategoryTag,
    carrier: GSet,
}

/// Outcome of the quasi-Galois test.
#[derive(Clone, Debug)]
pub struct GaloisReport {
    pub quasi_galois: bool,
    pub degree: usize,
    /// Ring endomorphism count; undefined in the stable category.
    pub endo_count: Option<u64>,
    /// A failing pair (g, h) for the stable criterion, when present.
    pub witness: Option<(Permutation, Permutation)>,
}

/// The p-support of a ring: which conjugacy classes of elementary abelian
/// p-subgroups see it. Classes are indices into the canonical nontrivial
/// class list of the ambient group, so descriptors over one group compare
/// by plain equality.
#[derive(Clone, Debug)]
pub struct SupportDescriptor {
    pub prime: u32,
    pub trivial_included: bool,
    pub members: Vec<(usize, SubgroupHandle)>,
}

impl SupportDescriptor {
    pub fn indices(&self) -> Vec<usize> {
        self.members.iter().map(|(i, _)| *i).collect()
    }

    pub fn is_subset_of(&self, other: &SupportDescriptor) -> bool {
        if self.prime != other.prime {
            return false;
        }
        if self.trivial_included && !other.trivial_included {
            return false;
        }
        let theirs = other.indices();
        self.indices().iter().all(|i| theirs.contains(i))
    }

    pub fn class_count(&self) -> usize {
        self.members.len() + usize::from(self.trivial_included)
    }
}

impl PartialEq for SupportDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.prime == other.prime
            && self.trivial_included == other.trivial_included
            && self.indices() == other.indices()
    }
}
impl Eq for SupportDescriptor {}

impl PermRing {
    /// Wraps a carrier in a category, validating the prime.
    pub fn new(category: CategoryTag, carrier: GSet) -> Result<PermRing> {
        if let Some(p) = category.prime() {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
        }
        if let CategoryTag::Stable { prime } = category {
            let order = carrier.group().order();
            if order % prime as usize != 0 {
                return Err(Error::PrimeDoesNotDivideOrder {
                    prime,
                    order,
                });
            }
        }
        Ok(PermRing { category, carrier })
    }

    pub fn category(&self) -> CategoryTag {
        self.category
    }

    pub fn carrier(&self) -> &GSet {
        &self.carrier
    }

    pub fn group(&self) -> &FiniteGroup {
        self.carrier.group()
    }

    /// True when an orbit survives in the category: always outside the
    /// stable world, and exactly when p divides the stabilizer order inside
    /// it.
    pub fn orbit_survives(&self, stabilizer_order: usize) -> bool {
        match self.category {
            CategoryTag::Stable { prime } => stabilizer_order % prime as usize == 0,
            _ => true,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self.category {
            CategoryTag::Stable { .. } => self
                .carrier
                .orbits()
                .iter()
                .all(|o| !self.orbit_survives(o.stabilizer.order())),
            _ => self.carrier.is_empty(),
        }
    }

    /// Whether the ring is the unit of its category. Requires a transitive
    /// carrier; a transitive-but-zero stable ring reports false.
    pub fn is_unit(&self) -> Result<bool> {
        if !self.carrier.is_transitive() {
            return Err(Error::NotTransitive);
        }
        match self.category {
            CategoryTag::Stable { prime } => {
                let h = self.carrier.point_stabilizer(self.carrier.orbits()[0].representative);
                Ok(strongly_p_embedded(&h, prime))
            }
            _ => Ok(self.carrier.size() == 1),
        }
    }

    /// One transitive ring per surviving orbit, in orbit order.
    pub fn indecomposable_factors(&self) -> Result<Vec<PermRing>> {
        let (orbit_of, reps, _) = self.carrier.orbit_partition();
        let mut factors = Vec::new();
        for (index, &rep) in reps.iter().enumerate() {
            let stab = self.carrier.point_stabilizer(rep);
            if !self.orbit_survives(stab.order()) {
                continue;
            }
            let points: Vec<u32> = (0..self.carrier.size() as u32)
                .filter(|&p| orbit_of[p as usize] == index as u32)
                .collect();
            factors.push(PermRing {
                category: self.category,
                carrier: self.carrier.sub_gset(&points)?,
            });
        }
        Ok(factors)
    }

    /// Ring endomorphisms = equivariant self-maps of the carrier; undefined
    /// in the stable category.
    pub fn count_ring_endomorphisms(&self) -> Result<u64> {
        if self.category.is_stable() {
            return Err(Error::UnsupportedCategory);
        }
        self.carrier.count_equivariant_maps(&self.carrier)
    }

    /// The p-support: classes of elementary abelian p-subgroups subconjugate
    /// into some orbit stabilizer. The trivial class belongs to every
    /// nonzero ring outside the stable world and is never counted inside it.
    pub fn support(&self) -> Result<SupportDescriptor> {
        let prime = self.category.require_prime()?;
        let classes = self.group().elementary_abelian_classes(prime, false)?;
        let stabs: Vec<SubgroupHandle> = self
            .carrier
            .orbits()
            .into_iter()
            .map(|o| o.stabilizer)
            .collect();
        support_of_stabilizers(prime, &classes.classes, &stabs, !self.category.is_stable() && !self.is_zero())
    }

    /// Quasi-Galois test for a transitive nonzero ring. Outside the stable
    /// world this is normality of the point stabilizer; inside it, the
    /// triple-intersection criterion, with a failing (g, h) pair as witness.
    pub fn is_quasi_galois(&self) -> Result<GaloisReport> {
        if !self.carrier.is_transitive() {
            return Err(Error::NotTransitive);
        }
        if self.is_zero() {
            return Err(Error::ZeroRing);
        }
        let h = self
            .carrier
            .point_stabilizer(self.carrier.orbits()[0].representative);
        let degree = self.degree()?;
        match self.category {
            CategoryTag::Stable { prime } => {
                let witness = stable_galois_witness(&h, prime);
                Ok(GaloisReport {
                    quasi_galois: witness.is_none(),
                    degree,
                    endo_count: None,
                    witness,
                })
            }
            _ => {
                let endo = self.count_ring_endomorphisms()?;
                Ok(GaloisReport {
                    quasi_galois: h.is_normal(),
                    degree,
                    endo_count: Some(endo),
                    witness: None,
                })
            }
        }
    }
}

impl std::fmt::Debug for PermRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PermRing({}, {:?})", self.category.name(), self.carrier)
    }
}

/// p divides |H| and no intersection with a distinct conjugate keeps p.
pub fn strongly_p_embedded(h: &SubgroupHandle, prime: u32) -> bool {
    let p = prime as usize;
    if h.order() % p != 0 {
        return false;
    }
    let group = h.parent().clone();
    let (reps, class_of) = group
        .right_coset_classes(h)
        .expect("subgroup of its own parent");
    let identity_class = class_of[0];
    for (c, &g) in reps.iter().enumerate() {
        if c as u32 == identity_class {
            continue;
        }
        let meet = h.intersect(&h.conjugate_by_id(g)).expect("same parent");
        if meet.order() % p == 0 {
            return false;
        }
    }
    true
}

/// Whether `inner` is strongly p-embedded in `outer`: p divides |inner| and
/// every conjugate by an element of `outer` outside `inner` meets it in
/// p-prime order. Equality of the two subgroups passes vacuously. This is
/// when the coset ring of `inner` becomes the unit in the stable world of
/// `outer`.
pub(crate) fn strongly_p_embedded_in(
    inner: &SubgroupHandle,
    outer: &SubgroupHandle,
    prime: u32,
) -> Result<bool> {
    let p = prime as usize;
    if inner.order() % p != 0 {
        return Ok(false);
    }
    for &k in outer.ids() {
        if inner.contains_id(k) {
            continue;
        }
        let meet = inner.intersect(&inner.conjugate_by_id(k))?;
        if meet.order() % p == 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First (g, h) violating the stable quasi-Galois criterion, scanning
/// ascending ids; None when the ring is quasi-Galois.
fn stable_galois_witness(h: &SubgroupHandle, prime: u32) -> Option<(Permutation, Permutation)> {
    let p = prime as usize;
    let group = h.parent().clone();
    debug_assert!(h.order() % p == 0, "caller rejects zero rings");
    for g in 0..group.order() as u32 {
        if h.contains_id(g) {
            continue;
        }
        let hg = h.conjugate_by_id(g);
        let meet = h.intersect(&hg).expect("same parent");
        for &x in h.ids() {
            if hg.contains_id(x) {
                continue;
            }
            let hgx = h.conjugate_by_id(group.mul(g, x));
            let triple = meet.intersect(&hgx).expect("same parent");
            if triple.order() % p == 0 {
                return Some((group.element(g).clone(), group.element(x).clone()));
            }
        }
    }
    None
}

/// Shared support computation: which classes embed into some stabilizer.
pub(crate) fn support_of_stabilizers(
    prime: u32,
    nontrivial_classes: &[SubgroupHandle],
    stabilizers: &[SubgroupHandle],
    trivial_included: bool,
) -> Result<SupportDescriptor> {
    let mut members = Vec::new();
    for (i, class) in nontrivial_classes.iter().enumerate() {
        let mut hit = false;
        for stab in stabilizers {
            if class.is_subconjugate_to(stab)? {
                hit = true;
                break;
            }
        }
        if hit {
            members.push((i, class.clone()));
        }
    }
    Ok(SupportDescriptor {
        prime,
        trivial_included,
        members,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{klein, stab, sub, symmetric};

    fn coset_ring(category: CategoryTag, g: &FiniteGroup, h: &SubgroupHandle) -> PermRing {
        PermRing::new(category, GSet::cosets(g, h).unwrap()).unwrap()
    }

    #[test]
    fn stable_tag_requires_dividing_prime() {
        let v4 = klein();
        let x = GSet::natural(&v4);
        assert!(PermRing::new(CategoryTag::Stable { prime: 2 }, x.clone()).is_ok());
        assert!(matches!(
            PermRing::new(CategoryTag::Stable { prime: 3 }, x.clone()),
            Err(Error::PrimeDoesNotDivideOrder { prime: 3, order: 4 })
        ));
        assert!(matches!(
            PermRing::new(CategoryTag::Mod { prime: Some(4) }, x),
            Err(Error::NotPrime(4))
        ));
    }

    #[test]
    fn zero_detection_per_category() {
        let s3 = symmetric(3);
        let c2 = sub(&s3, &["(1 2)"]);
        let stable3 = coset_ring(CategoryTag::Stable { prime: 3 }, &s3, &c2);
        assert!(stable3.is_zero()); // 3 does not divide |C2|
        let stable2 = coset_ring(CategoryTag::Stable { prime: 2 }, &s3, &c2);
        assert!(!stable2.is_zero());
        let empty = PermRing::new(CategoryTag::Mod { prime: None }, GSet::empty(&s3)).unwrap();
        assert!(empty.is_zero());
        let modular = coset_ring(CategoryTag::Mod { prime: None }, &s3, &c2);
        assert!(!modular.is_zero());
    }

    #[test]
    fn unit_detection_per_category() {
        let s3 = symmetric(3);
        let c2 = sub(&s3, &["(1 2)"]);
        // C2 is strongly 2-embedded in S3: distinct conjugates meet trivially
        let stable2 = coset_ring(CategoryTag::Stable { prime: 2 }, &s3, &c2);
        assert!(stable2.is_unit().unwrap());
        let modular = coset_ring(CategoryTag::Mod { prime: None }, &s3, &c2);
        assert!(!modular.is_unit().unwrap());
        let whole = coset_ring(CategoryTag::Mod { prime: None }, &s3, &s3.full_subgroup());
        assert!(whole.is_unit().unwrap());
        // transitive but zero: not the unit
        let stable3 = coset_ring(CategoryTag::Stable { prime: 3 }, &s3, &c2);
        assert!(!stable3.is_unit().unwrap());
        // a C3 point stabilizer is normal, so never strongly 3-embedded...
        let c3 = sub(&s3, &["(1 2 3)"]);
        let stable_c3 = coset_ring(CategoryTag::Stable { prime: 3 }, &s3, &c3);
        assert!(!stable_c3.is_unit().unwrap());
        let union = GSet::natural(&s3).disjoint_union(&GSet::one_point(&s3)).unwrap();
        let non_transitive = PermRing::new(CategoryTag::Mod { prime: None }, union).unwrap();
        assert!(matches!(non_transitive.is_unit(), Err(Error::NotTransitive)));
    }

    #[test]
    fn factors_drop_dead_orbits_in_stable() {
        let s3 = symmetric(3);
        let c2 = sub(&s3, &["(1 2)"]);
        let c3 = sub(&s3, &["(1 2 3)"]);
        let x = GSet::cosets(&s3, &c2)
            .unwrap()
            .disjoint_union(&GSet::cosets(&s3, &c3).unwrap())
            .unwrap();
        let modular = PermRing::new(CategoryTag::Mod { prime: None }, x.clone()).unwrap();
        assert_eq!(modular.indecomposable_factors().unwrap().len(), 2);
        let stable2 = PermRing::new(CategoryTag::Stable { prime: 2 }, x.clone()).unwrap();
        let factors = stable2.indecomposable_factors().unwrap();
        assert_eq!(factors.len(), 1); // the C3 orbit dies at p = 2
        assert_eq!(factors[0].carrier().size(), 3);
        let stable3 = PermRing::new(CategoryTag::Stable { prime: 3 }, x).unwrap();
        assert_eq!(stable3.indecomposable_factors().unwrap().len(), 1);
    }

    #[test]
    fn endomorphism_counts() {
        let s4 = symmetric(4);
        let h = stab(&s4, 3);
        let ring = coset_ring(CategoryTag::Derived { prime: None }, &s4, &h);
        assert_eq!(ring.count_ring_endomorphisms().unwrap(), 1);
        let v4 = sub(&s4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let normal_ring = coset_ring(CategoryTag::Mod { prime: None }, &s4, &v4);
        assert_eq!(normal_ring.count_ring_endomorphisms().unwrap(), 6);
        let stable = coset_ring(CategoryTag::Stable { prime: 2 }, &s4, &h);
        assert!(matches!(
            stable.count_ring_endomorphisms(),
            Err(Error::UnsupportedCategory)
        ));
    }

    #[test]
    fn support_examples() {
        let s4 = symmetric(4);
        let h = stab(&s4, 3);
        let modular = coset_ring(CategoryTag::Mod { prime: Some(2) }, &s4, &h);
        let supp = modular.support().unwrap();
        assert!(supp.trivial_included);
        assert_eq!(supp.members.len(), 1); // only the transposition class
        assert_eq!(supp.members[0].1.order(), 2);

        let unit = coset_ring(CategoryTag::Mod { prime: Some(2) }, &s4, &s4.full_subgroup());
        let unit_supp = unit.support().unwrap();
        assert_eq!(unit_supp.members.len(), 4);
        assert!(supp.is_subset_of(&unit_supp));

        let c3 = sub(&s4, &["(1 2 3)"]);
        let zero = coset_ring(CategoryTag::Stable { prime: 2 }, &s4, &c3);
        assert!(zero.is_zero());
        let zero_supp = zero.support().unwrap();
        assert!(!zero_supp.trivial_included);
        assert!(zero_supp.members.is_empty());

        let no_prime = coset_ring(CategoryTag::Mod { prime: None }, &s4, &h);
        assert!(matches!(no_prime.support(), Err(Error::PrimeRequired)));
    }

    #[test]
    fn quasi_galois_in_derived_is_normality() {
        let s4 = symmetric(4);
        let v4 = sub(&s4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let normal_ring = coset_ring(CategoryTag::Derived { prime: None }, &s4, &v4);
        let report = normal_ring.is_quasi_galois().unwrap();
        assert!(report.quasi_galois);
        assert_eq!(report.degree, 6);
        assert_eq!(report.endo_count, Some(6));

        let h = stab(&s4, 3);
        let report = coset_ring(CategoryTag::Derived { prime: None }, &s4, &h)
            .is_quasi_galois()
            .unwrap();
        assert!(!report.quasi_galois);
        assert_eq!(report.degree, 4);
        assert_eq!(report.endo_count, Some(1));
    }

    #[test]
    fn quasi_galois_in_stable() {
        // normal subgroup: the condition is vacuous
        let v4 = klein();
        let h = sub(&v4, &["(1 2)"]);
        let ring = coset_ring(CategoryTag::Stable { prime: 2 }, &v4, &h);
        let report = ring.is_quasi_galois().unwrap();
        assert!(report.quasi_galois);
        assert!(report.witness.is_none());
        assert_eq!(report.degree, 2);

        // point stabilizer in S4: every H with g outside meets its conjugate
        // in a strongly 2-embedded transposition subgroup, so every triple
        // intersection is a stabilizer of three distinct points, hence
        // trivial, and the criterion holds
        let s4 = symmetric(4);
        let s3 = stab(&s4, 3);
        let ring = coset_ring(CategoryTag::Stable { prime: 2 }, &s4, &s3);
        let report = ring.is_quasi_galois().unwrap();
        assert!(report.quasi_galois);
        assert!(report.witness.is_none());
        assert_eq!(report.degree, 2);

        // a Sylow 2-subgroup of S4 fails: the Klein four-group of double
        // transpositions is normal and sits inside every triple intersection
        let d8 = sub(&s4, &["(1 2 3 4)", "(1 3)"]);
        assert_eq!(d8.order(), 8);
        let ring = coset_ring(CategoryTag::Stable { prime: 2 }, &s4, &d8);
        let report = ring.is_quasi_galois().unwrap();
        assert!(!report.quasi_galois);
        let (g, x) = report.witness.expect("failing pair");
        // verify the witness violates the criterion directly
        let hg = d8.conjugate(&g).unwrap();
        assert!(!d8.contains(&g));
        assert!(d8.contains(&x) && !hg.contains(&x));
        let gid = s4.id_of(&g).unwrap();
        let xid = s4.id_of(&x).unwrap();
        let hgx = d8.conjugate_by_id(s4.mul(gid, xid));
        let triple = d8.intersect(&hg).unwrap().intersect(&hgx).unwrap();
        assert_eq!(triple.order() % 2, 0);

        // zero rings are rejected
        let c3 = sub(&s4, &["(1 2 3)"]);
        let zero = coset_ring(CategoryTag::Stable { prime: 2 }, &s4, &c3);
        assert!(matches!(zero.is_quasi_galois(), Err(Error::ZeroRing)));
    }
}
