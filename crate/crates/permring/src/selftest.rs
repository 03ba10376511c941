//! Built-in battery: fixed hand-checked facts plus reference cross-checks
//! over a configurable list of groups.
//!
//! The fixed facts pin down numbers that were worked out by hand once
//! (subgroup censuses, double coset shapes, the flagship ring's behavior)
//! so a regression anywhere in the stack trips a named check. The group
//! battery then replays the oracle comparisons on every listed group.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, DEFAULT_ORDER_BOUND};
use crate::gset::{GSet, DEFAULT_POINT_BUDGET};
use crate::oracle;
use crate::parse::{GroupSpec, SubgroupSpec};
use crate::ring::{CategoryTag, PermRing};

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelftestConfig {
    pub order_bound: Option<usize>,
    pub point_budget: Option<usize>,
    pub battery_groups: Option<Vec<String>>,
}

impl SelftestConfig {
    pub fn from_toml(text: &str) -> Result<SelftestConfig> {
        toml::from_str(text).map_err(|e| Error::Config(format!("bad selftest config: {e}")))
    }
}

#[derive(Clone, Debug)]
pub struct BatteryCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn default_battery() -> Vec<String> {
    ["S3", "S4", "A4", "D4", "D6", "C6", "D4xC2"]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

pub fn run_selftest(config: &SelftestConfig) -> Vec<BatteryCheck> {
    let order_bound = config.order_bound.unwrap_or(DEFAULT_ORDER_BOUND);
    let budget = config.point_budget.unwrap_or(DEFAULT_POINT_BUDGET);
    let battery = config.battery_groups.clone().unwrap_or_else(default_battery);

    let mut checks = vec![
        check("s4-subgroup-census", s4_subgroup_census),
        check("s4-elementary-abelian", s4_elementary_abelian),
        check("s4-double-cosets", s4_double_cosets),
        check("flagship-stable-ring", flagship_stable_ring),
        check("derived-normality", derived_normality),
        check("stable-unit-and-zero", stable_unit_and_zero),
    ];
    for spec in &battery {
        battery_for_group(&mut checks, spec, order_bound, budget);
    }
    checks
}

fn check<F: FnOnce() -> Result<String>>(name: &str, run: F) -> BatteryCheck {
    match run() {
        Ok(detail) => BatteryCheck {
            name: name.to_string(),
            passed: true,
            detail,
        },
        Err(e) => BatteryCheck {
            name: name.to_string(),
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn ensure(condition: bool, message: impl Into<String>) -> Result<()> {
    if condition {
        Ok(())
    } else {
        Err(Error::Config(message.into()))
    }
}

fn s4() -> Result<FiniteGroup> {
    Ok(GroupSpec::parse("S4")?.group().clone())
}

fn resolve(group: &FiniteGroup, spec: &str) -> Result<crate::group::SubgroupHandle> {
    SubgroupSpec::parse(spec)?.resolve(group)
}

/// The symmetric group on four points has thirty subgroups; exactly the
/// trivial one, the diagonal Klein group, the alternating group, and the
/// whole group are normal.
fn s4_subgroup_census() -> Result<String> {
    let g = s4()?;
    let subgroups = oracle::all_subgroups(&g);
    ensure(
        subgroups.len() == 30,
        format!("expected 30 subgroups, found {}", subgroups.len()),
    )?;
    let normal_orders: Vec<usize> = subgroups
        .iter()
        .filter(|s| s.is_normal())
        .map(|s| s.order())
        .collect();
    ensure(
        normal_orders == vec![1, 4, 12, 24],
        format!("normal subgroup orders {normal_orders:?}"),
    )?;
    Ok("30 subgroups, normal orders [1, 4, 12, 24]".into())
}

/// Four classes of nontrivial elementary abelian 2-subgroups (two kinds of
/// involutions, two kinds of Klein groups), one class at p = 3.
fn s4_elementary_abelian() -> Result<String> {
    let g = s4()?;
    let at2 = g.elementary_abelian_classes(2, false)?;
    let orders: Vec<usize> = at2.nontrivial().iter().map(|c| c.order()).collect();
    ensure(orders == vec![2, 2, 4, 4], format!("orders at 2: {orders:?}"))?;
    let at3 = g.elementary_abelian_classes(3, false)?;
    ensure(
        at3.nontrivial().len() == 1,
        format!("classes at 3: {}", at3.nontrivial().len()),
    )?;
    Ok("classes [2, 2, 4, 4] at p = 2, one class at p = 3".into())
}

fn s4_double_cosets() -> Result<String> {
    let g = s4()?;
    let h = resolve(&g, "stab:4")?;
    let decomposition = g.double_cosets(&h, &h)?;
    let mut sizes = decomposition.class_sizes.clone();
    sizes.sort_unstable();
    ensure(sizes == vec![6, 18], format!("double coset sizes {sizes:?}"))?;
    let s3 = GroupSpec::parse("S3")?.group().clone();
    let c2 = resolve(&s3, "gens:(1 2)")?;
    let mut sizes = s3.double_cosets(&c2, &c2)?.class_sizes.clone();
    sizes.sort_unstable();
    ensure(sizes == vec![2, 4], format!("double coset sizes {sizes:?}"))?;
    Ok("[6, 18] for the point stabilizer pair, [2, 4] below".into())
}

/// The stable ring of the point stabilizer at p = 2: degree two,
/// quasi-Galois, constant degree, closure presented by an order-two
/// stabilizer which splits it and is split by it.
fn flagship_stable_ring() -> Result<String> {
    let g = s4()?;
    let h = resolve(&g, "stab:4")?;
    let ring = PermRing::new(CategoryTag::Stable { prime: 2 }, GSet::cosets(&g, &h)?)?;
    ensure(!ring.is_zero(), "ring is unexpectedly zero")?;
    ensure(!ring.is_unit()?, "ring is unexpectedly the unit")?;
    ensure(ring.degree()? == 2, "stable degree is not 2")?;
    let galois = ring.is_quasi_galois()?;
    ensure(galois.quasi_galois, "ring is unexpectedly not quasi-Galois")?;
    ensure(galois.witness.is_none(), "spurious failure witness")?;
    ensure(
        ring.has_constant_degree()?,
        "degree is unexpectedly nonconstant",
    )?;
    let closure = ring.quasi_galois_closure()?;
    ensure(
        closure.stabilizer.order() == 2,
        format!("closure order {}", closure.stabilizer.order()),
    )?;
    ensure(
        closure.closure.splits(&ring)?,
        "closure fails to split the ring",
    )?;
    ensure(
        ring.splits(&closure.closure)?,
        "ring fails to split its closure",
    )?;
    Ok("degree 2, quasi-Galois, closure of order 2 splits it both ways".into())
}

/// Outside the stable category quasi-Galois means normal, and the
/// endomorphism count is the index of the subgroup in its normalizer.
fn derived_normality() -> Result<String> {
    let g = s4()?;
    let v4 = resolve(&g, "core:sylow:2")?;
    let ring = PermRing::new(
        CategoryTag::Derived { prime: None },
        GSet::cosets(&g, &v4)?,
    )?;
    let galois = ring.is_quasi_galois()?;
    ensure(galois.quasi_galois, "normal subgroup ring not quasi-Galois")?;
    ensure(
        galois.endo_count == Some(6),
        format!("endomorphism count {:?}", galois.endo_count),
    )?;
    ensure(galois.degree == 6, "degree is not the index")?;
    let h = resolve(&g, "stab:4")?;
    let ring = PermRing::new(CategoryTag::Derived { prime: None }, GSet::cosets(&g, &h)?)?;
    let galois = ring.is_quasi_galois()?;
    ensure(!galois.quasi_galois, "self-normalizing ring quasi-Galois")?;
    ensure(
        galois.endo_count == Some(1),
        format!("endomorphism count {:?}", galois.endo_count),
    )?;
    Ok("endomorphism counts 6 and 1 match the normalizer indices".into())
}

/// A subgroup of order prime to p gives the zero ring; one whose distinct
/// conjugates meet in p'-order gives the unit.
fn stable_unit_and_zero() -> Result<String> {
    let s3 = GroupSpec::parse("S3")?.group().clone();
    let c2 = resolve(&s3, "gens:(1 2)")?;
    let at2 = PermRing::new(CategoryTag::Stable { prime: 2 }, GSet::cosets(&s3, &c2)?)?;
    ensure(at2.is_unit()?, "expected the unit at p = 2")?;
    ensure(at2.degree()? == 1, "unit must have degree 1")?;
    let at3 = PermRing::new(CategoryTag::Stable { prime: 3 }, GSet::cosets(&s3, &c2)?)?;
    ensure(at3.is_zero(), "expected the zero ring at p = 3")?;
    ensure(at3.degree()? == 0, "zero ring must have degree 0")?;
    Ok("unit at p = 2, zero at p = 3".into())
}

const BATTERY_SUBGROUPS: [&str; 4] = ["gens:", "stab:1", "sylow:2", "sylow:3"];
const BATTERY_PRIMES: [u32; 4] = [2, 3, 5, 7];

fn battery_for_group(checks: &mut Vec<BatteryCheck>, spec: &str, order_bound: usize, budget: usize) {
    let parsed = match GroupSpec::parse_bounded(spec, order_bound) {
        Ok(p) => p,
        Err(e) => {
            checks.push(BatteryCheck {
                name: format!("battery {spec}"),
                passed: false,
                detail: e.to_string(),
            });
            return;
        }
    };
    let group = parsed.group().clone();
    checks.push(check(&format!("degree-reference {spec}"), || {
        degree_reference(&group, budget)
    }));
    checks.push(check(&format!("product-reference {spec}"), || {
        product_reference(&group)
    }));
    checks.push(check(&format!("endomorphism-reference {spec}"), || {
        endomorphism_reference(&group)
    }));
    checks.push(check(&format!("core-reference {spec}"), || {
        core_reference(&group)
    }));
}

/// Library stable degrees against the subset-search reference, across the
/// battery subgroups and primes dividing the order.
fn degree_reference(group: &FiniteGroup, budget: usize) -> Result<String> {
    let mut comparisons = 0;
    for sub_spec in BATTERY_SUBGROUPS {
        let handle = resolve(group, sub_spec)?;
        for prime in BATTERY_PRIMES {
            if group.order() % prime as usize != 0 {
                continue;
            }
            let ring = PermRing::new(
                CategoryTag::Stable { prime },
                GSet::cosets(group, &handle)?,
            )?;
            let library = ring.degree_with(budget)?;
            let reference = oracle::oracle_degree_stable(group, &handle, prime)?;
            ensure(
                library == reference,
                format!("{sub_spec} at p = {prime}: library {library}, reference {reference}"),
            )?;
            comparisons += 1;
        }
    }
    Ok(format!("{comparisons} degree comparisons agree"))
}

fn product_reference(group: &FiniteGroup) -> Result<String> {
    let x = GSet::natural(group);
    let product = x.product(&x)?;
    let mut library: Vec<(usize, usize)> = product
        .orbits()
        .iter()
        .map(|o| (o.size, o.stabilizer.order()))
        .collect();
    library.sort_unstable();
    let reference = oracle::oracle_product_orbits(&x, &x)?;
    ensure(
        library == reference,
        format!("library {library:?}, reference {reference:?}"),
    )?;
    Ok(format!("{} orbits agree", reference.len()))
}

fn endomorphism_reference(group: &FiniteGroup) -> Result<String> {
    let x = GSet::natural(group);
    let library = x.count_equivariant_maps(&x)?;
    match oracle::oracle_gmap_count(&x, &x) {
        Ok(reference) => {
            ensure(
                library == reference,
                format!("library {library}, reference {reference}"),
            )?;
            Ok(format!("both count {library}"))
        }
        Err(Error::BudgetExceeded { .. }) => Ok("skipped: enumeration too large".into()),
        Err(e) => Err(e),
    }
}

fn core_reference(group: &FiniteGroup) -> Result<String> {
    let mut comparisons = 0;
    for sub_spec in BATTERY_SUBGROUPS {
        let handle = resolve(group, sub_spec)?;
        match oracle::oracle_normal_core(&handle) {
            Ok(reference) => {
                let library = handle.normal_core();
                ensure(
                    library == reference,
                    format!(
                        "{sub_spec}: library order {}, reference order {}",
                        library.order(),
                        reference.order()
                    ),
                )?;
                comparisons += 1;
            }
            Err(Error::BudgetExceeded { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(format!("{comparisons} core comparisons agree"))
}
