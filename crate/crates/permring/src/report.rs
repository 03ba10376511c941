//! Full analysis of one coset ring, in text or canonically ordered JSON.
//!
//! `run_report` resolves the specs, builds the ring, and computes every
//! quantity that is defined in the chosen category; undefined ones become
//! None rather than errors. With oracle checks enabled, the same questions
//! are recomputed along the reference routes and compared.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::SubgroupHandle;
use crate::gset::GSet;
use crate::oracle;
use crate::parse::{GroupSpec, SubgroupSpec};
use crate::ring::{CategoryTag, PermRing};

#[derive(Clone, Debug, Serialize)]
pub struct GroupInfo {
    pub spec: String,
    pub order: usize,
    pub degree: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupInfo {
    pub spec: String,
    pub order: usize,
    pub index: usize,
    pub generators: Vec<String>,
    pub normal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureInfo {
    pub order: usize,
    pub index: usize,
    pub generators: Vec<String>,
    pub witness: Vec<String>,
    pub already_closed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportInfo {
    pub prime: u32,
    pub trivial_included: bool,
    pub class_count: usize,
    pub class_orders: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelInfo {
    pub level: usize,
    pub class_count: usize,
    pub total_size: u64,
    pub stabilizer_orders: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerInfo {
    pub degree: usize,
    pub levels: Vec<LevelInfo>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleCheck {
    pub name: String,
    pub status: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub group: GroupInfo,
    pub subgroup: SubgroupInfo,
    pub category: String,
    pub prime: Option<u32>,
    pub carrier_size: usize,
    pub is_zero: bool,
    pub is_unit: bool,
    pub degree: usize,
    pub endo_count: Option<u64>,
    pub quasi_galois: Option<bool>,
    pub galois_witness: Option<[String; 2]>,
    pub constant_degree: Option<bool>,
    pub closure: Option<ClosureInfo>,
    pub support: Option<SupportInfo>,
    pub tower: Option<TowerInfo>,
    pub oracle_checks: Option<Vec<OracleCheck>>,
    pub timing_ms: u64,
}

impl AnalysisReport {
    /// JSON with keys in sorted order, so identical analyses print
    /// identically.
    pub fn to_json(&self) -> Result<String> {
        let value = serde_json::to_value(self)
            .map_err(|e| Error::Config(format!("serialization failed: {e}")))?;
        serde_json::to_string_pretty(&value)
            .map_err(|e| Error::Config(format!("serialization failed: {e}")))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "group: {} (order {}, degree {})",
            self.group.spec, self.group.order, self.group.degree
        );
        let _ = writeln!(
            out,
            "subgroup: {} (order {}, index {})",
            self.subgroup.spec, self.subgroup.order, self.subgroup.index
        );
        let _ = writeln!(out, "subgroup generators: {}", bracket(&self.subgroup.generators));
        let _ = writeln!(out, "subgroup normal: {}", self.subgroup.normal);
        match self.prime {
            Some(p) => {
                let _ = writeln!(out, "category: {} (p = {})", self.category, p);
            }
            None => {
                let _ = writeln!(out, "category: {}", self.category);
            }
        }
        let _ = writeln!(out, "carrier: {} points", self.carrier_size);
        let _ = writeln!(out, "zero: {}", self.is_zero);
        let _ = writeln!(out, "unit: {}", self.is_unit);
        let _ = writeln!(out, "degree: {}", self.degree);
        match self.endo_count {
            Some(n) => {
                let _ = writeln!(out, "endomorphisms: {n}");
            }
            None => {
                let _ = writeln!(out, "endomorphisms: n/a");
            }
        }
        match (self.quasi_galois, &self.galois_witness) {
            (Some(answer), Some([g, h])) => {
                let _ = writeln!(out, "quasi_galois: {answer} (witness {g}, {h})");
            }
            (Some(answer), None) => {
                let _ = writeln!(out, "quasi_galois: {answer}");
            }
            _ => {
                let _ = writeln!(out, "quasi_galois: n/a");
            }
        }
        match self.constant_degree {
            Some(c) => {
                let _ = writeln!(out, "constant_degree: {c}");
            }
            None => {
                let _ = writeln!(out, "constant_degree: n/a");
            }
        }
        match &self.closure {
            Some(c) => {
                let _ = writeln!(
                    out,
                    "closure: order {}, index {}, generators {}{}",
                    c.order,
                    c.index,
                    bracket(&c.generators),
                    if c.already_closed { ", already closed" } else { "" }
                );
                let _ = writeln!(out, "closure witness: {}", bracket(&c.witness));
            }
            None => {
                let _ = writeln!(out, "closure: n/a");
            }
        }
        match &self.support {
            Some(s) => {
                let trivial = if s.trivial_included { ", with trivial class" } else { "" };
                let _ = writeln!(
                    out,
                    "support: p = {}, {} classes{}, orders {:?}",
                    s.prime, s.class_count, trivial, s.class_orders
                );
            }
            None => {
                let _ = writeln!(out, "support: n/a");
            }
        }
        match &self.tower {
            Some(t) => {
                let _ = writeln!(out, "tower: degree {}", t.degree);
                for level in &t.levels {
                    let _ = writeln!(
                        out,
                        "tower level {}: {} classes, size {}, stabilizer orders {:?}",
                        level.level, level.class_count, level.total_size, level.stabilizer_orders
                    );
                }
            }
            None => {
                let _ = writeln!(out, "tower: omitted (size budget)");
            }
        }
        if let Some(checks) = &self.oracle_checks {
            for check in checks {
                let _ = writeln!(
                    out,
                    "oracle {}: {} ({})",
                    check.name, check.status, check.detail
                );
            }
        }
        let _ = writeln!(out, "timing_ms: {}", self.timing_ms);
        out
    }

    pub fn has_oracle_mismatch(&self) -> bool {
        self.oracle_checks
            .as_ref()
            .map(|checks| checks.iter().any(|c| c.status == "mismatch"))
            .unwrap_or(false)
    }
}

fn bracket(items: &[String]) -> String {
    format!("[{}]", items.join(", "))
}

/// Builds the coset ring of the resolved subgroup and runs the full
/// analysis on it.
pub fn run_report(
    group_spec: &GroupSpec,
    subgroup_spec: &SubgroupSpec,
    category: CategoryTag,
    budget: usize,
    with_oracle: bool,
) -> Result<AnalysisReport> {
    let start = Instant::now();
    let group = group_spec.group();
    let handle = subgroup_spec.resolve(group)?;
    let carrier = GSet::cosets(group, &handle)?;
    let ring = PermRing::new(category, carrier)?;

    let is_zero = ring.is_zero();
    let is_unit = ring.is_unit()?;
    let degree = ring.degree_with(budget)?;

    let endo_count = match ring.count_ring_endomorphisms() {
        Ok(n) => Some(n),
        Err(Error::UnsupportedCategory) | Err(Error::CountOverflow) => None,
        Err(e) => return Err(e),
    };

    let (quasi_galois, galois_witness) = match ring.is_quasi_galois() {
        Ok(report) => (
            Some(report.quasi_galois),
            report
                .witness
                .map(|(g, h)| [g.cycle_string(), h.cycle_string()]),
        ),
        Err(Error::ZeroRing) => (None, None),
        Err(e) => return Err(e),
    };

    let constant_degree = match ring.has_constant_degree_with(budget) {
        Ok(c) => Some(c),
        Err(Error::PrimeRequired) => None,
        Err(e) => return Err(e),
    };

    let closure = match ring.quasi_galois_closure_with(budget) {
        Ok(report) => Some(ClosureInfo {
            order: report.stabilizer.order(),
            index: report.stabilizer.index(),
            generators: report.stabilizer.generator_cycles(),
            witness: report
                .tuple_witness
                .iter()
                .map(|w| w.cycle_string())
                .collect(),
            already_closed: report.stabilizer == handle,
        }),
        Err(Error::ZeroRing) => None,
        Err(e) => return Err(e),
    };

    let support = match ring.support() {
        Ok(s) => Some(SupportInfo {
            prime: s.prime,
            trivial_included: s.trivial_included,
            class_count: s.class_count(),
            class_orders: s.members.iter().map(|(_, h)| h.order()).collect(),
        }),
        Err(Error::PrimeRequired) => None,
        Err(e) => return Err(e),
    };

    let tower = match ring.splitting_tower_with(budget) {
        Ok(t) => Some(TowerInfo {
            degree: t.degree,
            levels: t
                .levels
                .iter()
                .map(|l| LevelInfo {
                    level: l.level,
                    class_count: l.classes.len(),
                    total_size: l.total_size,
                    stabilizer_orders: l.stabilizer_orders(),
                })
                .collect(),
        }),
        Err(Error::SizeBudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };

    let oracle_checks = if with_oracle {
        Some(oracle_checks(&ring, &handle, degree, endo_count, budget)?)
    } else {
        None
    };

    Ok(AnalysisReport {
        group: GroupInfo {
            spec: group_spec.text().to_string(),
            order: group.order(),
            degree: group.degree(),
        },
        subgroup: SubgroupInfo {
            spec: subgroup_spec.text().to_string(),
            order: handle.order(),
            index: handle.index(),
            generators: handle.generator_cycles(),
            normal: handle.is_normal(),
        },
        category: category.name().to_string(),
        prime: category.prime(),
        carrier_size: ring.carrier().size(),
        is_zero,
        is_unit,
        degree,
        endo_count,
        quasi_galois,
        galois_witness,
        constant_degree,
        closure,
        support,
        tower,
        oracle_checks,
        timing_ms: start.elapsed().as_millis() as u64,
    })
}

/// Recomputes key answers along the reference routes and compares.
fn oracle_checks(
    ring: &PermRing,
    handle: &SubgroupHandle,
    degree: usize,
    endo_count: Option<u64>,
    budget: usize,
) -> Result<Vec<OracleCheck>> {
    let mut checks = Vec::new();
    let group = ring.group();
    let carrier = ring.carrier();

    match ring.category() {
        CategoryTag::Stable { prime } => {
            let reference = oracle::oracle_degree_stable(group, handle, prime)?;
            checks.push(compare_check(
                "degree",
                degree as u64,
                reference as u64,
            ));
        }
        _ => checks.push(OracleCheck {
            name: "degree".into(),
            status: "skipped".into(),
            detail: "reference covers the stable category".into(),
        }),
    }

    let square = carrier.size().checked_mul(carrier.size());
    if square.map(|s| s <= budget).unwrap_or(false) {
        let product = carrier.product(carrier)?;
        let mut library: Vec<(usize, usize)> = product
            .orbits()
            .iter()
            .map(|o| (o.size, o.stabilizer.order()))
            .collect();
        library.sort_unstable();
        let reference = oracle::oracle_product_orbits(carrier, carrier)?;
        checks.push(if library == reference {
            OracleCheck {
                name: "product-orbits".into(),
                status: "ok".into(),
                detail: format!("{} orbits", reference.len()),
            }
        } else {
            OracleCheck {
                name: "product-orbits".into(),
                status: "mismatch".into(),
                detail: format!("library {library:?}, reference {reference:?}"),
            }
        });

        let decomposition = group.double_cosets(handle, handle)?;
        let mut mackey: Vec<usize> = decomposition
            .mackey_stabilizers()
            .iter()
            .map(|s| s.order())
            .collect();
        mackey.sort_unstable();
        let mut reference_orders: Vec<usize> = reference.iter().map(|&(_, s)| s).collect();
        reference_orders.sort_unstable();
        checks.push(if mackey == reference_orders {
            OracleCheck {
                name: "mackey-stabilizers".into(),
                status: "ok".into(),
                detail: format!("orders {mackey:?}"),
            }
        } else {
            OracleCheck {
                name: "mackey-stabilizers".into(),
                status: "mismatch".into(),
                detail: format!("library {mackey:?}, reference {reference_orders:?}"),
            }
        });
    } else {
        checks.push(OracleCheck {
            name: "product-orbits".into(),
            status: "skipped".into(),
            detail: "product exceeds the point budget".into(),
        });
    }

    match endo_count {
        Some(count) => match oracle::oracle_gmap_count(carrier, carrier) {
            Ok(reference) => checks.push(compare_check("endomorphisms", count, reference)),
            Err(Error::BudgetExceeded { .. }) => checks.push(OracleCheck {
                name: "endomorphisms".into(),
                status: "skipped".into(),
                detail: "too many candidate maps to enumerate".into(),
            }),
            Err(e) => return Err(e),
        },
        None => checks.push(OracleCheck {
            name: "endomorphisms".into(),
            status: "skipped".into(),
            detail: "endomorphism count is not defined here".into(),
        }),
    }

    match oracle::oracle_normal_core(handle) {
        Ok(reference) => {
            let library = handle.normal_core();
            checks.push(if library == reference {
                OracleCheck {
                    name: "normal-core".into(),
                    status: "ok".into(),
                    detail: format!("order {}", library.order()),
                }
            } else {
                OracleCheck {
                    name: "normal-core".into(),
                    status: "mismatch".into(),
                    detail: format!(
                        "library order {}, reference order {}",
                        library.order(),
                        reference.order()
                    ),
                }
            });
        }
        Err(Error::BudgetExceeded { .. }) => checks.push(OracleCheck {
            name: "normal-core".into(),
            status: "skipped".into(),
            detail: "group too large for subgroup enumeration".into(),
        }),
        Err(e) => return Err(e),
    }

    Ok(checks)
}

fn compare_check(name: &str, library: u64, reference: u64) -> OracleCheck {
    if library == reference {
        OracleCheck {
            name: name.into(),
            status: "ok".into(),
            detail: format!("both {library}"),
        }
    } else {
        OracleCheck {
            name: name.into(),
            status: "mismatch".into(),
            detail: format!("library {library}, reference {reference}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gset::DEFAULT_POINT_BUDGET;

    fn report(
        group: &str,
        sub: &str,
        category: CategoryTag,
        with_oracle: bool,
    ) -> AnalysisReport {
        let g = GroupSpec::parse(group).unwrap();
        let s = SubgroupSpec::parse(sub).unwrap();
        run_report(&g, &s, category, DEFAULT_POINT_BUDGET, with_oracle).unwrap()
    }

    #[test]
    fn stable_flagship_example() {
        let r = report("S4", "stab:4", CategoryTag::Stable { prime: 2 }, true);
        assert_eq!(r.degree, 2);
        assert_eq!(r.quasi_galois, Some(true));
        assert!(r.galois_witness.is_none());
        assert_eq!(r.constant_degree, Some(true));
        let closure = r.closure.as_ref().unwrap();
        assert_eq!(closure.order, 2);
        assert!(!closure.already_closed);
        assert_eq!(r.endo_count, None);
        let tower = r.tower.as_ref().unwrap();
        assert_eq!(
            tower
                .levels
                .iter()
                .map(|l| l.stabilizer_orders.clone())
                .collect::<Vec<_>>(),
            vec![vec![24], vec![6], vec![2]]
        );
        let text = r.to_text();
        assert!(text.contains("closure: order 2"));
        assert!(text.contains("degree: 2"));
        assert!(!r.has_oracle_mismatch());
        for check in r.oracle_checks.as_ref().unwrap() {
            assert_ne!(check.status, "mismatch", "{}: {}", check.name, check.detail);
        }
    }

    #[test]
    fn derived_normal_subgroup_report() {
        let r = report(
            "S4",
            "gens:(1 2)(3 4),(1 3)(2 4)",
            CategoryTag::Derived { prime: Some(2) },
            true,
        );
        assert_eq!(r.degree, 6);
        assert_eq!(r.endo_count, Some(6));
        assert_eq!(r.quasi_galois, Some(true));
        assert!(r.subgroup.normal);
        assert_eq!(r.constant_degree, Some(true));
        let closure = r.closure.as_ref().unwrap();
        assert!(closure.already_closed);
        assert!(!r.has_oracle_mismatch());
    }

    #[test]
    fn zero_ring_report_uses_nulls() {
        let r = report("S4", "gens:(1 2 3)", CategoryTag::Stable { prime: 2 }, false);
        assert!(r.is_zero);
        assert_eq!(r.degree, 0);
        assert_eq!(r.quasi_galois, None);
        assert!(r.closure.is_none());
        assert_eq!(r.constant_degree, Some(true));
        let supp = r.support.as_ref().unwrap();
        assert_eq!(supp.class_count, 0);
        assert!(r.to_text().contains("quasi_galois: n/a"));
    }

    #[test]
    fn json_is_sorted_and_stable() {
        let r = report("S3", "gens:(1 2)", CategoryTag::Mod { prime: Some(2) }, false);
        let json = r.to_json().unwrap();
        let carrier = json.find("\"carrier_size\"").unwrap();
        let degree = json.find("\"degree\"").unwrap();
        let zero = json.find("\"is_zero\"").unwrap();
        assert!(carrier < degree && degree < zero);
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["degree"], 3);
        assert_eq!(parsed["endo_count"], 1);
        assert_eq!(parsed["quasi_galois"], false);
    }

    #[test]
    fn mod_without_prime_leaves_prime_questions_open() {
        let r = report("S4", "stab:4", CategoryTag::Mod { prime: None }, false);
        assert_eq!(r.degree, 4);
        assert_eq!(r.constant_degree, None);
        assert!(r.support.is_none());
        assert_eq!(r.endo_count, Some(1));
        assert_eq!(r.quasi_galois, Some(false));
        assert!(r.closure.is_some());
    }
}
