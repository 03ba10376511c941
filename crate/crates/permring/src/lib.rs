//! Commutative separable ring objects modeled as finite G-sets.
//!
//! A subgroup H of a finite permutation group G determines the coset ring
//! k(G/H), a separable commutative algebra in the module category of G over a
//! field of characteristic p. This crate computes the invariants of that ring
//! that survive purely combinatorially: splitting towers built from tuples of
//! pairwise-distinct cosets, tower degrees in the module, derived, and stable
//! settings, quasi-Galois detection with explicit witnesses, quasi-Galois
//! closures, supports along elementary abelian p-subgroups, and splitting
//! relations between rings.
//!
//! Everything is exact integer combinatorics on permutation groups of order at
//! most [`DEFAULT_ORDER_BOUND`]; no linear algebra over k is performed, and no
//! randomness is involved. Independent reference routes for the headline
//! quantities live in [`oracle`], and [`selftest`] wires them into a
//! configurable battery.

pub mod error;
pub mod group;
pub mod gset;
pub mod oracle;
pub mod parse;
pub mod perm;
pub mod report;
pub mod ring;
pub mod selftest;
pub mod tower;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use group::{
    DoubleCosetDecomposition, ElementaryAbelianClassList, FiniteGroup, SubgroupHandle,
    DEFAULT_ORDER_BOUND,
};
pub use gset::{GSet, Orbit, DEFAULT_POINT_BUDGET};
pub use oracle::{
    all_subgroups, oracle_degree_stable, oracle_gmap_count, oracle_normal_core,
    oracle_product_orbits, CORE_ORDER_BUDGET, GMAP_BUDGET,
};
pub use parse::{GroupSpec, SubgroupKind, SubgroupSpec, MAX_FAMILY_PARAMETER};
pub use perm::Permutation;
pub use report::{run_report, AnalysisReport, OracleCheck};
pub use ring::{strongly_p_embedded, CategoryTag, GaloisReport, PermRing, SupportDescriptor};
pub use selftest::{run_selftest, BatteryCheck, SelftestConfig};
pub use tower::{ClosureReport, TowerLevel, TowerReport, TupleClass};
