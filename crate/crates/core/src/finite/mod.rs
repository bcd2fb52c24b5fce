//! Explicit finite pseudo-trees and exhaustive oracles for the fan and
//! ultrafilter machinery used by the symbolic calculators.
//!
//! Every finite directed set has a maximum, so every ultrafilter here has
//! Tukey type 1. The oracles check structure instead: how approximate
//! successors group into fans, and how ultrafilters of the cone algebra
//! correspond to initial chains.

mod bridge;
mod generate;
mod oracles;
mod poset;

pub use bridge::{bridge_ptree, bridge_suite, bridge_tree, lower_ptree, lower_tree, tree_term_from_parents, BridgeReport, BridgeSuiteReport};
pub use generate::{canonical, rooted_trees_up_to, Parents};
pub use oracles::{
    fan_invariance_oracle, fan_invariance_poset, stone_correspondence_oracle, stone_suite, FanOracleReport, StoneReport, StoneSuiteReport,
    Violation, FAN_ORACLE_DEFAULT_N, FAN_ORACLE_MAX_N, STONE_MAX_N,
};
pub use poset::{approx_successor_sets, initial_chains, lambda_fan_finite, FiniteFan, FinitePoset, Set, MAX_ELEMENTS};
