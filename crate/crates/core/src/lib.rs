//! Path-degree-sequence invariants of graphs, with closed forms and
//! reconstruction for starlike and generalized starlike trees.

pub mod cli;
pub mod error;
pub mod family;
pub mod generalized;
pub mod graph;
pub mod invariants;
pub mod reconstruct;
pub mod starlike;

pub use error::{Error, Result};
pub use family::{generalized_family, partitions, starlike_family, TreeSpec};
pub use generalized::{
    generalized_census, generalized_class_counts, generalized_invariant, generalized_mu,
    realize_generalized, GenClassId, GenStarlikeSpec, GeneralizedDoc,
};
pub use graph::{
    enumerate_paths, for_each_path, longest_path_length, path_census, path_censuses, Budget,
    Census, Graph, PathClass, DEFAULT_BUDGET,
};
pub use invariants::{
    builtin, check_symmetry, evaluate_invariant, invariant_profile, parse_index, weighted_sum,
    InvariantFunction, InvariantProfile, Registry,
};
pub use reconstruct::{
    approx_eq, check_t7_conditions, check_t8_conditions, distinguish, reconstruct_generalized,
    reconstruct_starlike, survey_distinguishability, ConditionOutcome, ConditionReport,
    Distinction, GeneralizedReconstruction, ReconstructionResult, SurveyFamily, SurveyReport,
    Theorem, DEFAULT_TOL,
};
pub use starlike::{
    mu_coefficient, realize_starlike, starlike_census, starlike_class_counts, starlike_invariant,
    starlike_profile, tail_coefficients, BranchDoc, CensusClassId, StarlikeDoc, StarlikeSpec,
    TailCoefficients,
};
