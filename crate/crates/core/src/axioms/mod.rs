//! Axiom falsifiers, the counterexample registry and the property matrix.
//!
//! The three axioms: strict monotonicity in every distance (duplicates
//! included), uniqueness (replacing a duplicate by a fresh element strictly
//! helps), and continuity. Checkers search for violations; finding none is
//! reported with the probe budget, not as a proof.

mod checks;
pub mod generate;
mod registry;
mod table;
mod verdict;
pub mod witnesses;

pub use checks::{
    check_continuity, check_continuity_with, check_duplicate_placement_invariance, check_monotonicity,
    check_uniqueness, compositions, default_continuity_witnesses, ContinuityConfig, PLACEMENT_TOL, PROBE_N,
    STRICT_MARGIN,
};
pub use generate::PerturbationPlan;
pub use registry::{
    all_cases, registry_case, registry_case_with, CaseReport, Check, CheckResult, Expected, NamedInput, RegistryCase,
    RegistryOptions, CASE_IDS, EXACT_TOL, QUOTED_TOL,
};
pub use table::{
    property_matrix, ExpectedRow, ExpectedTable, Mismatch, PropertyMatrix, PropertyRow, EXPECTED_PROPERTIES_JSON,
};
pub use verdict::{Axiom, AxiomVerdict, Outcome, ProbePair, Witness};

/// Named configurations used by the registry and the targeted witnesses.
pub mod configs {
    pub use super::registry::{
        corners16, corners16_moved, dpp_pair, fifteen_plus_one, grid16, grid16_with_duplicate, opposite_corners16,
        opposite_corners16_moved, paired16, segment, square_cycle, triple, two_blocks,
    };
}
