//! The forcing P_A of finite literal sets realized in a class, ordered by
//! reverse inclusion, and the construction of maximal consistent sets by
//! meeting dense sets.

pub mod construction;
pub mod dense;
pub mod oracle;

pub use construction::{completeness, run_construction, CompletenessReport, Schedule, SigmaSet, Trace, TraceStep};
pub use dense::{
    decision_dense_sets, dense_below, dense_sets_from_theory, refine_to_meet, DenseKind, DenseSpec, Predicate,
    Refinement,
};
pub use oracle::{is_condition, ClassOracle, FiniteClass, ForcingError};
