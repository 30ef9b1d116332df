//! The term model of a maximal consistent set, its well-definedness, the
//! truth lemma for and-or sentences, and the or-and counterexample.

pub mod andor;
pub mod model;
pub mod oror;
pub mod welldefined;

pub use andor::{lemma_check, verify_andor, Evidence, LemmaOutcome, Verdict};
pub use model::{build_term_model, TermModel, TermModelError};
pub use oror::{refute_oror, CounterexampleReport, OrorError, Refutation, MAX_K};
pub use welldefined::{verify_welldefined, Violation, ViolationKind, WellDefinedReport};
