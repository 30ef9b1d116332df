//! Multi-sorted relational signatures and the infinitary formula language.

pub mod axioms;
pub mod classify;
pub mod formula;
pub mod parser;
pub mod signature;

pub use axioms::{equality_axioms, qe_axioms, Axiom, AxiomError, AxiomOrigin, Theory, Witness};
pub use classify::{and_or_clauses, and_or_formula, classify, normalize, Clause, FormKind};
pub use formula::{
    render_formula, well_sorted_check, well_sorted_open, Formula, GroundAtom, Literal, LiteralSet, Polarity,
    SortViolation, Term,
};
pub use parser::{parse_formula, parse_literal, parse_literal_set, parse_open_formula, ParseError};
pub use signature::{ConstId, RelId, RelationDecl, Signature, SignatureBuilder, SignatureError, SortId};
