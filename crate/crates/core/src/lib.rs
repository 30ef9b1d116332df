//! Consistency properties as forcing notions, at desk scale.
//!
//! The crate builds term models of ⋀⋁ theories over finite multi-sorted
//! relational signatures by meeting dense sets of a finite-condition forcing,
//! and provides hereditarily finite codes (well-founded extensional relations,
//! Mostowski collapse, the `Cod` map) used to read such models back as sets.

pub mod certificate;
pub mod codec;
pub mod forcing;
pub mod logic;
pub mod scenario;
pub mod semantics;
pub mod term_model;
