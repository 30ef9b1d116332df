//! Finite multi-sorted structures: construction, satisfaction, class
//! enumeration and isomorphism.

pub mod enumerate;
pub mod eval;
pub mod iso;
pub mod structure;

pub use enumerate::{enumerate_class, ClassEnumerator, ClassSpec, ClassSpecError, MAX_RELATION_BITS};
pub use eval::{atom_holds, eval, holds_by_containment, literal_holds, realized_literals, EvalError};
pub use iso::{distinguishing_sentence, find_multisorted_iso, merge, merged_signature, MultiMap};
pub use structure::{parse_structure, Elem, MultiStructure, ParsedStructure, StructureError};
