//! Hereditarily finite sets, well-founded extensional codes, the `Cod` map
//! and its canonical section.

pub mod hfset;
pub mod layout;
pub mod literal;
pub mod pairing;
pub mod wfe;

pub use hfset::{HfParseError, HfSet};
pub use layout::{layout_exemplar, layout_mutations, pmax_layout_check, LayoutReport, LayoutViolation};
pub use literal::{parse_codec_literal, CodecLiteral, LiteralError};
pub use pairing::{pair, unpair};
pub use wfe::{
    check_wfe, cod_decode, cod_encode, height, mostowski_collapse, CodFlag, CodeError, CollapseResult, Decoded,
    WfeCode, WfeError,
};
