//! Compressed self-index for highly repetitive texts.
//!
//! The text is parsed into LZ77 or LZ-End phrases and indexed with two
//! PATRICIA tries, a wavelet-tree grid connecting them, and a structure over
//! the phrase sources that propagates occurrences. The index replaces the
//! text: it answers `locate`, `exists` and `extract` on its own.

pub mod corpus;
pub mod error;
pub mod index;
pub mod io;
pub mod parsing;
pub mod succinct;
pub mod text;

pub use error::{Error, Result};

pub use index::{build_index, OccKind, Occurrence, SelfIndex};
pub use parsing::{parse, ParseKind, Parsing, Phrase};
pub use text::Text;
