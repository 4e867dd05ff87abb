use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("position {pos} out of range (valid: {valid})")]
    OutOfRange { pos: usize, valid: String },
    #[error("input contains the reserved byte 0x00 at offset {0}")]
    ReservedByte(usize),
    #[error("pattern contains the reserved byte 0x00")]
    ReservedInPattern,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("not an index file (bad magic)")]
    BadMagic,
    #[error("unsupported index version {0}")]
    BadVersion(u16),
    #[error("malformed data: {0}")]
    Malformed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range(pos: usize, lo: usize, hi: usize) -> Error {
    Error::OutOfRange { pos, valid: format!("{lo}..={hi}") }
}
