use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("side count {0} is below 3")]
    InvalidSideCount(u32),

    #[error("length must be positive and finite, got {0}")]
    InvalidLength(f64),

    #[error("{what} index {index} out of range 0..{bound}")]
    IndexOutOfRange {
        what: &'static str,
        index: u32,
        bound: u32,
    },

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("degenerate contact configuration: {0}")]
    DegenerateConfiguration(String),

    #[error("invalid contact configuration: {0}")]
    InvalidConfiguration(String),

    #[error("unknown constant `{0}`")]
    UnknownConstant(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("unsupported side-count pair ({0}, {1})")]
    UnsupportedPair(u32, u32),
}

pub(crate) fn check_sides(n: u32) -> Result<()> {
    if n < 3 {
        Err(Error::InvalidSideCount(n))
    } else {
        Ok(())
    }
}
