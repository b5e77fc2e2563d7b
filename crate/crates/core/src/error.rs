use std::io;

use thiserror::Error;

use crate::image::pgm::PgmError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {field}: {reason}")]
    Config { field: &'static str, reason: String },

    #[error("width mismatch: expected {expected} bits, got {actual}")]
    WidthMismatch { expected: u32, actual: u32 },

    #[error("exhaustive enumeration of 2^{pairs_log2} pairs is too large (limit 2^26); use Monte Carlo sampling")]
    EnumerationTooLarge { pairs_log2: u32 },

    #[error("cell cost table has no entry for {0}")]
    MissingCellCost(String),

    #[error("image dimensions {width}x{height} are not powers of two")]
    NotPowerOfTwo { width: usize, height: usize },

    #[error("image dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),

    #[error("image {width}x{height} is smaller than the {window}x{window} SSIM window")]
    ImageTooSmall {
        width: usize,
        height: usize,
        window: usize,
    },

    #[error("fixed-point format Q{int_bits}.{frac_bits} cannot hold the scaled DC term")]
    FormatTooNarrow { int_bits: u32, frac_bits: u32 },

    #[error(transparent)]
    Pgm(#[from] PgmError),

    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("no energy value for kind {0}")]
    MissingEnergy(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn config(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Config {
            field,
            reason: reason.into(),
        }
    }
}
