//! Two's-complement fixed-point values whose additions run through an adder model.

use crate::arith::low_mask;
use crate::config::{validate_config, AdderConfig};
use crate::error::{Error, Result};
use crate::models::approx_add_raw;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FixedFormat {
    pub total_bits: u32,
    pub frac_bits: u32,
}

impl FixedFormat {
    pub fn new(total_bits: u32, frac_bits: u32) -> Result<Self> {
        if !(2..=64).contains(&total_bits) {
            return Err(Error::config(
                "total_bits",
                format!("{total_bits} not in 2..=64"),
            ));
        }
        if frac_bits == 0 || frac_bits >= total_bits {
            return Err(Error::config(
                "frac_bits",
                format!("{frac_bits} not in 1..{total_bits}"),
            ));
        }
        Ok(FixedFormat {
            total_bits,
            frac_bits,
        })
    }

    /// 32-bit words with 15 fractional bits.
    pub fn default_for(total_bits: u32) -> Result<Self> {
        Self::new(total_bits, 15.min(total_bits.saturating_sub(1)))
    }

    pub fn max(&self) -> i64 {
        (low_mask(self.total_bits - 1)) as i64
    }

    pub fn min(&self) -> i64 {
        -self.max() - 1
    }

    pub fn one(&self) -> i64 {
        1i64 << self.frac_bits
    }

    #[inline]
    pub fn saturate(&self, v: i128) -> i64 {
        v.clamp(self.min() as i128, self.max() as i128) as i64
    }

    /// Fixed-point product with round-half-up, saturated.
    #[inline]
    pub fn mul(&self, x: i64, y: i64) -> i64 {
        self.round_shift(x as i128 * y as i128)
    }

    #[inline]
    pub(crate) fn round_shift(&self, v: i128) -> i64 {
        let half = 1i128 << (self.frac_bits - 1);
        self.saturate((v + half) >> self.frac_bits)
    }

    /// Nearest representable value of a real number.
    pub fn from_f64(&self, v: f64) -> i64 {
        self.saturate((v * self.one() as f64).round() as i128)
    }

    pub fn to_f64(&self, v: i64) -> f64 {
        v as f64 / self.one() as f64
    }
}

impl Default for FixedFormat {
    fn default() -> Self {
        FixedFormat {
            total_bits: 32,
            frac_bits: 15,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ComplexFx {
    pub re: i64,
    pub im: i64,
}

/// Signed fixed-point adder backed by an (approximate) adder model.
///
/// Operands are reinterpreted as `n`-bit unsigned words and summed with the
/// model; the model's deviation from the exact sum is applied to the signed
/// sum, which then saturates. Subtraction negates the subtrahend exactly.
#[derive(Clone, Copy, Debug)]
pub struct FixedAdder {
    cfg: AdderConfig,
    fmt: FixedFormat,
    mask: u64,
}

impl FixedAdder {
    pub fn new(cfg: AdderConfig, fmt: FixedFormat) -> Result<Self> {
        let cfg = validate_config(cfg)?;
        if cfg.n != fmt.total_bits {
            return Err(Error::WidthMismatch {
                expected: fmt.total_bits,
                actual: cfg.n,
            });
        }
        Ok(FixedAdder {
            cfg,
            fmt,
            mask: low_mask(cfg.n),
        })
    }

    pub fn format(&self) -> FixedFormat {
        self.fmt
    }

    pub fn config(&self) -> AdderConfig {
        self.cfg
    }

    #[inline]
    pub fn add(&self, x: i64, y: i64) -> i64 {
        let (ux, uy) = (x as u64 & self.mask, y as u64 & self.mask);
        let deviation = if self.cfg.is_exact() {
            0
        } else {
            approx_add_raw(&self.cfg, ux, uy) as i128 - (ux as i128 + uy as i128)
        };
        self.fmt.saturate(x as i128 + y as i128 + deviation)
    }

    #[inline]
    pub fn sub(&self, x: i64, y: i64) -> i64 {
        self.add(x, self.fmt.saturate(-(y as i128)))
    }
}
