//! Fixed-width words and the exact reference adder.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_WIDTH: u32 = 64;

/// All-ones mask of the low `bits` bits, saturating at 64.
#[inline]
pub const fn low_mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

#[inline]
pub(crate) const fn shr(value: u64, bits: u32) -> u64 {
    if bits >= 64 {
        0
    } else {
        value >> bits
    }
}

/// An unsigned binary word of 1 to 64 bits. The value is always masked to the width.
///
/// A zero-width word (value 0) only arises as the empty half of
/// [`split_operand`] at a degenerate partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    value: u64,
    width: u32,
}

impl Word {
    pub fn new(value: u64, width: u32) -> Result<Self> {
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::config("width", format!("{width} not in 1..=64")));
        }
        Ok(Word {
            value: value & low_mask(width),
            width,
        })
    }

    /// Builds a word, silently masking. Panics on an out-of-range width.
    pub fn masked(value: u64, width: u32) -> Self {
        assert!(width <= MAX_WIDTH, "word width {width} exceeds 64");
        Word {
            value: value & low_mask(width),
            width,
        }
    }

    pub const fn value(self) -> u64 {
        self.value
    }

    pub const fn width(self) -> u32 {
        self.width
    }

    #[inline]
    pub const fn bit(self, i: u32) -> bool {
        i < self.width && (self.value >> i) & 1 == 1
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}/{}", self.value, self.width)
    }
}

/// An `n`-bit addition result, carrying the MSM carry-out as bit `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AddResult {
    value: u128,
    operand_width: u32,
}

impl AddResult {
    #[inline]
    pub(crate) fn new(value: u128, operand_width: u32) -> Self {
        debug_assert!(value >> (operand_width + 1) == 0);
        AddResult {
            value,
            operand_width,
        }
    }

    /// Sum value, strictly less than `2^(n+1)`.
    pub const fn value(self) -> u128 {
        self.value
    }

    /// Width of the sum, `n + 1`.
    pub const fn width(self) -> u32 {
        self.operand_width + 1
    }

    pub const fn carry_out(self) -> bool {
        (self.value >> self.operand_width) & 1 == 1
    }

    /// The low `n` bits, dropping the carry-out.
    pub fn truncated(self) -> Word {
        Word::masked(self.value as u64, self.operand_width)
    }
}

pub(crate) fn check_widths(a: Word, b: Word, n: u32) -> Result<()> {
    for w in [a.width, b.width] {
        if w != n {
            return Err(Error::WidthMismatch {
                expected: n,
                actual: w,
            });
        }
    }
    Ok(())
}

/// Exact `n`-bit addition with the carry-out retained.
pub fn exact_add(a: Word, b: Word) -> Result<AddResult> {
    check_widths(a, b, a.width)?;
    Ok(AddResult::new(a.value as u128 + b.value as u128, a.width))
}

/// Splits `a` into `(a >> m, a mod 2^m)` as words of width `n - m` and `m`.
pub fn split_operand(a: Word, m: u32) -> Result<(Word, Word)> {
    if m > a.width {
        return Err(Error::config(
            "m",
            format!("split point {m} exceeds word width {}", a.width),
        ));
    }
    let hi = Word::masked(shr(a.value, m), a.width - m);
    let lo = Word::masked(a.value, m);
    Ok((hi, lo))
}
