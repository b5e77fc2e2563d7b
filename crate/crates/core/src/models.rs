//! Word-level functional models of the approximate adders.
//!
//! Every model keeps the upper `n - m` bits exact: the MSM adds the upper
//! operand halves plus a carry speculated from the low `m` bits. Only the
//! LSM sum bits and the speculated carry differ between kinds.

use crate::arith::{check_widths, exact_add, low_mask, shr, AddResult, Word};
use crate::config::{validate_config, AdderConfig, AdderKind};
use crate::error::Result;

#[inline]
fn bit(x: u64, i: u32) -> u64 {
    (x >> i) & 1
}

/// Approximate LSM sum bits and the carry handed to the MSM.
///
/// `a` and `b` hold only the low `m` bits; `m >= 1` and the config is valid.
#[inline]
pub(crate) fn lsm(kind: AdderKind, m: u32, k: u32, a: u64, b: u64) -> (u64, u64) {
    let top = m - 1;
    match kind {
        AdderKind::Exact => {
            let s = a as u128 + b as u128;
            ((s as u64) & low_mask(m), (s >> m) as u64)
        }
        AdderKind::Loa => (a | b, bit(a & b, top)),
        AdderKind::Loawa => (a | b, 0),
        AdderKind::Passthrough => (a, 0),
        AdderKind::Eta => {
            let generate = a & b;
            if generate == 0 {
                (a ^ b, 0)
            } else {
                // Everything at and below the highest (1,1) pair is forced to 1.
                let tail = low_mask(64 - generate.leading_zeros());
                (((a ^ b) & !tail) | tail, 0)
            }
        }
        AdderKind::Oloca => (((a | b) & !low_mask(k)) | low_mask(k), bit(a & b, top)),
        AdderKind::Haloc | AdderKind::Herloa | AdderKind::Mherloa => {
            let (a1, b1) = (bit(a, top), bit(b, top));
            let (a0, b0) = (bit(a, top - 1), bit(b, top - 1));
            let or_row = (a | b) & low_mask(m - 2);
            let s_top = (a1 ^ b1) | (a0 & b0);
            let (s_next, or_row) = if kind == AdderKind::Haloc {
                (a0 ^ b0, or_row)
            } else {
                // Hybrid error reduction: when the (m-2) pair generates a carry
                // but the (m-1) pair only propagates it, keep S_{m-2} high, and
                // raise S_{m-3} whenever the (m-1) pair propagates.
                let reduce = a0 & b0 & (a1 ^ b1);
                let or_row = if m >= 3 {
                    or_row | ((a1 ^ b1) << (m - 3))
                } else {
                    or_row
                };
                ((a0 ^ b0) | reduce, or_row)
            };
            let sum = low_mask(k) | or_row | (s_next << (m - 2)) | (s_top << top);
            (sum, a1 & b1)
        }
    }
}

/// Unchecked core of [`approx_add`]; `cfg` must be valid and `a`, `b` masked to `cfg.n`.
#[inline]
pub fn approx_add_raw(cfg: &AdderConfig, a: u64, b: u64) -> u128 {
    let m = cfg.m;
    if cfg.is_exact() {
        return a as u128 + b as u128;
    }
    let lo_mask = low_mask(m);
    let (lo, cin) = lsm(cfg.kind, m, cfg.k, a & lo_mask, b & lo_mask);
    let hi = shr(a, m) as u128 + shr(b, m) as u128 + cin as u128;
    (hi << m) | lo as u128
}

/// Approximate sum of `a` and `b` under `cfg`, carry-out retained as bit `n`.
pub fn approx_add(cfg: &AdderConfig, a: Word, b: Word) -> Result<AddResult> {
    let cfg = validate_config(*cfg)?;
    check_widths(a, b, cfg.n)?;
    if cfg.is_exact() {
        return exact_add(a, b);
    }
    Ok(AddResult::new(
        approx_add_raw(&cfg, a.value(), b.value()),
        cfg.n,
    ))
}

/// True when the model is symmetric in its operands.
pub const fn kind_is_commutative(kind: AdderKind) -> bool {
    !matches!(kind, AdderKind::Passthrough)
}

/// One row of the two-MSB handling table: bits `[A_{m-1}, A_{m-2}]`,
/// `[B_{m-1}, B_{m-2}]`, and the 3-bit accurate and approximate sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruthTableRow {
    pub a_bits: u8,
    pub b_bits: u8,
    pub accurate: u8,
    pub approx: u8,
    pub erroneous: bool,
}

impl TruthTableRow {
    /// Rows with `a_bits >= b_bits` form the commutatively distinct subset.
    pub fn is_canonical(&self) -> bool {
        self.a_bits >= self.b_bits
    }
}

/// All 16 ordered rows for `kind` at `n = m = 2`, `k = 0`.
pub fn lsm_truth_table(kind: AdderKind) -> Vec<TruthTableRow> {
    let m = if kind == AdderKind::Exact { 0 } else { 2 };
    let cfg = AdderConfig {
        kind,
        n: 2,
        m,
        k: 0,
    };
    let mut rows = Vec::with_capacity(16);
    for a in 0..4u64 {
        for b in 0..4u64 {
            let accurate = (a + b) as u8;
            let approx = approx_add_raw(&cfg, a, b) as u8;
            rows.push(TruthTableRow {
                a_bits: a as u8,
                b_bits: b as u8,
                accurate,
                approx,
                erroneous: accurate != approx,
            });
        }
    }
    rows
}

/// The ten commutatively distinct rows, ordered as A ascending then B ascending.
pub fn canonical_truth_table(kind: AdderKind) -> Vec<TruthTableRow> {
    lsm_truth_table(kind)
        .into_iter()
        .filter(TruthTableRow::is_canonical)
        .collect()
}
