//! Error-distance statistics: exact enumeration over the LSM and seeded
//! Monte Carlo sampling over full-width operands.
//!
//! ED depends only on the low `m` bits of each operand (the MSM and its
//! carry-out are exact given the speculated carry, and the carry depends only
//! on the LSM inputs), so enumerating the `2^(2m)` LSM pairs gives the exact
//! MED and error rate under uniform inputs at any total width.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{check_widths, low_mask, Word};
use crate::config::{validate_config, AdderConfig};
use crate::error::{Error, Result};
use crate::exec::{map_indexed, Execution};
use crate::models::approx_add_raw;

/// Largest `2m` accepted by [`exhaustive_lsm_stats`].
pub const MAX_EXHAUSTIVE_LOG2: u32 = 26;

/// Samples per Monte Carlo chunk; chunk `c` draws from ChaCha8 stream `c`.
pub const SAMPLE_CHUNK: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StatsMode {
    ExhaustiveLsm,
    MonteCarlo,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorStats {
    pub med: f64,
    /// Mean relative ED; absent for exhaustive runs or when every sample had a zero sum.
    pub mred: Option<f64>,
    pub error_rate: f64,
    pub max_ed: u128,
    pub sample_count: u64,
    pub mode: StatsMode,
    pub seed: Option<u64>,
    /// Samples left out of the MRED mean because their accurate sum was 0.
    pub mred_excluded: u64,
    /// Population standard deviation of ED over the samples.
    pub ed_stddev: f64,
}

#[inline]
fn ed_raw(cfg: &AdderConfig, a: u64, b: u64) -> (u128, u128) {
    let exact = a as u128 + b as u128;
    let approx = approx_add_raw(cfg, a, b);
    (exact, exact.abs_diff(approx))
}

/// `|exact(a, b) - approx(a, b)|`.
pub fn error_distance(cfg: &AdderConfig, a: Word, b: Word) -> Result<u128> {
    let cfg = validate_config(*cfg)?;
    check_widths(a, b, cfg.n)?;
    Ok(ed_raw(&cfg, a.value(), b.value()).1)
}

#[derive(Clone, Copy, Default)]
struct Partial {
    count: u64,
    errors: u64,
    ed_sum: u128,
    ed_sq: f64,
    max_ed: u128,
    rel_sum: f64,
    rel_excluded: u64,
}

impl Partial {
    #[inline]
    fn push(&mut self, exact: u128, ed: u128, relative: bool) {
        self.count += 1;
        if ed != 0 {
            self.errors += 1;
            self.ed_sum += ed;
            let e = ed as f64;
            self.ed_sq += e * e;
            self.max_ed = self.max_ed.max(ed);
        }
        if relative {
            if exact == 0 {
                self.rel_excluded += 1;
            } else {
                self.rel_sum += ed as f64 / exact as f64;
            }
        }
    }

    fn merge(mut self, other: &Partial) -> Partial {
        self.count += other.count;
        self.errors += other.errors;
        self.ed_sum += other.ed_sum;
        self.ed_sq += other.ed_sq;
        self.max_ed = self.max_ed.max(other.max_ed);
        self.rel_sum += other.rel_sum;
        self.rel_excluded += other.rel_excluded;
        self
    }

    fn finish(self, mode: StatsMode, seed: Option<u64>) -> ErrorStats {
        let n = self.count as f64;
        let med = self.ed_sum as f64 / n;
        let var = (self.ed_sq / n - med * med).max(0.0);
        let mred = match mode {
            StatsMode::MonteCarlo if self.count > self.rel_excluded => {
                Some(self.rel_sum / (self.count - self.rel_excluded) as f64)
            }
            _ => None,
        };
        ErrorStats {
            med,
            mred,
            error_rate: self.errors as f64 / n,
            max_ed: self.max_ed,
            sample_count: self.count,
            mode,
            seed,
            mred_excluded: self.rel_excluded,
            ed_stddev: var.sqrt(),
        }
    }
}

fn combine(parts: &[Partial]) -> Partial {
    parts.iter().fold(Partial::default(), |acc, p| acc.merge(p))
}

/// Exact MED, error rate and max ED over all `2^(2m)` LSM operand pairs.
pub fn exhaustive_lsm_stats(cfg: &AdderConfig) -> Result<ErrorStats> {
    exhaustive_lsm_stats_with(cfg, Execution::default())
}

pub fn exhaustive_lsm_stats_with(cfg: &AdderConfig, exec: Execution) -> Result<ErrorStats> {
    let cfg = validate_config(*cfg)?;
    if cfg.is_exact() {
        let mut p = Partial::default();
        p.push(0, 0, false);
        return Ok(p.finish(StatsMode::ExhaustiveLsm, None));
    }
    let pairs_log2 = 2 * cfg.m;
    if pairs_log2 > MAX_EXHAUSTIVE_LOG2 {
        return Err(Error::EnumerationTooLarge { pairs_log2 });
    }
    let side = 1u64 << cfg.m;
    let parts = map_indexed(exec, side as usize, |a| {
        let mut p = Partial::default();
        for b in 0..side {
            let (exact, ed) = ed_raw(&cfg, a as u64, b);
            p.push(exact, ed, false);
        }
        p
    });
    Ok(combine(&parts).finish(StatsMode::ExhaustiveLsm, None))
}

/// MED, MRED, error rate and max ED over `samples` uniform operand pairs.
pub fn monte_carlo_stats(cfg: &AdderConfig, samples: u64, seed: u64) -> Result<ErrorStats> {
    monte_carlo_stats_with(cfg, samples, seed, Execution::default())
}

pub fn monte_carlo_stats_with(
    cfg: &AdderConfig,
    samples: u64,
    seed: u64,
    exec: Execution,
) -> Result<ErrorStats> {
    let cfg = validate_config(*cfg)?;
    if samples == 0 {
        return Err(Error::config("samples", "must be at least 1"));
    }
    let mask = low_mask(cfg.n);
    let chunks = samples.div_ceil(SAMPLE_CHUNK);
    let parts = map_indexed(exec, chunks as usize, |c| {
        let c = c as u64;
        let len = SAMPLE_CHUNK.min(samples - c * SAMPLE_CHUNK);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(c);
        let mut p = Partial::default();
        for _ in 0..len {
            let a = rng.next_u64() & mask;
            let b = rng.next_u64() & mask;
            let (exact, ed) = ed_raw(&cfg, a, b);
            p.push(exact, ed, true);
        }
        p
    });
    Ok(combine(&parts).finish(StatsMode::MonteCarlo, Some(seed)))
}

/// Exhaustive and sampled statistics for one comparison-table design.
#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonEntry {
    pub cfg: AdderConfig,
    pub exhaustive: ErrorStats,
    pub sampled: ErrorStats,
}

/// Exhaustive MED plus Monte Carlo MRED for the six approximate designs at
/// `n = 32, m = 10` (`k = 5` where the design has a constant section).
pub fn comparison_error_report(
    samples: u64,
    seed: u64,
    exec: Execution,
) -> Result<Vec<ComparisonEntry>> {
    crate::config::AdderKind::COMPARED
        .iter()
        .map(|&kind| {
            let cfg = AdderConfig::reference(kind);
            Ok(ComparisonEntry {
                cfg,
                exhaustive: exhaustive_lsm_stats_with(&cfg, exec)?,
                sampled: monte_carlo_stats_with(&cfg, samples, seed, exec)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::AdderKind::{self, *};
    use proptest::prelude::*;

    fn cfg(kind: AdderKind, n: u32, m: u32, k: u32) -> AdderConfig {
        AdderConfig::new(kind, n, m, k).unwrap()
    }

    fn ed(c: &AdderConfig, a: u64, b: u64) -> u128 {
        error_distance(c, Word::new(a, c.n).unwrap(), Word::new(b, c.n).unwrap()).unwrap()
    }

    #[test]
    fn error_distance_examples() {
        let e = cfg(Exact, 16, 0, 0);
        assert_eq!(ed(&e, 0xFFFF, 0xFFFF), 0);
        assert_eq!(ed(&cfg(Haloc, 16, 8, 4), 0x6796, 0x6814), 11);
        assert_eq!(ed(&cfg(Haloc, 8, 4, 2), 0x57, 0x2B), 3);
    }

    #[test]
    fn exact_stats_are_zero() {
        for c in [
            cfg(Exact, 32, 0, 0),
            cfg(Haloc, 32, 0, 0),
            cfg(Loa, 8, 0, 0),
        ] {
            let s = exhaustive_lsm_stats(&c).unwrap();
            assert_eq!((s.med, s.error_rate, s.max_ed), (0.0, 0.0, 0));
        }
        let s = monte_carlo_stats(&cfg(Exact, 32, 0, 0), 100_000, 3).unwrap();
        assert_eq!((s.med, s.mred, s.max_ed), (0.0, Some(0.0), 0));
    }

    #[test]
    fn exhaustive_refuses_large_lsm() {
        assert!(matches!(
            exhaustive_lsm_stats(&cfg(Loa, 32, 14, 0)),
            Err(Error::EnumerationTooLarge { pairs_log2: 28 })
        ));
        assert!(exhaustive_lsm_stats(&cfg(Loa, 32, 13, 0)).is_ok());
    }

    /// Brute force over all full 8-bit operand pairs, independent of LSM locality.
    fn brute_force_med(c: &AdderConfig) -> (f64, f64, u128) {
        let (mut sum, mut errs, mut max) = (0u128, 0u64, 0u128);
        for a in 0..256u64 {
            for b in 0..256u64 {
                let exact = (a + b) as i128;
                let approx = approx_add_raw(c, a, b) as i128;
                let d = (exact - approx).unsigned_abs();
                sum += d;
                errs += (d != 0) as u64;
                max = max.max(d);
            }
        }
        (sum as f64 / 65536.0, errs as f64 / 65536.0, max)
    }

    #[test]
    fn exhaustive_lsm_matches_full_brute_force() {
        for kind in AdderKind::ALL {
            for (m, k) in [(4, 0), (4, 2), (6, 3), (8, 0)] {
                let Ok(c) = AdderConfig::new(kind, 8, m, k) else {
                    continue;
                };
                let s = exhaustive_lsm_stats(&c).unwrap();
                let (med, rate, max) = brute_force_med(&c);
                assert_eq!(s.med, med, "{c}");
                assert_eq!(s.error_rate, rate, "{c}");
                assert_eq!(s.max_ed, max, "{c}");
            }
        }
    }

    #[test]
    fn loa_small_med_is_frozen() {
        // Mean |ED| over the 256 LSM pairs of LOA(8,4), counted by hand-enumeration oracle.
        let s = exhaustive_lsm_stats(&cfg(Loa, 8, 4, 0)).unwrap();
        assert_eq!(s.sample_count, 256);
        assert_eq!(s.med, brute_force_med(&cfg(Loa, 8, 4, 0)).0);
        assert!(s.med <= s.max_ed as f64);
    }

    #[test]
    fn monte_carlo_converges_to_exhaustive() {
        let c = cfg(Loa, 8, 4, 0);
        let exact = exhaustive_lsm_stats(&c).unwrap();
        let mc = monte_carlo_stats(&c, 1_000_000, 7).unwrap();
        let se = mc.ed_stddev / (mc.sample_count as f64).sqrt();
        assert!(
            (mc.med - exact.med).abs() <= 3.0 * se,
            "{} vs {}",
            mc.med,
            exact.med
        );
    }

    #[test]
    fn monte_carlo_excludes_zero_sums_from_mred() {
        let c = cfg(Oloca, 1, 1, 1);
        let s = monte_carlo_stats(&c, 10_000, 1).unwrap();
        assert!(s.mred_excluded > 1_000);
        assert!(s.mred.is_some());
        assert!(monte_carlo_stats(&c, 0, 1).is_err());
    }

    #[test]
    fn sequential_and_parallel_agree_bitwise() {
        let c = AdderConfig::reference(Haloc);
        let seq = monte_carlo_stats_with(&c, 300_001, 42, Execution::Sequential).unwrap();
        let par = monte_carlo_stats_with(&c, 300_001, 42, Execution::Parallel).unwrap();
        assert_eq!(seq, par);
        assert_eq!(seq.sample_count, 300_001);
        let c = cfg(Herloa, 16, 8, 0);
        assert_eq!(
            exhaustive_lsm_stats_with(&c, Execution::Sequential).unwrap(),
            exhaustive_lsm_stats_with(&c, Execution::Parallel).unwrap()
        );
    }

    #[test]
    fn stats_invariants_hold() {
        for kind in AdderKind::ALL {
            let c = AdderConfig::reference(kind);
            let s = exhaustive_lsm_stats(&c).unwrap();
            assert!(s.med <= s.max_ed as f64);
            assert_eq!(s.error_rate == 0.0, s.med == 0.0);
            assert_eq!(s.med == 0.0, s.max_ed == 0);
        }
    }

    proptest! {
        #[test]
        fn ed_is_local_to_lsm(a in any::<u32>(), b in any::<u32>(), idx in 0usize..9) {
            let c = AdderConfig::reference(AdderKind::ALL[idx]);
            let lo = low_mask(c.m);
            let (a, b) = (a as u64, b as u64);
            prop_assert_eq!(ed_raw(&c, a, b).1, ed_raw(&c, a & lo, b & lo).1);
        }
    }
}
