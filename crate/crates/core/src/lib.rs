//! Bit-accurate emulation and evaluation of lower-part approximate adders.
//!
//! An N-bit approximate adder splits each operand into an exact upper part
//! (the most significant module, MSM) and an approximate `m`-bit lower part
//! (the least significant module, LSM). This crate provides:
//!
//! * word-level functional models of LOA, LOAWA, a passthrough adder, ETA,
//!   OLOCA, HERLOA, M-HERLOA and HALOC-AxA ([`models`]),
//! * gate-level netlists of the same designs, a netlist simulator and a
//!   transistor-count estimator ([`netlist`]),
//! * exhaustive and Monte Carlo error statistics ([`metrics`]),
//! * a fixed-point 2-D FFT/IFFT image pipeline in which every addition goes
//!   through a chosen adder, with PSNR/SSIM scoring ([`image`]),
//! * report rows and CSV/JSON emitters used by the `axa` binary ([`report`]).
//!
//! Data-parallel loops run on rayon when the `parallel` feature is enabled
//! (the default); every parallel path has a sequential twin selected with
//! [`Execution`], and both produce bit-identical results.

pub mod arith;
pub mod config;
pub mod error;
pub mod exec;
pub mod image;
pub mod metrics;
pub mod models;
pub mod netlist;
pub mod report;

pub use arith::{exact_add, split_operand, AddResult, Word};
pub use config::{validate_config, AdderConfig, AdderKind};
pub use error::{Error, Result};
pub use exec::Execution;
pub use metrics::{error_distance, exhaustive_lsm_stats, monte_carlo_stats, ErrorStats, StatsMode};
pub use models::{approx_add, kind_is_commutative, lsm_truth_table, TruthTableRow};
