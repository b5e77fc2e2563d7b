//! Report rows and their CSV / JSON renderings.
//!
//! Column order is fixed; every numeric field is printed with 9 significant
//! digits so repeated runs produce byte-identical files.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{Map, Number, Value};

use crate::config::{AdderConfig, AdderKind};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::image::{reconstruct_with, FixedFormat, GrayImage, QualityReport};
use crate::metrics::{exhaustive_lsm_stats_with, monte_carlo_stats_with, MAX_EXHAUSTIVE_LOG2};
use crate::models::canonical_truth_table;
use crate::netlist::{build_netlist, transistor_count, CellCostTable, MsmStyle};

pub const CSV_COLUMNS: [&str; 13] = [
    "kind",
    "n",
    "m",
    "k",
    "med",
    "mred",
    "error_rate",
    "max_ed",
    "transistors",
    "ssim",
    "psnr",
    "energy_fj",
    "normalized_energy",
];

#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub kind: AdderKind,
    pub n: u32,
    pub m: u32,
    pub k: u32,
    pub med: Option<f64>,
    pub mred: Option<f64>,
    pub error_rate: Option<f64>,
    pub max_ed: Option<u128>,
    pub transistors: Option<u64>,
    pub ssim: Option<f64>,
    pub psnr: Option<f64>,
    /// Externally supplied switching energy; never computed here.
    pub energy_fj: Option<f64>,
    pub normalized_energy: Option<f64>,
}

impl ReportRow {
    pub fn new(cfg: &AdderConfig) -> Self {
        ReportRow {
            kind: cfg.kind,
            n: cfg.n,
            m: cfg.m,
            k: cfg.k,
            med: None,
            mred: None,
            error_rate: None,
            max_ed: None,
            transistors: None,
            ssim: None,
            psnr: None,
            energy_fj: None,
            normalized_energy: None,
        }
    }

    pub fn config(&self) -> Result<AdderConfig> {
        AdderConfig::new(self.kind, self.n, self.m, self.k)
    }

    fn cells(&self) -> [Option<String>; 13] {
        let f = |v: Option<f64>| v.map(format_number);
        [
            Some(self.kind.to_string()),
            Some(self.n.to_string()),
            Some(self.m.to_string()),
            Some(self.k.to_string()),
            f(self.med),
            f(self.mred),
            f(self.error_rate),
            self.max_ed.map(|v| v.to_string()),
            self.transistors.map(|v| v.to_string()),
            f(self.ssim),
            f(self.psnr),
            f(self.energy_fj),
            f(self.normalized_energy),
        ]
    }
}

/// Formats with 9 significant digits, trailing zeros trimmed; scientific
/// notation outside `[1e-4, 1e9)`.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{x:.8e}");
        let (mantissa, exponent) = s.split_once('e').unwrap_or((&s, "0"));
        let mantissa = if mantissa.contains('.') {
            mantissa.trim_end_matches('0').trim_end_matches('.')
        } else {
            mantissa
        };
        format!("{mantissa}e{exponent}")
    }
}

pub fn to_csv(rows: &[ReportRow]) -> String {
    let mut out = CSV_COLUMNS.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row
            .cells()
            .into_iter()
            .map(Option::unwrap_or_default)
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn to_json(rows: &[ReportRow]) -> String {
    let values: Vec<Value> = rows
        .iter()
        .map(|row| {
            let mut obj = Map::new();
            for (i, (col, cell)) in CSV_COLUMNS.iter().zip(row.cells()).enumerate() {
                let v = match cell {
                    None => Value::Null,
                    Some(s) if i == 0 => Value::String(s),
                    Some(s) => s
                        .parse::<u64>()
                        .map(Value::from)
                        .ok()
                        .or_else(|| {
                            s.parse::<f64>()
                                .ok()
                                .and_then(Number::from_f64)
                                .map(Value::Number)
                        })
                        .unwrap_or(Value::String(s)),
                };
                obj.insert((*col).to_string(), v);
            }
            Value::Object(obj)
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&Value::Array(values)).expect("json values serialize");
    s.push('\n');
    s
}

/// Parses a CSV produced by [`to_csv`]. Missing trailing columns read as empty.
pub fn parse_csv(text: &str) -> Result<Vec<ReportRow>> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let Some((_, header)) = lines.next() else {
        return Ok(Vec::new());
    };
    let columns: Vec<&str> = header.split(',').map(str::trim).collect();
    let index = |name: &str| columns.iter().position(|c| *c == name);
    let kind_col = index("kind").ok_or(Error::Parse {
        line: 1,
        reason: "missing `kind` column".into(),
    })?;
    let mut rows = Vec::new();
    for (idx, line) in lines {
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        let err = |reason: String| Error::Parse {
            line: idx + 1,
            reason,
        };
        let cell = |name: &str| {
            index(name)
                .and_then(|i| cells.get(i))
                .copied()
                .filter(|s| !s.is_empty())
        };
        let float = |name: &str| -> Result<Option<f64>> {
            cell(name)
                .map(|s| s.parse::<f64>().map_err(|e| err(format!("{name}: {e}"))))
                .transpose()
        };
        let int = |name: &str| -> Result<Option<u128>> {
            cell(name)
                .map(|s| s.parse::<u128>().map_err(|e| err(format!("{name}: {e}"))))
                .transpose()
        };
        let kind: AdderKind = cells
            .get(kind_col)
            .ok_or_else(|| err("missing kind".into()))?
            .parse()?;
        let width = |name: &str| -> Result<u32> { Ok(int(name)?.unwrap_or(0) as u32) };
        rows.push(ReportRow {
            kind,
            n: width("n")?,
            m: width("m")?,
            k: width("k")?,
            med: float("med")?,
            mred: float("mred")?,
            error_rate: float("error_rate")?,
            max_ed: int("max_ed")?,
            transistors: int("transistors")?.map(|v| v as u64),
            ssim: float("ssim")?,
            psnr: float("psnr")?,
            energy_fj: float("energy_fj")?,
            normalized_energy: float("normalized_energy")?,
        });
    }
    Ok(rows)
}

/// Average switching energy per operation, fJ, keyed by adder kind.
#[derive(Clone, Debug, PartialEq)]
pub struct EnergyTable {
    values: BTreeMap<AdderKind, f64>,
}

impl Default for EnergyTable {
    /// Transistor-level simulation figures for 32-bit adders at 32 nm.
    /// External reference data, not computed by this crate.
    fn default() -> Self {
        use AdderKind::*;
        EnergyTable {
            values: [
                (Exact, 66.25),
                (Loa, 55.05),
                (Loawa, 53.42),
                (Oloca, 51.71),
                (Herloa, 60.04),
                (Mherloa, 52.92),
                (Haloc, 51.45),
            ]
            .into_iter()
            .collect(),
        }
    }
}

impl EnergyTable {
    /// Parses `kind=value_fJ` lines with `#` comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |reason: String| Error::Parse {
                line: idx + 1,
                reason,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected kind=value, got `{line}`")))?;
            let kind: AdderKind = key
                .trim()
                .parse()
                .map_err(|_| err(format!("unknown kind `{}`", key.trim())))?;
            let v: f64 = value
                .trim()
                .parse()
                .map_err(|e| err(format!("bad energy `{}`: {e}", value.trim())))?;
            if !(v.is_finite() && v > 0.0) {
                return Err(err(format!("energy must be positive, got {v}")));
            }
            values.insert(kind, v);
        }
        if values.is_empty() {
            return Err(Error::Parse {
                line: 0,
                reason: "energy file has no entries".into(),
            });
        }
        Ok(EnergyTable { values })
    }

    pub fn get(&self, kind: AdderKind) -> Option<f64> {
        self.values.get(&kind).copied()
    }

    pub fn max(&self) -> f64 {
        self.values.values().copied().fold(f64::MIN, f64::max)
    }
}

/// Joins rows with energies, each normalized to the table maximum.
pub fn tradeoff(rows: &[ReportRow], energy: &EnergyTable) -> Result<Vec<ReportRow>> {
    let peak = energy.max();
    rows.iter()
        .map(|row| {
            let e = energy
                .get(row.kind)
                .ok_or_else(|| Error::MissingEnergy(row.kind.to_string()))?;
            Ok(ReportRow {
                energy_fj: Some(e),
                normalized_energy: Some(e / peak),
                ..row.clone()
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug)]
pub struct AnalyzeOptions {
    pub samples: u64,
    pub seed: u64,
    pub msm: MsmStyle,
    pub exec: Execution,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            samples: 10_000_000,
            seed: 1,
            msm: MsmStyle::Ripple,
            exec: Execution::default(),
        }
    }
}

/// Exhaustive MED / error rate / max ED (sampled when the LSM is too wide to
/// enumerate), Monte Carlo MRED, and transistor count.
pub fn analyze(
    cfg: &AdderConfig,
    costs: &CellCostTable,
    opts: &AnalyzeOptions,
) -> Result<ReportRow> {
    let sampled = monte_carlo_stats_with(cfg, opts.samples, opts.seed, opts.exec)?;
    let base = if 2 * cfg.m <= MAX_EXHAUSTIVE_LOG2 {
        exhaustive_lsm_stats_with(cfg, opts.exec)?
    } else {
        sampled.clone()
    };
    let netlist = build_netlist(cfg, opts.msm)?;
    Ok(ReportRow {
        med: Some(base.med),
        mred: sampled.mred,
        error_rate: Some(base.error_rate),
        max_ed: Some(base.max_ed),
        transistors: Some(transistor_count(&netlist, costs)?),
        ..ReportRow::new(cfg)
    })
}

/// Transistor count only.
pub fn cost_row(cfg: &AdderConfig, costs: &CellCostTable, msm: MsmStyle) -> Result<ReportRow> {
    let netlist = build_netlist(cfg, msm)?;
    Ok(ReportRow {
        transistors: Some(transistor_count(&netlist, costs)?),
        ..ReportRow::new(cfg)
    })
}

/// A design-space sweep: rows sorted by `(m, k)` plus the skipped combinations.
#[derive(Clone, Debug)]
pub struct Sweep {
    pub rows: Vec<ReportRow>,
    pub skipped: Vec<(u32, u32, String)>,
}

pub fn sweep(
    kind: AdderKind,
    n: u32,
    ms: &[u32],
    ks: &[u32],
    costs: &CellCostTable,
    opts: &AnalyzeOptions,
) -> Result<Sweep> {
    let mut pairs: Vec<(u32, u32)> = ms
        .iter()
        .flat_map(|&m| ks.iter().map(move |&k| (m, k)))
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for (m, k) in pairs {
        match AdderConfig::new(kind, n, m, k) {
            Ok(cfg) => rows.push(analyze(&cfg, costs, opts)?),
            Err(e) => skipped.push((m, k, e.to_string())),
        }
    }
    if rows.is_empty() {
        return Err(Error::config(
            "m",
            "sweep range contains no valid configuration",
        ));
    }
    Ok(Sweep { rows, skipped })
}

/// Reconstructs `img` through `cfg` and scores it against the original.
pub fn image_experiment(
    img: &GrayImage,
    cfg: &AdderConfig,
    fmt: FixedFormat,
    exec: Execution,
) -> Result<(GrayImage, QualityReport, ReportRow)> {
    let out = reconstruct_with(img, cfg, fmt, exec)?;
    let quality = QualityReport::compare(img, &out)?;
    let row = ReportRow {
        ssim: Some(quality.ssim),
        psnr: Some(quality.psnr_db),
        ..ReportRow::new(cfg)
    };
    Ok((out, quality, row))
}

fn bits2(v: u8) -> String {
    format!("{v:02b}")
}

fn bits3(v: u8) -> String {
    format!("{v:03b}")
}

/// The ten commutatively distinct two-MSB rows as an aligned text table.
pub fn vectors_text(kind: AdderKind) -> String {
    let rows = canonical_truth_table(kind);
    let mut out = format!("two-MSB LSM handling: {kind}\n");
    let _ = writeln!(
        out,
        "{:<4} {:<4} {:<8} {:<8} erroneous",
        "A", "B", "accurate", "approx"
    );
    for r in &rows {
        let _ = writeln!(
            out,
            "{:<4} {:<4} {:<8} {:<8} {}",
            bits2(r.a_bits),
            bits2(r.b_bits),
            bits3(r.accurate),
            bits3(r.approx),
            if r.erroneous { "yes" } else { "no" }
        );
    }
    let errors = rows.iter().filter(|r| r.erroneous).count();
    let _ = writeln!(out, "erroneous: {errors} of {}", rows.len());
    out
}

pub fn vectors_csv(kind: AdderKind) -> String {
    let mut out = String::from("kind,a,b,accurate,approx,erroneous\n");
    for r in canonical_truth_table(kind) {
        let _ = writeln!(
            out,
            "{kind},{},{},{},{},{}",
            bits2(r.a_bits),
            bits2(r.b_bits),
            bits3(r.accurate),
            bits3(r.approx),
            r.erroneous
        );
    }
    out
}
