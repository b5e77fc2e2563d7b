use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use approx_adder::image::{load_pgm, save_pgm, FixedFormat};
use approx_adder::netlist::{build_netlist, CellCostTable, MsmStyle};
use approx_adder::report::{self, AnalyzeOptions, EnergyTable, ReportRow};
use approx_adder::{AdderConfig, AdderKind, Execution};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Approximate adder design-space toolkit.
#[derive(Parser)]
#[command(name = "axa", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Error statistics and transistor count for one configuration.
    Analyze {
        #[command(flatten)]
        adder: AdderArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long, default_value = "ripple")]
        msm: MsmStyle,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Analyze every valid (m, k) pair from two lists.
    Sweep {
        #[arg(long)]
        kind: AdderKind,
        #[arg(long, default_value_t = 32)]
        n: u32,
        /// Comma-separated values or inclusive ranges, e.g. `8,10,12` or `6-12`.
        #[arg(long, value_parser = parse_list)]
        m: WidthList,
        #[arg(long, value_parser = parse_list)]
        k: WidthList,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Two-MSB truth table of the lower-part rule.
    Vectors {
        #[arg(long)]
        kind: AdderKind,
        #[arg(long, value_enum, default_value_t = VectorFormat::Text)]
        format: VectorFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Transistor count from a cell cost table.
    Cost {
        #[command(flatten)]
        adder: AdderArgs,
        /// `OP=count` overrides applied on top of the default table.
        #[arg(long)]
        cells: Option<PathBuf>,
        #[arg(long, default_value = "ripple")]
        msm: MsmStyle,
        /// Also write the gate list here.
        #[arg(long)]
        netlist: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// FFT/IFFT reconstruction of a PGM image through approximate adders.
    Image {
        #[arg(long)]
        input: PathBuf,
        /// One or more kinds, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "haloc")]
        kind: Vec<AdderKind>,
        #[arg(long, default_value_t = 32)]
        n: u32,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, default_value_t = 15)]
        frac_bits: u32,
        /// Reconstructed image path; with several kinds the kind is appended
        /// to the file stem.
        #[arg(long)]
        image_out: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Join report rows with switching energies.
    Tradeoff {
        /// CSV report with a `kind` column.
        #[arg(long)]
        rows: PathBuf,
        /// `kind=value_fJ` lines; defaults to the embedded reference values.
        #[arg(long)]
        energy: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct AdderArgs {
    #[arg(long)]
    kind: AdderKind,
    #[arg(long, default_value_t = 32)]
    n: u32,
    /// Lower-part width; defaults to min(10, n).
    #[arg(long)]
    m: Option<u32>,
    /// Constant section width; defaults per kind.
    #[arg(long)]
    k: Option<u32>,
}

impl AdderArgs {
    fn config(&self) -> Result<AdderConfig, String> {
        resolve(self.kind, self.n, self.m, self.k)
    }
}

#[derive(Args)]
struct SamplingArgs {
    #[arg(long, default_value_t = 10_000_000)]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum VectorFormat {
    Text,
    Csv,
}

#[derive(Clone, Debug)]
struct WidthList(Vec<u32>);

fn parse_list(s: &str) -> Result<WidthList, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("`{t}`: {e}"));
        match part.split_once('-') {
            Some((lo, hi)) => {
                let (lo, hi) = (num(lo)?, num(hi)?);
                if lo > hi {
                    return Err(format!("empty range `{part}`"));
                }
                out.extend(lo..=hi);
            }
            None => out.push(num(part)?),
        }
    }
    if out.is_empty() {
        return Err("empty list".into());
    }
    Ok(WidthList(out))
}

/// Fills in unspecified widths: m = min(10, n), and k = m / 2 for kinds
/// whose reference configuration uses a constant section.
fn resolve(kind: AdderKind, n: u32, m: Option<u32>, k: Option<u32>) -> Result<AdderConfig, String> {
    if kind == AdderKind::Exact {
        return AdderConfig::new(kind, n, m.unwrap_or(0), k.unwrap_or(0))
            .map_err(|e| e.to_string());
    }
    let m = m.unwrap_or(n.min(10));
    let k = k.unwrap_or_else(|| {
        if AdderConfig::reference(kind).k == 0 {
            0
        } else if kind.has_half_adders() {
            (m / 2).min(m.saturating_sub(2))
        } else {
            m / 2
        }
    });
    AdderConfig::new(kind, n, m, k).map_err(|e| e.to_string())
}

fn read(path: &Path) -> Result<Vec<u8>, String> {
    fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn read_text(path: &Path) -> Result<String, String> {
    String::from_utf8(read(path)?).map_err(|_| format!("{} is not UTF-8 text", path.display()))
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), String> {
    fs::write(path, bytes).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(path) => write(path, text.as_bytes()),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| format!("cannot write to stdout: {e}")),
    }
}

fn emit_rows(rows: &[ReportRow], output: &OutputArgs) -> Result<(), String> {
    let text = match output.format {
        Format::Csv => report::to_csv(rows),
        Format::Json => report::to_json(rows),
    };
    emit(&text, output.out.as_deref())
}

fn options(sampling: &SamplingArgs, msm: MsmStyle) -> Result<AnalyzeOptions, String> {
    if sampling.samples == 0 {
        return Err("--samples must be at least 1".into());
    }
    Ok(AnalyzeOptions {
        samples: sampling.samples,
        seed: sampling.seed,
        msm,
        exec: Execution::default(),
    })
}

fn image_path(base: &Path, kind: AdderKind, several: bool) -> PathBuf {
    if !several {
        return base.to_path_buf();
    }
    let stem = base.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let ext = base.extension().and_then(|s| s.to_str()).unwrap_or("pgm");
    base.with_file_name(format!("{stem}-{kind}.{ext}"))
}

fn run(cli: Cli) -> Result<(), String> {
    let err = |e: approx_adder::Error| e.to_string();
    match cli.command {
        Command::Analyze {
            adder,
            sampling,
            msm,
            output,
        } => {
            let cfg = adder.config()?;
            let row = report::analyze(&cfg, &CellCostTable::default(), &options(&sampling, msm)?)
                .map_err(err)?;
            emit_rows(&[row], &output)
        }
        Command::Sweep {
            kind,
            n,
            m,
            k,
            sampling,
            output,
        } => {
            let opts = options(&sampling, MsmStyle::Ripple)?;
            let sweep = report::sweep(kind, n, &m.0, &k.0, &CellCostTable::default(), &opts)
                .map_err(err)?;
            for (m, k, reason) in &sweep.skipped {
                eprintln!("skipped m={m} k={k}: {reason}");
            }
            emit_rows(&sweep.rows, &output)
        }
        Command::Vectors { kind, format, out } => {
            let text = match format {
                VectorFormat::Text => report::vectors_text(kind),
                VectorFormat::Csv => report::vectors_csv(kind),
            };
            emit(&text, out.as_deref())
        }
        Command::Cost {
            adder,
            cells,
            msm,
            netlist,
            output,
        } => {
            let cfg = adder.config()?;
            let costs = match cells {
                Some(path) => CellCostTable::parse(&read_text(&path)?, CellCostTable::default())
                    .map_err(|e| format!("{}: {e}", path.display()))?,
                None => CellCostTable::default(),
            };
            if let Some(path) = netlist {
                write(
                    &path,
                    build_netlist(&cfg, msm).map_err(err)?.to_text().as_bytes(),
                )?;
            }
            emit_rows(
                &[report::cost_row(&cfg, &costs, msm).map_err(err)?],
                &output,
            )
        }
        Command::Image {
            input,
            kind,
            n,
            m,
            k,
            frac_bits,
            image_out,
            output,
        } => {
            let img = load_pgm(&read(&input)?).map_err(|e| format!("{}: {e}", input.display()))?;
            let fmt = FixedFormat::new(n, frac_bits).map_err(err)?;
            let several = kind.len() > 1;
            let mut rows = Vec::new();
            for kind in kind {
                let cfg = resolve(kind, n, m, k)?;
                let (out, quality, row) =
                    report::image_experiment(&img, &cfg, fmt, Execution::default()).map_err(err)?;
                eprintln!(
                    "{cfg}: psnr {} dB, ssim {}, {}",
                    report::format_number(quality.psnr_db),
                    report::format_number(quality.ssim),
                    quality.label
                );
                if let Some(base) = &image_out {
                    write(&image_path(base, kind, several), &save_pgm(&out))?;
                }
                rows.push(row);
            }
            emit_rows(&rows, &output)
        }
        Command::Tradeoff {
            rows,
            energy,
            output,
        } => {
            let parsed = report::parse_csv(&read_text(&rows)?)
                .map_err(|e| format!("{}: {e}", rows.display()))?;
            let table = match energy {
                Some(path) => EnergyTable::parse(&read_text(&path)?)
                    .map_err(|e| format!("{}: {e}", path.display()))?,
                None => EnergyTable::default(),
            };
            emit_rows(&report::tradeoff(&parsed, &table).map_err(err)?, &output)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let line = msg
                .lines()
                .next()
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ");
            eprintln!("error: {line}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.replace('\n', " "));
            ExitCode::FAILURE
        }
    }
}
