use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use zdg_core::report::DEFAULT_FORMULA_TOLERANCE;
use zdg_core::{
    analyze, build_adjacency, class_partition, export, factorize, run_sweep, AnalysisReport,
    Convention, Error, ExportFormat, FormFilter, Settings, SweepConfig, DEFAULT_DENSE_CAP,
};

const EXIT_ERROR: u8 = 1;
const EXIT_MISMATCH: u8 = 2;

#[derive(Parser)]
#[command(
    name = "zdg",
    version,
    about = "Zero-divisor graphs of Z_n: spectra, energy and Wiener index"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze Γ[Z_n] and adjudicate every applicable closed form.
    Analyze {
        n: u64,
        #[command(flatten)]
        common: Common,
        /// Report encoding.
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Leave per-stage timings out of the report.
        #[arg(long)]
        no_timings: bool,
    },
    /// Print the canonical adjacency matrix.
    Matrix {
        n: u64,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Csv)]
        format: MatrixFormat,
        #[arg(long, value_enum, default_value_t = Loops::Paper)]
        loops: Loops,
        #[arg(long, default_value_t = DEFAULT_DENSE_CAP)]
        dense_cap: usize,
    },
    /// Sweep a family of moduli and emit one JSON object per modulus.
    Verify {
        #[arg(long, value_enum)]
        form: Family,
        #[arg(long)]
        p_max: u64,
        /// Upper bound for q (defaults to --p-max).
        #[arg(long)]
        q_max: Option<u64>,
        #[arg(long)]
        n_cap: Option<u64>,
        #[command(flatten)]
        common: Common,
        /// Worker threads.
        #[arg(long, env = "ZDG_JOBS")]
        jobs: Option<usize>,
        #[arg(long)]
        no_timings: bool,
        /// Write records here instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    /// Diagonal convention of the adjacency matrix.
    #[arg(long, value_enum, default_value_t = Loops::Paper)]
    loops: Loops,
    /// Tolerance for closed-form comparisons.
    #[arg(long, default_value_t = DEFAULT_FORMULA_TOLERANCE)]
    tol: f64,
    /// Largest vertex count handled densely.
    #[arg(long, default_value_t = DEFAULT_DENSE_CAP)]
    dense_cap: usize,
}

impl Common {
    fn settings(&self, timings: bool) -> Settings {
        Settings {
            convention: self.loops.into(),
            tol: self.tol,
            dense_cap: self.dense_cap,
            timings,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Loops {
    Paper,
    Simple,
}

impl From<Loops> for Convention {
    fn from(l: Loops) -> Self {
        match l {
            Loops::Paper => Convention::PaperLoops,
            Loops::Simple => Convention::Simple,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixFormat {
    Dot,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    P3,
    P2q,
    General,
}

impl From<Family> for FormFilter {
    fn from(f: Family) -> Self {
        match f {
            Family::P3 => FormFilter::P3,
            Family::P2q => FormFilter::P2q,
            Family::General => FormFilter::General,
        }
    }
}

fn fmt_real(v: f64) -> String {
    let r = zdg_core::real::round_significant(v, 12);
    if r != 0.0 && r.abs() < 1e-4 {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

fn render_text(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let factors: Vec<String> = r
        .factors
        .iter()
        .map(|&(p, e)| {
            if e == 1 {
                p.to_string()
            } else {
                format!("{p}^{e}")
            }
        })
        .collect();
    let _ = writeln!(s, "Z_{} = {} ({})", r.n, factors.join(" * "), r.form.name());
    let _ = writeln!(s, "vertices: {}", r.vertices);
    for c in &r.classes {
        let looped = if c.looped { ", looped" } else { "" };
        let _ = writeln!(s, "  class gcd={}: {} vertices{looped}", c.divisor, c.size);
    }
    if let Some(b) = r.block_form {
        let _ = writeln!(s, "block form: {}", if b { "ok" } else { "VIOLATED" });
    }
    let nonzero: Vec<String> = r.spectrum.nonzero.iter().map(|v| fmt_real(v.0)).collect();
    let _ = writeln!(s, "nonzero eigenvalues: [{}]", nonzero.join(", "));
    let _ = writeln!(s, "zero multiplicity: {}", r.spectrum.zero_multiplicity);
    let _ = writeln!(s, "energy: {}", fmt_real(r.spectrum.energy.0));
    if let Some(c) = &r.dense_check {
        let _ = writeln!(
            s,
            "dense cross-check: {} (max diff {})",
            if c.holds { "ok" } else { "FAILED" },
            fmt_real(c.max_abs_diff.0)
        );
    }
    for f in &r.spectral_formulas {
        let _ = writeln!(
            s,
            "{}: {:?} (residual {})",
            f.formula_id,
            f.verdict,
            fmt_real(f.max_residual.0)
        );
    }
    match &r.wiener {
        Some(w) => {
            match w.brute_force {
                Some(v) => {
                    let _ = writeln!(s, "wiener index: {v} (diameter {})", w.diameter);
                }
                None => {
                    let _ = writeln!(
                        s,
                        "wiener index: disconnected ({} unreachable pairs)",
                        w.unreachable_pairs
                    );
                }
            }
            for f in &w.closed_forms {
                let value = f.value.map_or_else(|| "n/a".to_string(), |v| v.to_string());
                let _ = writeln!(s, "{}: {value} {:?}", f.formula_id, f.verdict);
            }
        }
        None => {
            let _ = writeln!(s, "wiener index: skipped (over dense cap)");
        }
    }
    for v in &r.violations {
        let _ = writeln!(s, "violation: {v}");
    }
    if let Some(t) = &r.timings_ms {
        let _ = writeln!(
            s,
            "timings (ms): partition {} adjacency {} spectrum {} dense {} wiener {}",
            fmt_real(t.partition_ms.0),
            fmt_real(t.adjacency_ms.0),
            fmt_real(t.spectrum_ms.0),
            fmt_real(t.dense_ms.0),
            fmt_real(t.wiener_ms.0)
        );
    }
    s
}

fn cmd_analyze(n: u64, settings: &Settings, format: ReportFormat) -> Result<u8> {
    let report = analyze(n, settings)?;
    let text = match format {
        ReportFormat::Text => render_text(&report),
        ReportFormat::Json => serde_json::to_string_pretty(&report)? + "\n",
    };
    io::stdout().write_all(text.as_bytes())?;
    let failed = report.any_mismatch() || !report.violations.is_empty();
    Ok(if failed { EXIT_MISMATCH } else { 0 })
}

fn cmd_matrix(
    n: u64,
    format: MatrixFormat,
    convention: Convention,
    dense_cap: usize,
) -> Result<u8> {
    let cs = class_partition(&factorize(n)?)?;
    let a = build_adjacency(&cs, convention, dense_cap)?;
    let format = match format {
        MatrixFormat::Dot => ExportFormat::Dot,
        MatrixFormat::Csv => ExportFormat::Csv,
    };
    io::stdout().write_all(&export(&a, format))?;
    Ok(0)
}

fn cmd_verify(config: &SweepConfig, jobs: usize, output: Option<&PathBuf>) -> Result<u8> {
    let summary = match output {
        Some(path) => {
            let file =
                File::create(path).with_context(|| format!("creating {}", path.display()))?;
            run_sweep(config, jobs, &mut BufWriter::new(file))?
        }
        None => run_sweep(config, jobs, &mut io::stdout().lock())?,
    };
    if !summary.ok {
        eprintln!(
            "structural checks failed for n in {:?}",
            summary.unsound_moduli
        );
        return Ok(EXIT_MISMATCH);
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Analyze {
            n,
            common,
            format,
            no_timings,
        } => cmd_analyze(n, &common.settings(!no_timings), format),
        Command::Matrix {
            n,
            format,
            loops,
            dense_cap,
        } => cmd_matrix(n, format, loops.into(), dense_cap),
        Command::Verify {
            form,
            p_max,
            q_max,
            n_cap,
            common,
            jobs,
            no_timings,
            output,
        } => {
            let config = SweepConfig {
                form: form.into(),
                p_max,
                q_max,
                n_cap,
                settings: common.settings(!no_timings),
            };
            let jobs =
                jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            cmd_verify(&config, jobs, output.as_ref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            match e.downcast_ref::<Error>() {
                Some(Error::NoZeroDivisors(_)) => eprintln!("error: no zero divisors: {e}"),
                _ => eprintln!("error: {e:#}"),
            }
            ExitCode::from(EXIT_ERROR)
        }
    }
}
