//! `lowdisc` — greedy low-discrepancy sequence experiments.
//!
//! Exit codes: 0 on success, 2 on validation/input errors (including usage
//! errors), 1 on internal errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use lowdisc::nlp::{build_model, export_model_to_path};
use lowdisc::optim::{Method, OptimizerConfig};
use lowdisc::points::validate_point_set;
use lowdisc::textio::{read_points_from_path, write_points};
use lowdisc::{Error, Result};
use lowdisc_cli::csvout::{render_compare, render_envelope, render_trace};
use lowdisc_cli::harness::{
    bad_init_experiment, compare, nd_experiment, robustness_random_starts,
    robustness_single_starts, trace, MeasureKind, RobustnessResult,
};
use lowdisc_cli::seqspec::SequenceSpec;

#[derive(Parser)]
#[command(
    name = "lowdisc",
    version,
    about = "Greedy low-discrepancy sequences: generation, measurement, experiments",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct MeasureFlags {
    /// Discrepancy measure: exact | lower-bound | l2
    #[arg(long, default_value = "exact")]
    measure: String,
    /// Lattice resolution per axis for --measure lower-bound
    #[arg(long, default_value_t = 400)]
    m: usize,
}

impl MeasureFlags {
    fn kind(&self) -> Result<MeasureKind> {
        match self.measure.as_str() {
            "exact" => Ok(MeasureKind::LinfExact),
            "lower-bound" => {
                if self.m == 0 {
                    return Err(Error::domain("--m must be at least 1"));
                }
                Ok(MeasureKind::LinfLowerBound { m: self.m })
            }
            "l2" => Ok(MeasureKind::L2Squared),
            other => Err(Error::domain(format!(
                "unknown measure `{other}` (expected exact, lower-bound, or l2)"
            ))),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a sequence prefix and write it as a points file.
    Generate {
        /// Sequence spec, e.g. `kritzinger,init=0.5` or `sobol,dim=2`
        #[arg(long)]
        seq: String,
        /// Number of points
        #[arg(long)]
        n: usize,
        /// Seed for heuristic minimizers
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Measure the discrepancy of a points file (one CSV record).
    Measure {
        /// Points file (as written by `generate`)
        #[arg(long)]
        points: PathBuf,
        #[command(flatten)]
        measure: MeasureFlags,
        /// Scaling exponent: scaled = n·raw/ln(n)^p
        #[arg(short, long, default_value_t = 1.0)]
        p: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trace a sequence's discrepancy at every multiple of the stride.
    Trace {
        #[arg(long)]
        seq: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        stride: usize,
        #[command(flatten)]
        measure: MeasureFlags,
        #[arg(short, long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare two sequences under the exact L∞ star discrepancy.
    Compare {
        #[arg(long)]
        seq_a: String,
        #[arg(long)]
        seq_b: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        stride: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Robustness of the greedy construction to its initial set.
    Robustness {
        /// `single` (starts 0.0, 0.1, …, 0.9, 0.9999) or `random`
        /// (--sets independent --k-point uniform initial sets)
        #[arg(long, default_value = "single")]
        mode: String,
        #[arg(long, default_value_t = 6)]
        sets: usize,
        #[arg(long, default_value_t = 5)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        stride: usize,
        #[arg(short, long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory receiving trace_XX.csv and envelope.csv
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Greedy run from the clustered 100-point initial set (j·10⁻⁴).
    BadInit {
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        stride: usize,
        #[arg(short, long, default_value_t = 1.0)]
        p: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Heuristic greedy construction vs Sobol in d ∈ {2, 3}.
    NdExperiment {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 500)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        stride: usize,
        /// Minimizer: random | grid | graddesc | multistart
        #[arg(long, default_value = "random")]
        method: String,
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        #[arg(long, default_value_t = 100)]
        grid: usize,
        /// Use the lattice lower bound instead of the exact measure
        #[arg(long)]
        sampled: bool,
        /// Lattice resolution per axis for --sampled
        #[arg(long, default_value_t = 400)]
        sampled_m: usize,
        #[arg(short, long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory receiving kritzinger.csv and sobol.csv
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Export the two-dimensional greedy-step model for a points file.
    NlpExport {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn emit(out: Option<&PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(|e| Error::io(path, e)),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn write_in_dir(dir: &PathBuf, name: &str, content: &str) -> Result<()> {
    let path = dir.join(name);
    std::fs::write(&path, content).map_err(|e| Error::io(path, e))
}

fn parse_method(s: &str) -> Result<Method> {
    match s {
        "random" => Ok(Method::Random),
        "grid" => Ok(Method::Grid),
        "graddesc" => Ok(Method::GradDesc),
        "multistart" => Ok(Method::MultiStart),
        other => Err(Error::domain(format!("unknown method `{other}`"))),
    }
}

fn robustness_outputs(dir: &PathBuf, result: &RobustnessResult, header: Vec<String>) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    for (i, (label, trace)) in result.labels.iter().zip(&result.traces).enumerate() {
        let mut comments = header.clone();
        comments.push(format!("trace: {label}"));
        write_in_dir(dir, &format!("trace_{i:02}.csv"), &render_trace(&comments, trace))?;
    }
    let mut comments = header;
    comments.push("envelope: pointwise min/mean/max of the scaled values".to_string());
    write_in_dir(dir, "envelope.csv", &render_envelope(&comments, &result.envelope))
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Generate { seq, n, seed, out } => {
            let spec = SequenceSpec::parse(&seq)?;
            let points = spec.generate(n, seed)?;
            let comments = vec![
                "lowdisc generate".to_string(),
                format!("seq: {}", spec.label()),
                format!("n: {n}"),
                format!("seed: {seed}"),
            ];
            let mut buf = Vec::new();
            write_points(&mut buf, &points, &comments)
                .map_err(|e| Error::Internal(format!("formatting points failed: {e}")))?;
            let text = String::from_utf8(buf)
                .map_err(|e| Error::Internal(format!("non-UTF-8 output: {e}")))?;
            emit(out.as_ref(), &text)
        }
        Cmd::Measure {
            points,
            measure,
            p,
            out,
        } => {
            let kind = measure.kind()?;
            let ps = read_points_from_path(&points)?;
            let violations = validate_point_set(&ps);
            if !violations.is_empty() {
                return Err(Error::domain(format!(
                    "points file is not a valid [0,1)^d set: {}",
                    violations[0]
                )));
            }
            let raw = kind.apply(&ps)?;
            let record = lowdisc_cli::harness::TraceRecord {
                n: ps.len(),
                raw,
                scaled: lowdisc_cli::harness::scaled_value(ps.len(), raw, p),
            };
            let comments = vec![
                "lowdisc measure".to_string(),
                format!("points: {}", points.display()),
                format!("d: {}", ps.dim()),
                format!("measure: {}", kind.label()),
                format!("p: {p}"),
            ];
            emit(out.as_ref(), &render_trace(&comments, &[record]))
        }
        Cmd::Trace {
            seq,
            n,
            stride,
            measure,
            p,
            seed,
            out,
        } => {
            let spec = SequenceSpec::parse(&seq)?;
            let kind = measure.kind()?;
            let records = trace(&spec, n, stride, kind, p, seed)?;
            let comments = vec![
                "lowdisc trace".to_string(),
                format!("seq: {}", spec.label()),
                format!("n: {n}"),
                format!("stride: {stride}"),
                format!("measure: {}", kind.label()),
                format!("p: {p}"),
                format!("seed: {seed}"),
            ];
            emit(out.as_ref(), &render_trace(&comments, &records))
        }
        Cmd::Compare {
            seq_a,
            seq_b,
            n,
            stride,
            seed,
            out,
        } => {
            let a = SequenceSpec::parse(&seq_a)?;
            let b = SequenceSpec::parse(&seq_b)?;
            let records = compare(&a, &b, n, stride, seed)?;
            let comments = vec![
                "lowdisc compare".to_string(),
                format!("seq_a: {}", a.label()),
                format!("seq_b: {}", b.label()),
                format!("n: {n}"),
                format!("stride: {stride}"),
                "measure: exact".to_string(),
                format!("seed: {seed}"),
            ];
            emit(out.as_ref(), &render_compare(&comments, &records))
        }
        Cmd::Robustness {
            mode,
            sets,
            k,
            n,
            stride,
            p,
            seed,
            out_dir,
        } => {
            let mut header = vec![
                "lowdisc robustness".to_string(),
                format!("mode: {mode}"),
                format!("n: {n}"),
                format!("stride: {stride}"),
                "measure: exact".to_string(),
                format!("p: {p}"),
            ];
            let result = match mode.as_str() {
                "single" => robustness_single_starts(n, stride, p)?,
                "random" => {
                    header.push(format!("sets: {sets}"));
                    header.push(format!("k: {k}"));
                    header.push(format!("seed: {seed}"));
                    robustness_random_starts(sets, k, n, stride, p, seed)?
                }
                other => {
                    return Err(Error::domain(format!(
                        "unknown robustness mode `{other}` (expected single or random)"
                    )))
                }
            };
            robustness_outputs(&out_dir, &result, header)
        }
        Cmd::BadInit { n, stride, p, out } => {
            let records = bad_init_experiment(n, stride, p)?;
            let comments = vec![
                "lowdisc bad-init".to_string(),
                "init: 100 points j*1e-4, j = 0..100".to_string(),
                format!("n: {n}"),
                format!("stride: {stride}"),
                "measure: exact".to_string(),
                format!("p: {p}"),
            ];
            emit(out.as_ref(), &render_trace(&comments, &records))
        }
        Cmd::NdExperiment {
            dim,
            n,
            stride,
            method,
            budget,
            grid,
            sampled,
            sampled_m,
            p,
            seed,
            out_dir,
        } => {
            let cfg = OptimizerConfig {
                method: parse_method(&method)?,
                budget,
                grid_resolution: grid,
                seed,
                ..Default::default()
            };
            let sampled = sampled.then_some(sampled_m);
            let result = nd_experiment(dim, &cfg, n, stride, p, sampled)?;
            std::fs::create_dir_all(&out_dir).map_err(|e| Error::io(&out_dir, e))?;
            let header = |label: &str| {
                vec![
                    "lowdisc nd-experiment".to_string(),
                    format!("seq: {label}"),
                    format!("dim: {dim}"),
                    format!("n: {n}"),
                    format!("stride: {stride}"),
                    format!("method: {method}"),
                    format!("budget: {budget}"),
                    format!("grid: {grid}"),
                    format!("measure: {}", result.measure.label()),
                    format!("p: {p}"),
                    format!("seed: {seed}"),
                ]
            };
            write_in_dir(
                &out_dir,
                "kritzinger.csv",
                &render_trace(&header("kritzinger-nd"), &result.kritzinger),
            )?;
            write_in_dir(
                &out_dir,
                "sobol.csv",
                &render_trace(&header("sobol"), &result.sobol),
            )
        }
        Cmd::NlpExport { points, out } => {
            let ps = read_points_from_path(&points)?;
            let violations = validate_point_set(&ps);
            if !violations.is_empty() {
                return Err(Error::domain(format!(
                    "points file is not a valid [0,1)^d set: {}",
                    violations[0]
                )));
            }
            let model = build_model(&ps)?;
            export_model_to_path(&model, &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            match e {
                Error::Internal(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
