//! Command-line surface: one thin dispatcher over the library operations.
//!
//! Every run is reproducible from its flags alone (no environment
//! configuration); identical invocations produce byte-identical artifacts.
//! Exit status: 0 success, 1 computation failure, 2 usage error.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::acceptance;
use crate::error::{Error, Result};
use crate::explicit;
use crate::kernels::verify as kverify;
use crate::moments::{self, MomentResult};
use crate::psi::{build_psi_table, PsiTable};
use crate::report::{fmt_sig9, VerifierReport};
use crate::zeros::{self, PairCorrelationConfig, ZeroList};

#[derive(Debug, Parser)]
#[command(
    name = "zeta-moments",
    version,
    about = "Second moments of psi in short intervals and zeta-zero pair correlation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Cap on worker threads (default: machine parallelism)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Artifact format where both are meaningful
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the artifact here instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WindowKind {
    H,
    Delta,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a psi table and write its binary cache to --out
    Sieve {
        #[arg(long)]
        limit: u64,
    },
    /// Exact fixed-window second moment from 1 to X
    MomentH {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        h: f64,
        /// Sieve limit (defaults to the smallest table that fits)
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Exact proportional-window second moment from 1 to X
    MomentDelta {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Averaged double integral over window widths up to --delta
    MomentAvg {
        #[arg(long)]
        x: f64,
        /// Upper averaging width Δ
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 64)]
        grid: u32,
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Sweep window sizes X^e and fit the second-term constant
    Fit {
        #[arg(long, value_enum)]
        kind: WindowKind,
        #[arg(long)]
        x: f64,
        /// Comma-separated exponents e; windows are X^e (h) or X^-e (delta)
        #[arg(long, default_value = "0.35,0.40,0.45,0.50,0.55,0.60")]
        exponents: String,
        #[arg(long)]
        limit: Option<u64>,
    },
    /// F(X,T) with truncation bound and asymptotic comparison
    PairCorrelation {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        t: f64,
        /// Read ordinates from this table
        #[arg(long)]
        zeros_file: Option<PathBuf>,
        /// ... or compute them up to this height
        #[arg(long)]
        zmax: Option<f64>,
        #[arg(long)]
        cutoff: Option<f64>,
    },
    /// Compute zero ordinates up to --zmax; artifact is a zero table
    ComputeZeros {
        #[arg(long)]
        zmax: f64,
    },
    /// Validate a zero table and summarize it
    ImportZeros {
        #[arg(long)]
        zeros_file: PathBuf,
    },
    /// Zero-sum mean-square comparison against the sieve truth on [X, 2X]
    Explicit {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        delta: f64,
        /// Zero-sum truncation height Z
        #[arg(long)]
        zmax: f64,
        #[arg(long)]
        zeros_file: Option<PathBuf>,
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Run the kernel/lemma verifier suite
    VerifyLemmas {
        #[arg(long, default_value_t = 0.1)]
        eta: f64,
    },
    /// Run the full acceptance checklist
    VerifyAll,
}

/// Artifact plus the success flag that decides the exit status.
pub struct DispatchOutcome {
    pub artifact: String,
    pub ok: bool,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Input(_) | Error::Range(_) | Error::Parse { .. } => 2,
        _ => 1,
    }
}

fn table_for(x_span: f64, limit: Option<u64>) -> Result<PsiTable> {
    let needed = x_span.ceil() as u64;
    match limit {
        Some(l) if l < needed => Err(Error::Input(format!(
            "--limit {l} is below the required table span {needed}"
        ))),
        Some(l) => build_psi_table(l),
        None => build_psi_table(needed),
    }
}

fn zeros_from(zeros_file: &Option<PathBuf>, zmax: Option<f64>) -> Result<ZeroList> {
    match (zeros_file, zmax) {
        (Some(path), _) => ZeroList::import(path),
        (None, Some(z)) => ZeroList::compute(z),
        (None, None) => Err(Error::Input(
            "no zeros provided: pass --zeros-file or --zmax".to_string(),
        )),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable artifact");
    s.push('\n');
    s

}

fn moment_artifact(format: Format, results: &[MomentResult]) -> String {
    match format {
        Format::Json => {
            if results.len() == 1 {
                to_json(&results[0])
            } else {
                to_json(&results)
            }
        }
        Format::Csv => {
            let mut out = String::from(MomentResult::CSV_HEADER);
            out.push('\n');
            for r in results {
                out.push_str(&r.to_csv_row());
                out.push('\n');
            }
            out
        }
    }
}

fn report_artifact(format: Format, reports: &[VerifierReport]) -> String {
    match format {
        Format::Json => {
            if reports.len() == 1 {
                to_json(&reports[0])
            } else {
                to_json(&reports)
            }
        }
        Format::Csv => {
            let mut out = String::from("name,computed,predicted,abs_error,tolerance,pass\n");
            for r in reports {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.name,
                    fmt_sig9(r.computed),
                    fmt_sig9(r.predicted),
                    fmt_sig9(r.abs_error),
                    fmt_sig9(r.tolerance),
                    r.pass
                ));
            }
            out
        }
    }
}

#[derive(Serialize)]
struct SieveSummary {
    limit: u64,
    breakpoints: usize,
    psi_at_limit: f64,
    cache: String,
}

#[derive(Serialize)]
struct ImportSummary {
    count: usize,
    t_max: f64,
    source: zeros::ZeroSource,
}

#[derive(Serialize)]
struct FitSummary {
    kind: String,
    x: f64,
    exponents: Vec<f64>,
    estimate: f64,
    stderr: f64,
    reference: f64,
    results: Vec<MomentResult>,
}

#[derive(Serialize)]
struct PairCorrelationSummary {
    x: f64,
    t: f64,
    f: f64,
    tail_bound: f64,
    zeros_used: usize,
    asymptotic: VerifierReport,
}

/// Runs one parsed command and renders its artifact.
pub fn dispatch(cli: &Cli) -> Result<DispatchOutcome> {
    let format = cli.format;
    match &cli.command {
        Command::Sieve { limit } => {
            let out_path = cli.out.clone().ok_or_else(|| {
                Error::Input("sieve needs --out for the cache file".to_string())
            })?;
            let table = build_psi_table(*limit)?;
            table.write_cache(&out_path)?;
            let summary = SieveSummary {
                limit: *limit,
                breakpoints: table.breakpoints().len(),
                psi_at_limit: table.psi_at(*limit),
                cache: out_path.display().to_string(),
            };
            Ok(DispatchOutcome {
                artifact: to_json(&summary),
                ok: true,
            })
        }
        Command::MomentH { x, h, limit } => {
            if !(*x >= 1.0 && *h > 0.0) {
                return Err(Error::Input(format!(
                    "moment-h needs X >= 1 and h > 0, got X={x}, h={h}"
                )));
            }
            let table = table_for(x + h, *limit)?;
            let r = moments::second_moment_fixed_h(&table, *x, *h)?;
            Ok(DispatchOutcome {
                artifact: moment_artifact(format, &[r]),
                ok: true,
            })
        }
        Command::MomentDelta { x, delta, limit } => {
            if !(*x >= 1.0 && *delta > 0.0 && *delta < 1.0) {
                return Err(Error::Input(format!(
                    "moment-delta needs X >= 1 and 0 < delta < 1, got X={x}, delta={delta}"
                )));
            }
            let table = table_for((1.0 + delta) * x, *limit)?;
            let r = moments::second_moment_delta(&table, *x, *delta)?;
            Ok(DispatchOutcome {
                artifact: moment_artifact(format, &[r]),
                ok: true,
            })
        }
        Command::MomentAvg {
            x,
            delta,
            grid,
            limit,
        } => {
            if !(*x >= 1.0 && *delta > 0.0 && *delta < 1.0) || *grid < 16 {
                return Err(Error::Input(format!(
                    "moment-avg needs X >= 1, 0 < delta < 1, grid >= 16; got X={x}, \
                     delta={delta}, grid={grid}"
                )));
            }
            let table = table_for((1.0 + delta) * x, *limit)?;
            let r = moments::averaged_double_integral(&table, *x, *delta, *grid)?;
            let ok = r.pass;
            Ok(DispatchOutcome {
                artifact: report_artifact(format, &[r]),
                ok,
            })
        }
        Command::Fit {
            kind,
            x,
            exponents,
            limit,
        } => {
            let exps: Vec<f64> = exponents
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Input(format!("bad exponent {s:?}")))
                })
                .collect::<Result<_>>()?;
            if exps.len() < 3 {
                return Err(Error::Input(
                    "fit needs at least 3 exponents".to_string(),
                ));
            }
            if !(*x > 1.0) || exps.iter().any(|e| !(*e > 0.0 && *e < 1.0)) {
                return Err(Error::Input(
                    "fit needs X > 1 and exponents in (0, 1)".to_string(),
                ));
            }
            let consts = crate::kernels::Constants::get();
            let (span, reference) = match kind {
                WindowKind::H => (x + x.powf(exps.iter().cloned().fold(0.0, f64::max)), consts.b),
                WindowKind::Delta => (
                    x * (1.0 + x.powf(-exps.iter().cloned().fold(1.0, f64::min))),
                    consts.c,
                ),
            };
            let table = table_for(span, *limit)?;
            let mut results = Vec::with_capacity(exps.len());
            for &e in &exps {
                let r = match kind {
                    WindowKind::H => moments::second_moment_fixed_h(&table, *x, x.powf(e))?,
                    WindowKind::Delta => {
                        moments::second_moment_delta(&table, *x, x.powf(-e))?
                    }
                };
                results.push(r);
            }
            let (estimate, stderr) = moments::fit_constant(&results)?;
            let summary = FitSummary {
                kind: match kind {
                    WindowKind::H => "h".to_string(),
                    WindowKind::Delta => "delta".to_string(),
                },
                x: *x,
                exponents: exps,
                estimate,
                stderr,
                reference,
                results,
            };
            let artifact = match format {
                Format::Json => to_json(&summary),
                Format::Csv => format!(
                    "estimate,stderr,kind,x\n{},{},{},{}\n",
                    fmt_sig9(estimate),
                    fmt_sig9(stderr),
                    summary.kind,
                    fmt_sig9(*x)
                ),
            };
            Ok(DispatchOutcome {
                artifact,
                ok: true,
            })
        }
        Command::PairCorrelation {
            x,
            t,
            zeros_file,
            zmax,
            cutoff,
        } => {
            let zeros = zeros_from(zeros_file, *zmax)?;
            let mut cfg = PairCorrelationConfig::default();
            if let Some(c) = cutoff {
                if !(*c > 0.0) {
                    return Err(Error::Input(format!("--cutoff must be positive, got {c}")));
                }
                cfg.weight_cutoff = *c;
            }
            let detailed = zeros::pair_correlation_f_detailed(&zeros, *x, *t, &cfg)?;
            let asymptotic = zeros::compare_f_asymptotics(&zeros, *x, *t)?;
            let summary = PairCorrelationSummary {
                x: *x,
                t: *t,
                f: detailed.value,
                tail_bound: detailed.tail_bound,
                zeros_used: detailed.zeros_used,
                asymptotic,
            };
            let artifact = match format {
                Format::Json => to_json(&summary),
                Format::Csv => format!(
                    "x,t,f,tail_bound,zeros_used\n{},{},{},{},{}\n",
                    fmt_sig9(*x),
                    fmt_sig9(*t),
                    fmt_sig9(summary.f),
                    fmt_sig9(summary.tail_bound),
                    summary.zeros_used
                ),
            };
            Ok(DispatchOutcome {
                artifact,
                ok: true,
            })
        }
        Command::ComputeZeros { zmax } => {
            let zeros = ZeroList::compute(*zmax)?;
            Ok(DispatchOutcome {
                artifact: zeros.export_string(),
                ok: true,
            })
        }
        Command::ImportZeros { zeros_file } => {
            let zeros = ZeroList::import(zeros_file)?;
            let summary = ImportSummary {
                count: zeros.len(),
                t_max: zeros.t_max(),
                source: zeros.source(),
            };
            Ok(DispatchOutcome {
                artifact: to_json(&summary),
                ok: true,
            })
        }
        Command::Explicit {
            x,
            delta,
            zmax,
            zeros_file,
            limit,
        } => {
            if !(*x >= 2.0 && *delta > 0.0 && *delta < 1.0) {
                return Err(Error::Input(format!(
                    "explicit needs X >= 2 and 0 < delta < 1, got X={x}, delta={delta}"
                )));
            }
            let zeros = match zeros_file {
                Some(p) => ZeroList::import(p)?,
                None => ZeroList::compute((*zmax * 1.01).min(1e5))?,
            };
            let table = table_for(2.0 * x * (1.0 + delta), *limit)?;
            let r = explicit::verify_zero_sum_moment(&table, &zeros, *x, *delta, *zmax)?;
            let ok = r.report.pass;
            Ok(DispatchOutcome {
                artifact: to_json(&r),
                ok,
            })
        }
        Command::VerifyLemmas { eta } => {
            let reports = kverify::standard_suite(*eta)?;
            let ok = reports.iter().all(|r| r.pass);
            Ok(DispatchOutcome {
                artifact: report_artifact(format, &reports),
                ok,
            })
        }
        Command::VerifyAll => {
            let outcomes = acceptance::run_all();
            let ok = outcomes.iter().all(|o| o.pass);
            Ok(DispatchOutcome {
                artifact: to_json(&outcomes),
                ok,
            })
        }
    }
}
