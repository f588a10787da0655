use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hardy_core::continuous::{
    diagonal_integral_sides, integral_sides, integral_sides_quadrature, parts_identity_check,
    sharpness_sweep,
};
use hardy_core::discrete::{
    hardy_sides, interpolation_sides, remainder_sides, unweighted_hardy_sides, WeightedSequence,
};
use hardy_core::fuzz::{run_continuous, run_discrete, run_self_improvement};
use hardy_core::muckenhoupt::{
    check_self_improvement, compare_interval_classes, critical_exponent, interval_scan,
    prefix_scan, suffix_scan, GridSpec,
};
use hardy_core::{QuadratureConfig, Weight};

use crate::output::{self, Emit, Format, FuzzRun, Sweep};

#[derive(Debug, Parser)]
#[command(name = "hardy", version, about = "Check sharp Hardy inequalities with negative exponents and A_p self-improvement")]
pub struct Args {
    /// Output format (sharpness-sweep defaults to csv, everything else to json)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Override both quadrature tolerances
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DiscreteCheck {
    /// Weighted inequality, 0 < q <= p
    Hardy,
    /// q = p form with its remainder term
    Remainder,
    /// Two-exponent comparison, needs --q1 and --q2
    Interpolation,
    /// Ignore lam and use unit weights
    Unweighted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ContinuousCheck {
    /// Integral inequality with exponents p, q
    Integral,
    /// Equal-exponent case q = p
    Diagonal,
    /// Integration-by-parts identity, needs --alpha and --u
    Parts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Auto,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanKindArg {
    Prefix,
    Suffix,
    Interval,
    /// Prefix, suffix and all-interval suprema side by side
    Classes,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Discrete inequalities for a sequence file {"a": [...], "lam": [...]}
    VerifyDiscrete {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        p: f64,
        /// Defaults to p
        #[arg(long)]
        q: Option<f64>,
        #[arg(long)]
        q1: Option<f64>,
        #[arg(long)]
        q2: Option<f64>,
        #[arg(long, value_enum, default_value = "hardy")]
        check: DiscreteCheck,
    },
    /// Integral inequalities for a weight file
    VerifyContinuous {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, required_unless_present = "alpha")]
        p: Option<f64>,
        /// Defaults to p
        #[arg(long)]
        q: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        #[arg(long, value_enum, default_value = "integral")]
        check: ContinuousCheck,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        u: Option<f64>,
    },
    /// Critical exponent p0(q, M)
    SolveP0 {
        #[arg(long)]
        q: f64,
        #[arg(long = "M")]
        m: f64,
    },
    /// A_p characteristics over a family of intervals
    ApScan {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        p: f64,
        #[arg(long, value_enum, default_value = "prefix")]
        kind: ScanKindArg,
        /// geom:N, lin:N or a comma-separated list
        #[arg(long, default_value = "geom:40")]
        grid: String,
    },
    /// Measured prefix A_p against the self-improvement bound M'(p, q, M)
    Theorem3 {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value = "geom:40")]
        grid: String,
    },
    /// Closed-form sides for x^d on (0, 1)
    SharpnessSweep {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        /// Comma-separated exponents below 1/p
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<f64>,
    },
    /// Seeded random corpora; reports the smallest margin per check
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        discrete: usize,
        #[arg(long, default_value_t = 1_000)]
        continuous: usize,
        #[arg(long = "self-improvement", default_value_t = 200)]
        self_improvement: usize,
        /// Exponent q for the self-improvement corpus
        #[arg(long, default_value_t = 2.0)]
        q: f64,
    },
}

fn read_json<T: std::str::FromStr<Err = hardy_core::HardyError>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.parse::<T>()
        .with_context(|| format!("parsing {}", path.display()))
}

fn quadrature(tol: Option<f64>) -> Result<QuadratureConfig> {
    let cfg = match tol {
        Some(t) => QuadratureConfig::default().with_tol(t),
        None => QuadratureConfig::default(),
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Executes one command; `Ok(false)` means a checked inequality failed.
pub fn run(args: &Args) -> Result<bool> {
    let mut buf = Vec::new();
    let format = args.format;
    let json = format.unwrap_or(Format::Json);
    let ok = match &args.command {
        Command::VerifyDiscrete { input, p, q, q1, q2, check } => {
            let seq: WeightedSequence = read_json(input)?;
            let q = q.unwrap_or(*p);
            let report = match check {
                DiscreteCheck::Hardy => hardy_sides(&seq, *p, q)?,
                DiscreteCheck::Remainder => remainder_sides(&seq, *p)?,
                DiscreteCheck::Unweighted => unweighted_hardy_sides(seq.a(), *p, q)?,
                DiscreteCheck::Interpolation => {
                    let (Some(q1), Some(q2)) = (q1, q2) else {
                        bail!("--check interpolation needs --q1 and --q2");
                    };
                    interpolation_sides(&seq, *p, *q1, *q2)?
                }
            };
            emit(&report, json, &mut buf)?
        }
        Command::VerifyContinuous { input, p, q, a, b, check, method, alpha, u } => {
            let weight: Weight = read_json(input)?;
            let cfg = quadrature(args.tol)?;
            if *check == ContinuousCheck::Parts {
                let (Some(alpha), Some(u)) = (alpha, u) else {
                    bail!("--check parts needs --alpha and --u");
                };
                emit(&parts_identity_check(&weight, *alpha, *u, &cfg)?, json, &mut buf)?
            } else {
                let Some(p) = *p else { bail!("--p is required") };
                let q = if *check == ContinuousCheck::Diagonal { p } else { q.unwrap_or(p) };
                let report = match (check, method) {
                    (_, Method::Quadrature) => integral_sides_quadrature(&weight, (*a, *b), p, q, &cfg)?,
                    (ContinuousCheck::Diagonal, Method::Auto) => {
                        diagonal_integral_sides(&weight, (*a, *b), p, &cfg)?
                    }
                    _ => integral_sides(&weight, (*a, *b), p, q, &cfg)?,
                };
                emit(&report, json, &mut buf)?
            }
        }
        Command::SolveP0 { q, m } => emit(&critical_exponent(*q, *m)?, json, &mut buf)?,
        Command::ApScan { input, p, kind, grid } => {
            let weight: Weight = read_json(input)?;
            let grid: GridSpec = grid.parse()?;
            match kind {
                ScanKindArg::Prefix => emit(&prefix_scan(&weight, *p, &grid.prefix_points())?, json, &mut buf)?,
                ScanKindArg::Suffix => emit(&suffix_scan(&weight, *p, &grid.suffix_points())?, json, &mut buf)?,
                ScanKindArg::Interval => {
                    emit(&interval_scan(&weight, *p, &grid.interval_pairs())?, json, &mut buf)?
                }
                ScanKindArg::Classes => emit(&compare_interval_classes(&weight, *p, &grid)?, json, &mut buf)?,
            }
        }
        Command::Theorem3 { input, q, p, grid } => {
            let weight: Weight = read_json(input)?;
            let grid: GridSpec = grid.parse()?;
            emit(&check_self_improvement(&weight, *q, *p, &grid.prefix_points())?, json, &mut buf)?
        }
        Command::SharpnessSweep { p, q, d } => {
            let rows = Sweep(sharpness_sweep(*p, *q, d)?);
            emit(&rows, format.unwrap_or(Format::Csv), &mut buf)?
        }
        Command::Fuzz { seed, discrete, continuous, self_improvement, q } => {
            let cfg = quadrature(args.tol)?;
            let run = FuzzRun {
                seed: *seed,
                corpora: vec![
                    run_discrete(*seed, *discrete)?,
                    run_continuous(*seed, *continuous, &cfg)?,
                    run_self_improvement(*seed, *self_improvement, *q)?,
                ],
            };
            emit(&run, json, &mut buf)?
        }
    };

    match &args.out {
        Some(path) => fs::write(path, &buf).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(&buf)?,
    }
    Ok(ok)
}

fn emit<E: Emit>(value: &E, format: Format, buf: &mut Vec<u8>) -> Result<bool> {
    output::write(value, format, buf)?;
    Ok(value.verdict())
}
