//! Seeded random corpora for the inequality checks.
//!
//! Case `i` of a run with seed `s` is drawn from its own ChaCha stream
//! `(s, i)`, so results are reproducible and independent of thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::continuous::integral_sides_quadrature;
use crate::discrete::{hardy_sides, interpolation_sides, remainder_sides, WeightedSequence};
use crate::error::Result;
use crate::muckenhoupt::{check_self_improvement, critical_exponent, GridSpec};
use crate::numerics::{PiecewiseConstantWeight, QuadratureConfig, Weight};
use crate::report::{float, InequalityReport};

fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn log_uniform(rng: &mut impl Rng, lo_exp: f64, hi_exp: f64) -> f64 {
    10f64.powf(rng.gen_range(lo_exp..hi_exp))
}

/// Uniform on `(0, hi]`.
fn open_uniform(rng: &mut impl Rng, hi: f64) -> f64 {
    hi * (1.0 - rng.gen::<f64>())
}

/// Aggregate over one family of checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckStats {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// Smallest `margin / |rhs|` seen.
    #[serde(with = "float")]
    pub min_relative_margin: f64,
}

impl CheckStats {
    fn collect(name: &str, reports: &[InequalityReport]) -> Self {
        Self {
            name: name.to_string(),
            cases: reports.len(),
            failures: reports.iter().filter(|r| !r.holds).count(),
            min_relative_margin: reports
                .iter()
                .map(|r| r.margin / r.rhs.abs())
                .fold(f64::INFINITY, f64::min),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzSummary {
    pub seed: u64,
    pub checks: Vec<CheckStats>,
}

impl FuzzSummary {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckStats::passed)
    }
}

#[derive(Debug, Clone)]
pub struct DiscreteCase {
    pub seq: WeightedSequence,
    pub p: f64,
    pub q: f64,
    pub q1: f64,
    pub q2: f64,
}

/// Length in `1..=200`, entries log-uniform in `[1e-3, 1e3]`, `0 < q ≤ p ≤ 10`,
/// `0 < q1 ≤ q2 ≤ p`.
pub fn discrete_case(seed: u64, index: u64) -> DiscreteCase {
    let mut rng = case_rng(seed, index);
    let n = rng.gen_range(1..=200);
    let draw = |rng: &mut ChaCha8Rng| (0..n).map(|_| log_uniform(rng, -3.0, 3.0)).collect::<Vec<_>>();
    let a = draw(&mut rng);
    let lam = draw(&mut rng);
    let p = open_uniform(&mut rng, 10.0);
    let q = open_uniform(&mut rng, p);
    let (u, v) = (open_uniform(&mut rng, p), open_uniform(&mut rng, p));
    DiscreteCase {
        seq: WeightedSequence::new(a, lam).expect("positive entries"),
        p,
        q,
        q1: u.min(v),
        q2: u.max(v),
    }
}

/// Runs the weighted Hardy, remainder and interpolation checks on `count` cases.
pub fn run_discrete(seed: u64, count: usize) -> Result<FuzzSummary> {
    let reports = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let c = discrete_case(seed, i);
            Ok([
                hardy_sides(&c.seq, c.p, c.q)?,
                remainder_sides(&c.seq, c.p)?,
                interpolation_sides(&c.seq, c.p, c.q1, c.q2)?,
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let column = |k: usize| reports.iter().map(|r| r[k].clone()).collect::<Vec<_>>();
    Ok(FuzzSummary {
        seed,
        checks: vec![
            CheckStats::collect("weighted_hardy", &column(0)),
            CheckStats::collect("remainder", &column(1)),
            CheckStats::collect("interpolation", &column(2)),
        ],
    })
}

/// Up to `max_cells` random cells on `[0, 1]` with log-uniform values in
/// `[10^lo_exp, 10^hi_exp]`; sorted values when `monotone`.
pub fn random_piecewise(
    rng: &mut impl Rng,
    max_cells: usize,
    lo_exp: f64,
    hi_exp: f64,
    monotone: bool,
) -> PiecewiseConstantWeight {
    let k = rng.gen_range(1..=max_cells);
    let mut inner: Vec<f64> = (1..k).map(|_| rng.gen_range(0.001..0.999)).collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    let mut breakpoints = vec![0.0];
    breakpoints.extend(inner);
    breakpoints.push(1.0);
    let mut values: Vec<f64> = (1..breakpoints.len())
        .map(|_| log_uniform(rng, lo_exp, hi_exp))
        .collect();
    if monotone {
        values.sort_by(f64::total_cmp);
        PiecewiseConstantWeight::new_monotone(breakpoints, values).expect("valid weight")
    } else {
        PiecewiseConstantWeight::new(breakpoints, values).expect("valid weight")
    }
}

/// Integral inequality on `(0, 1)` for random step weights (≤ 50 cells,
/// values log-uniform in `[1e-2, 1e2]`) and `0 < q ≤ p ≤ 5`, by quadrature.
pub fn run_continuous(seed: u64, count: usize, cfg: &QuadratureConfig) -> Result<FuzzSummary> {
    let reports = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = case_rng(seed, i);
            let w = Weight::Piecewise(random_piecewise(&mut rng, 50, -2.0, 2.0, false));
            let p = open_uniform(&mut rng, 5.0);
            let q = open_uniform(&mut rng, p);
            integral_sides_quadrature(&w, (0.0, 1.0), p, q, cfg)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FuzzSummary {
        seed,
        checks: vec![CheckStats::collect("integral_hardy", &reports)],
    })
}

/// Prefix grid used for the self-improvement corpus: `geom:40`, `lin:256`
/// and the weight's own breakpoints.
pub fn dense_prefix_grid(w: &PiecewiseConstantWeight) -> Vec<f64> {
    let mut grid = GridSpec::Geometric(40).prefix_points();
    grid.extend(GridSpec::Linear(256).prefix_points());
    grid.extend(w.breakpoints().iter().copied().filter(|&x| x > 0.0));
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

/// Random non-decreasing step weights (≤ 30 cells, sorted values
/// log-uniform in `[10^{-s}, 10^s]` with `s` uniform in `[0.05, 1.5]`, which
/// keeps `p₀` well below `q` for most draws) checked against the self-improvement bound at a random
/// `p ∈ (p₀ + 0.01, q]`.
pub fn run_self_improvement(seed: u64, count: usize, q: f64) -> Result<FuzzSummary> {
    let reports = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = case_rng(seed, i);
            let spread = rng.gen_range(0.05..1.5);
            let pw = random_piecewise(&mut rng, 30, -spread, spread, true);
            let grid = dense_prefix_grid(&pw);
            let w = Weight::Piecewise(pw);
            let m = crate::muckenhoupt::prefix_scan(&w, q, &grid)?.sup.max(1.0);
            let lo = critical_exponent(q, m)?.p0 + 0.01;
            let p = if lo >= q { q } else { q - open_uniform(&mut rng, 1.0) * (q - lo) };
            Ok(check_self_improvement(&w, q, p, &grid)?.report)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FuzzSummary {
        seed,
        checks: vec![CheckStats::collect("self_improvement", &reports)],
    })
}
