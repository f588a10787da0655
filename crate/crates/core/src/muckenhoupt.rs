//! Muckenhoupt `A_p` characteristics of weights on `[0, 1]`, the critical
//! exponent below which an `A_q` bound cannot self-improve, and the
//! explicit self-improvement constant for non-decreasing weights.
//!
//! The `A_p` characteristic of `f` on `(a, b)` is
//! `(avg f)·(avg f^{−1/(p−1)})^{p−1}`. It is at least 1 and invariant
//! under `f ↦ c·f`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{HardyError, Result};
use crate::numerics::{bisect, Weight};
use crate::report::{float, InequalityReport};

/// Exponent slack used when comparing `p` against the critical exponent.
const CRITICAL_TOL: f64 = 1e-12;

pub fn ap_characteristic(weight: &Weight, p: f64, interval: (f64, f64)) -> Result<f64> {
    let (a, b) = interval;
    if !(p.is_finite() && p > 1.0) {
        return Err(HardyError::InvalidExponents(format!("A_p needs p > 1, got {p}")));
    }
    if !(a < b) {
        return Err(HardyError::Domain(format!("empty interval ({a}, {b})")));
    }
    let len = b - a;
    let mean = weight.integrate_power(1.0, a, b)? / len;
    let dual = weight.integrate_power(-1.0 / (p - 1.0), a, b)? / len;
    Ok(mean * dual.powf(p - 1.0))
}

/// Which family of intervals a scan covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanKind {
    Prefix,
    Suffix,
    Interval,
}

/// `A_p` characteristics over a list of intervals. Divergent intervals
/// record `+∞`, serialized as `"inf"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApScan {
    pub exponent: f64,
    pub kind: ScanKind,
    pub grid: Vec<(f64, f64)>,
    #[serde(with = "float::vec")]
    pub characteristics: Vec<f64>,
    #[serde(with = "float")]
    pub sup: f64,
    pub monotone: bool,
    pub weight_id: String,
}

/// Short human-readable label for a weight.
pub fn weight_id(weight: &Weight) -> String {
    match weight {
        Weight::Power(w) => format!("power(a={}, origin={})", w.exponent(), w.origin()),
        Weight::Piecewise(w) => format!("piecewise(cells={})", w.values().len()),
    }
}

fn scan(weight: &Weight, p: f64, kind: ScanKind, grid: Vec<(f64, f64)>) -> Result<ApScan> {
    if grid.is_empty() {
        return Err(HardyError::Domain("empty scan grid".into()));
    }
    let characteristics = grid
        .par_iter()
        .map(|&iv| match ap_characteristic(weight, p, iv) {
            Err(HardyError::Divergent(_)) => Ok(f64::INFINITY),
            other => other,
        })
        .collect::<Result<Vec<_>>>()?;
    let sup = characteristics.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(ApScan {
        exponent: p,
        kind,
        grid,
        characteristics,
        sup,
        monotone: weight.is_nondecreasing(),
        weight_id: weight_id(weight),
    })
}

/// Characteristics over `(0, t)` for each `t` in `(0, 1]`.
pub fn prefix_scan(weight: &Weight, p: f64, ts: &[f64]) -> Result<ApScan> {
    if let Some(t) = ts.iter().find(|t| !(**t > 0.0 && **t <= 1.0)) {
        return Err(HardyError::Domain(format!("prefix endpoint {t} outside (0, 1]")));
    }
    scan(weight, p, ScanKind::Prefix, ts.iter().map(|&t| (0.0, t)).collect())
}

/// Characteristics over `(t, 1)` for each `t` in `[0, 1)`.
pub fn suffix_scan(weight: &Weight, p: f64, ts: &[f64]) -> Result<ApScan> {
    if let Some(t) = ts.iter().find(|t| !(**t >= 0.0 && **t < 1.0)) {
        return Err(HardyError::Domain(format!("suffix endpoint {t} outside [0, 1)")));
    }
    scan(weight, p, ScanKind::Suffix, ts.iter().map(|&t| (t, 1.0)).collect())
}

/// Characteristics over arbitrary subintervals `(a, b)` of `[0, 1]`.
pub fn interval_scan(weight: &Weight, p: f64, intervals: &[(f64, f64)]) -> Result<ApScan> {
    if let Some(iv) = intervals
        .iter()
        .find(|(a, b)| !(*a >= 0.0 && a < b && *b <= 1.0))
    {
        return Err(HardyError::Domain(format!("interval {iv:?} not inside [0, 1]")));
    }
    scan(weight, p, ScanKind::Interval, intervals.to_vec())
}

/// Compares the all-interval supremum against prefix and suffix suprema.
/// For monotone weights the former is finite whenever the latter are.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalClassComparison {
    pub exponent: f64,
    #[serde(with = "float")]
    pub prefix_sup: f64,
    #[serde(with = "float")]
    pub suffix_sup: f64,
    #[serde(with = "float")]
    pub interval_sup: f64,
    /// `interval_sup / max(prefix_sup, suffix_sup)`.
    #[serde(with = "float")]
    pub ratio: f64,
    pub monotone: bool,
}

pub fn compare_interval_classes(
    weight: &Weight,
    p: f64,
    grid: &GridSpec,
) -> Result<IntervalClassComparison> {
    let prefix = prefix_scan(weight, p, &grid.prefix_points())?;
    let suffix = suffix_scan(weight, p, &grid.suffix_points())?;
    let all = interval_scan(weight, p, &grid.interval_pairs())?;
    let one_sided = prefix.sup.max(suffix.sup);
    Ok(IntervalClassComparison {
        exponent: p,
        prefix_sup: prefix.sup,
        suffix_sup: suffix.sup,
        interval_sup: all.sup,
        ratio: all.sup / one_sided,
        monotone: all.monotone,
    })
}

/// Root of `((q−p)/(q−1))·(M p)^{1/(q−1)} = 1` in `[1, q]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct P0Solution {
    pub p0: f64,
    pub residual: f64,
    pub iterations: usize,
    pub q: f64,
    #[serde(rename = "M")]
    pub m: f64,
}

fn threshold_gap(p: f64, q: f64, m: f64) -> f64 {
    (q - p) / (q - 1.0) * (m * p).powf(1.0 / (q - 1.0)) - 1.0
}

/// The critical exponent `p₀(q, M)`: an `A_q` weight with constant `M`
/// improves to `A_p` for every `p ∈ (p₀, q]` and no further.
///
/// The defining function is strictly decreasing on `(1, q]`, positive or
/// zero at 1 and equal to −1 at `q`, so bisection finds the unique root.
pub fn critical_exponent(q: f64, m: f64) -> Result<P0Solution> {
    if !(q.is_finite() && q > 1.0) || !(m.is_finite() && m >= 1.0) {
        return Err(HardyError::Domain(format!("need q > 1 and M >= 1, got q = {q}, M = {m}")));
    }
    let root = bisect(|p| threshold_gap(p, q, m), 1.0, q, 0.0)?;
    Ok(P0Solution {
        p0: root.x,
        residual: root.value,
        iterations: root.iterations,
        q,
        m,
    })
}

/// Prefix characteristic of `t^a`, the same on every `(0, t)`.
pub fn power_weight_constant(q: f64, a: f64) -> Result<f64> {
    if !(q.is_finite() && q > 1.0 && a > 0.0 && a < q - 1.0) {
        return Err(HardyError::Domain(format!("need q > 1 and 0 < a < q - 1, got q = {q}, a = {a}")));
    }
    Ok(((q - 1.0) / (q - 1.0 - a)).powf(q - 1.0) / (a + 1.0))
}

/// Intermediate constants of the self-improvement bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImprovementConstants {
    pub p0: f64,
    /// `M^{1/(q−1)}`.
    pub c: f64,
    /// `1 − ((q−p)/(q−1))·p^{1/(q−1)}·c`, positive exactly when `p > p₀`.
    pub k: f64,
    /// Bound on `avg f^{−1/(p−1)} / (avg f)^{−1/(p−1)}` over prefixes.
    pub lambda: f64,
    /// `Λ^{p−1}`, the resulting `A_p` constant.
    pub bound: f64,
}

pub fn self_improvement_constants(p: f64, q: f64, m: f64) -> Result<ImprovementConstants> {
    let sol = critical_exponent(q, m)?;
    if !(p.is_finite() && p > 1.0 && p <= q) {
        return Err(HardyError::OutOfRange(format!("p = {p} must lie in (1, q] = (1, {q}]")));
    }
    let c = m.powf(1.0 / (q - 1.0));
    if p == q {
        return Ok(ImprovementConstants {
            p0: sol.p0,
            c,
            k: 1.0,
            lambda: m.powf(1.0 / (q - 1.0)),
            bound: m,
        });
    }
    let k = 1.0 - (q - p) / (q - 1.0) * p.powf(1.0 / (q - 1.0)) * c;
    if p <= sol.p0 + CRITICAL_TOL * q || k <= 0.0 {
        return Err(HardyError::OutOfRange(format!(
            "p = {p} is not above the critical exponent p0 = {}",
            sol.p0
        )));
    }
    let lambda = (p - 1.0) / (q - 1.0) * m.powf(1.0 / (p - 1.0)) * c.powf(-(q - p) / (p - 1.0)) / k;
    Ok(ImprovementConstants {
        p0: sol.p0,
        c,
        k,
        lambda,
        bound: lambda.powf(p - 1.0),
    })
}

/// `M′(p, q, M)`: an `A_p` constant over prefixes for any non-decreasing
/// weight whose prefix `A_q` constant is at most `M`.
pub fn self_improvement_bound(p: f64, q: f64, m: f64) -> Result<f64> {
    Ok(self_improvement_constants(p, q, m)?.bound)
}

/// Outcome of checking measured prefix `A_p` against `M′`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelfImprovementCheck {
    pub report: InequalityReport,
    #[serde(rename = "M")]
    pub m: f64,
    pub p0: f64,
    #[serde(rename = "M_prime")]
    pub m_prime: f64,
}

/// Measures the prefix `A_q` constant `M` of a non-decreasing weight on
/// `grid`, then checks the measured prefix `A_p` supremum against `M′(p, q, M)`.
pub fn check_self_improvement(
    weight: &Weight,
    q: f64,
    p: f64,
    grid: &[f64],
) -> Result<SelfImprovementCheck> {
    if !weight.is_nondecreasing() {
        return Err(HardyError::NotMonotone);
    }
    let aq = prefix_scan(weight, q, grid)?;
    if !aq.sup.is_finite() {
        return Err(HardyError::Divergent(format!("weight is not in prefix A_{q}")));
    }
    // the characteristic is ≥ 1; clamp rounding below it
    let m = aq.sup.max(1.0);
    let constants = self_improvement_constants(p, q, m)?;
    let ap = prefix_scan(weight, p, grid)?;
    let report = InequalityReport::le(ap.sup, constants.bound, &[("p", p), ("q", q), ("M", m)]);
    Ok(SelfImprovementCheck {
        report,
        m,
        p0: constants.p0,
        m_prime: constants.bound,
    })
}

/// Point sets for scans. Text form: `geom:N` (`2^{-j}`, `j = 0..=N`),
/// `lin:N` (N equal steps) or an explicit comma-separated list.
#[derive(Debug, Clone, PartialEq)]
pub enum GridSpec {
    Geometric(u32),
    Linear(usize),
    Explicit(Vec<f64>),
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec::Geometric(40)
    }
}

impl std::str::FromStr for GridSpec {
    type Err = HardyError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |what: &str| HardyError::Parse(format!("bad grid spec {s:?}: {what}"));
        let s = s.trim();
        if let Some(n) = s.strip_prefix("geom:") {
            let n: u32 = n.parse().map_err(|_| bad("expected geom:<count>"))?;
            if n > 1000 {
                return Err(bad("geometric depth above 1000 underflows"));
            }
            Ok(GridSpec::Geometric(n))
        } else if let Some(n) = s.strip_prefix("lin:") {
            let n: usize = n.parse().map_err(|_| bad("expected lin:<count>"))?;
            if n == 0 {
                return Err(bad("need at least one step"));
            }
            Ok(GridSpec::Linear(n))
        } else {
            let pts = s
                .split(',')
                .map(|x| x.trim().parse::<f64>().map_err(|_| bad("expected numbers")))
                .collect::<Result<Vec<_>>>()?;
            if pts.is_empty() || pts.iter().any(|x| !x.is_finite()) {
                return Err(bad("expected finite numbers"));
            }
            Ok(GridSpec::Explicit(pts))
        }
    }
}

impl GridSpec {
    /// Endpoints `t ∈ (0, 1]` for prefix scans.
    pub fn prefix_points(&self) -> Vec<f64> {
        match self {
            GridSpec::Geometric(n) => (0..=*n).map(|j| 0.5f64.powi(j as i32)).collect(),
            GridSpec::Linear(n) => (1..=*n).map(|i| i as f64 / *n as f64).collect(),
            GridSpec::Explicit(v) => v.clone(),
        }
    }

    /// Endpoints `t ∈ [0, 1)` for suffix scans.
    pub fn suffix_points(&self) -> Vec<f64> {
        match self {
            GridSpec::Geometric(n) => (0..=*n)
                .map(|j| 1.0 - 0.5f64.powi(j as i32))
                .filter(|&t| t < 1.0)
                .collect(),
            GridSpec::Linear(n) => (0..*n).map(|i| i as f64 / *n as f64).collect(),
            GridSpec::Explicit(v) => v.clone(),
        }
    }

    /// All pairs `a < b` drawn from the grid's points in `[0, 1]`.
    pub fn interval_pairs(&self) -> Vec<(f64, f64)> {
        let mut pts = match self {
            GridSpec::Explicit(v) => v.clone(),
            _ => {
                let mut v = self.prefix_points();
                v.extend(self.suffix_points());
                v
            }
        };
        pts.retain(|x| (0.0..=1.0).contains(x));
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        let mut pairs = Vec::with_capacity(pts.len() * pts.len().saturating_sub(1) / 2);
        for (i, &a) in pts.iter().enumerate() {
            for &b in &pts[i + 1..] {
                pairs.push((a, b));
            }
        }
        pairs
    }
}
