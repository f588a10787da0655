//! The Hardy mean `Hf(x) = (1/(x−a)) ∫_a^x f` on an interval `[a, b]` and
//! integral inequalities with negative exponents:
//!
//! `∫_a^b (Hf)^{−p} ≤ ((p+1)/p)^q ∫_a^b (Hf)^{q−p} f^{−q}`,  `0 < q ≤ p`.
//!
//! Power weights anchored at `a` use closed forms; everything else goes
//! through adaptive quadrature with the inner integral evaluated exactly.

use serde::{Deserialize, Serialize};

use crate::discrete::unweighted_hardy_sides;
use crate::error::{HardyError, Result};
use crate::numerics::{adaptive_integral_with_breaks, Antiderivative, QuadratureConfig, Weight};
use crate::report::InequalityReport;

/// `|d·p − 1|` below this counts as the divergent borderline.
const BORDERLINE_TOL: f64 = 1e-12;

/// Running average of a weight from a fixed left endpoint.
#[derive(Debug, Clone)]
pub struct HardyMean<'w> {
    weight: &'w Weight,
    origin: f64,
    primitive: Antiderivative<'w>,
}

impl<'w> HardyMean<'w> {
    pub fn new(weight: &'w Weight, origin: f64) -> Result<Self> {
        Ok(Self {
            weight,
            origin,
            primitive: Antiderivative::new(weight, 1.0, origin)?,
        })
    }

    pub fn origin(&self) -> f64 {
        self.origin
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x > self.origin) {
            return Err(HardyError::Domain(format!(
                "Hardy mean needs x > {}, got {x}",
                self.origin
            )));
        }
        match self.weight {
            Weight::Power(w) if w.origin() == self.origin => {
                self.weight.check_interval(self.origin, x)?;
                Ok((x - self.origin).powf(w.exponent()) / (w.exponent() + 1.0))
            }
            _ => Ok(self.primitive.eval(x)? / (x - self.origin)),
        }
    }
}

/// `(1/(x − origin)) ∫_origin^x f`.
pub fn hardy_mean(weight: &Weight, origin: f64, x: f64) -> Result<f64> {
    HardyMean::new(weight, origin)?.eval(x)
}

fn check_pq(p: f64, q: f64) -> Result<()> {
    if !(p.is_finite() && q.is_finite() && p > 0.0 && q > 0.0 && q <= p) {
        return Err(HardyError::InvalidExponents(format!(
            "need 0 < q <= p, got p = {p}, q = {q}"
        )));
    }
    Ok(())
}

fn check_interval(weight: &Weight, a: f64, b: f64) -> Result<()> {
    weight.check_interval(a, b)?;
    if a >= b {
        return Err(HardyError::Domain(format!("empty interval ({a}, {b})")));
    }
    Ok(())
}

/// Exponent of a power weight anchored at `a`, if that is what `weight` is.
fn anchored_exponent(weight: &Weight, a: f64) -> Option<f64> {
    match weight {
        Weight::Power(w) if w.origin() == a => Some(w.exponent()),
        _ => None,
    }
}

fn check_convergence(weight: &Weight, a: f64, p: f64) -> Result<()> {
    if let Some(d) = anchored_exponent(weight, a) {
        if d * p >= 1.0 - BORDERLINE_TOL {
            return Err(HardyError::Divergent(format!(
                "(x-a)^{d} with p = {p}: both sides diverge once d·p >= 1"
            )));
        }
    }
    Ok(())
}

fn params(a: f64, b: f64, p: f64, q: f64) -> [(&'static str, f64); 4] {
    [("p", p), ("q", q), ("a", a), ("b", b)]
}

/// Both sides of the integral inequality; closed forms when the weight is
/// `(x − a)^d`, quadrature otherwise.
pub fn integral_sides(
    weight: &Weight,
    interval: (f64, f64),
    p: f64,
    q: f64,
    cfg: &QuadratureConfig,
) -> Result<InequalityReport> {
    let (a, b) = interval;
    check_pq(p, q)?;
    check_interval(weight, a, b)?;
    check_convergence(weight, a, p)?;
    match anchored_exponent(weight, a) {
        Some(d) => {
            let (lhs, rhs_integral) = power_sides(d, b - a, p, q);
            let rhs = ((p + 1.0) / p).powf(q) * rhs_integral;
            Ok(InequalityReport::le(lhs, rhs, &params(a, b, p, q)))
        }
        None => integral_sides_quadrature(weight, interval, p, q, cfg),
    }
}

/// `∫_0^L (Hf)^{−p}` and `∫_0^L (Hf)^{q−p} f^{−q}` for `f(x) = x^d`, `d·p < 1`.
fn power_sides(d: f64, len: f64, p: f64, q: f64) -> (f64, f64) {
    let k = 1.0 - d * p;
    let base = len.powf(k) / k;
    ((d + 1.0).powf(p) * base, (d + 1.0).powf(p - q) * base)
}

/// Both sides by adaptive quadrature regardless of weight family.
pub fn integral_sides_quadrature(
    weight: &Weight,
    interval: (f64, f64),
    p: f64,
    q: f64,
    cfg: &QuadratureConfig,
) -> Result<InequalityReport> {
    let (a, b) = interval;
    check_pq(p, q)?;
    check_interval(weight, a, b)?;
    check_convergence(weight, a, p)?;
    let mean = HardyMean::new(weight, a)?;
    let breaks = weight.breakpoints_within(a, b);
    let h = |x: f64| mean.eval(x).unwrap_or(f64::NAN);
    let lhs = adaptive_integral_with_breaks(|x| h(x).powf(-p), a, b, &breaks, cfg)?;
    let rhs_integral = adaptive_integral_with_breaks(
        |x| h(x).powf(q - p) * weight.eval(x).powf(-q),
        a,
        b,
        &breaks,
        cfg,
    )?;
    let rhs = ((p + 1.0) / p).powf(q) * rhs_integral.value;
    Ok(InequalityReport::le(lhs.value, rhs, &params(a, b, p, q)))
}

/// The equal-exponent case `q = p`: `∫ (Hf)^{−p} ≤ ((p+1)/p)^p ∫ f^{−p}`.
pub fn diagonal_integral_sides(
    weight: &Weight,
    interval: (f64, f64),
    p: f64,
    cfg: &QuadratureConfig,
) -> Result<InequalityReport> {
    integral_sides(weight, interval, p, p, cfg)
}

/// One point of the extremal sweep over `f(x) = x^d` on `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub d: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

/// Closed-form sides for `f(x) = x^d` on `(0, 1)`; the ratio
/// `((d+1)·p/(p+1))^q` climbs to 1 as `d → 1/p` from below.
pub fn sharpness_sweep(p: f64, q: f64, d_values: &[f64]) -> Result<Vec<SweepRow>> {
    check_pq(p, q)?;
    d_values
        .iter()
        .map(|&d| {
            if !(d > -1.0 && d * p < 1.0) {
                return Err(HardyError::Domain(format!(
                    "d = {d} must lie in (-1, 1/p) = (-1, {})",
                    1.0 / p
                )));
            }
            let (lhs, rhs_integral) = power_sides(d, 1.0, p, q);
            let rhs = ((p + 1.0) / p).powf(q) * rhs_integral;
            Ok(SweepRow {
                d,
                lhs,
                rhs,
                ratio: ((d + 1.0) * p / (p + 1.0)).powf(q),
            })
        })
        .collect()
}

/// Residual of the integration-by-parts identity
///
/// `α ∫_0^u ψ^{α−1} g = u ψ(u)^α + (α−1) ∫_0^u ψ^α`,  `ψ(t) = (1/t) ∫_0^t g`,
///
/// which requires `α > 1` and `t ψ(t)^α → 0` as `t → 0`. Both integrals are
/// computed by quadrature; ψ is exact.
pub fn parts_identity_residual(
    g: &Weight,
    alpha: f64,
    u: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let (lhs, rhs) = parts_identity_sides(g, alpha, u, cfg)?;
    Ok((lhs - rhs).abs())
}

/// Both sides of the integration-by-parts identity with the tolerance the
/// residual is held to: ten times the quadrature tolerance at the size of
/// the left side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartsIdentity {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub holds: bool,
}

pub fn parts_identity_check(
    g: &Weight,
    alpha: f64,
    u: f64,
    cfg: &QuadratureConfig,
) -> Result<PartsIdentity> {
    let (lhs, rhs) = parts_identity_sides(g, alpha, u, cfg)?;
    let residual = (lhs - rhs).abs();
    let tolerance = 10.0 * cfg.abs_tol.max(cfg.rel_tol * lhs.abs());
    Ok(PartsIdentity { lhs, rhs, residual, tolerance, holds: residual <= tolerance })
}

/// The two sides whose difference [`parts_identity_residual`] reports.
pub fn parts_identity_sides(
    g: &Weight,
    alpha: f64,
    u: f64,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64)> {
    if !(alpha.is_finite() && alpha > 1.0) {
        return Err(HardyError::Domain(format!("exponent must exceed 1, got {alpha}")));
    }
    check_interval(g, 0.0, u)?;
    let psi = HardyMean::new(g, 0.0)?;
    let probe_t = 1e-8;
    let probe = probe_t * psi.eval(probe_t)?.powf(alpha);
    if !(probe <= 1e-3) {
        return Err(HardyError::HypothesisViolated(format!(
            "t·ψ(t)^α = {probe:e} at t = {probe_t:e} does not vanish"
        )));
    }
    let breaks = g.breakpoints_within(0.0, u);
    let p = |t: f64| psi.eval(t).unwrap_or(f64::NAN);
    let lhs = alpha
        * adaptive_integral_with_breaks(|t| p(t).powf(alpha - 1.0) * g.eval(t), 0.0, u, &breaks, cfg)?
            .value;
    let tail = adaptive_integral_with_breaks(|t| p(t).powf(alpha), 0.0, u, &breaks, cfg)?.value;
    let rhs = u * psi.eval(u)?.powf(alpha) + (alpha - 1.0) * tail;
    Ok((lhs, rhs))
}

/// The unweighted series inequality for the cell averages of `f` over `n`
/// equal cells, with both sides scaled by the cell width so that they
/// approximate the integral sides.
pub fn discrete_approximation(
    weight: &Weight,
    interval: (f64, f64),
    p: f64,
    q: f64,
    n: usize,
) -> Result<InequalityReport> {
    let (a, b) = interval;
    check_interval(weight, a, b)?;
    let cells = weight.discretize(a, b, n)?;
    let r = unweighted_hardy_sides(cells.values(), p, q)?;
    let h = (b - a) / n as f64;
    let mut scaled = InequalityReport::le(r.lhs * h, r.rhs * h, &params(a, b, p, q));
    scaled.params.insert("cells".into(), n as f64);
    Ok(scaled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn mean_examples() {
        let lin = Weight::power(1.0).unwrap();
        assert_relative_eq!(hardy_mean(&lin, 0.0, 0.5).unwrap(), 0.25);
        let one = Weight::power(0.0).unwrap();
        assert_eq!(hardy_mean(&one, 0.0, 0.37).unwrap(), 1.0);
        let step = Weight::piecewise(vec![0.0, 0.5, 1.0], vec![1.0, 3.0]).unwrap();
        assert_eq!(hardy_mean(&step, 0.0, 1.0).unwrap(), 2.0);
        assert!(matches!(hardy_mean(&step, 0.5, 0.5), Err(HardyError::Domain(_))));
    }

    #[test]
    fn shifted_power_mean() {
        // mean of (t-0.2)^2 from 0.2 is (x-0.2)^2/3; from 0.5 it needs the primitive
        let w = Weight::Power(crate::numerics::PowerWeight::new(2.0, 0.2).unwrap());
        assert_relative_eq!(hardy_mean(&w, 0.2, 0.8).unwrap(), 0.36 / 3.0, max_relative = 1e-15);
        let want = (0.6f64.powi(3) - 0.3f64.powi(3)) / 3.0 / 0.3;
        assert_relative_eq!(hardy_mean(&w, 0.5, 0.8).unwrap(), want, max_relative = 1e-14);
    }

    #[test]
    fn identity_weight_half_exponents() {
        let w = Weight::power(1.0).unwrap();
        let r = integral_sides(&w, (0.0, 1.0), 0.5, 0.5, &cfg()).unwrap();
        assert_relative_eq!(r.lhs, 2.0 * 2f64.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(r.rhs, 2.0 * 3f64.sqrt(), max_relative = 1e-14);
        assert!(r.holds);
    }

    #[test]
    fn power_ratio_is_d_plus_one_to_q() {
        for (d, p, q) in [(0.3, 2.0, 1.0), (-0.5, 3.0, 2.5), (0.9, 1.0, 0.2)] {
            let w = Weight::power(d).unwrap();
            let r = integral_sides(&w, (0.0, 1.0), p, q, &cfg()).unwrap();
            let c = ((p + 1.0) / p).powf(q);
            assert_relative_eq!(r.lhs / (r.rhs / c), (d + 1.0f64).powf(q), max_relative = 1e-13);
        }
    }

    #[test]
    fn constant_weight() {
        let w = Weight::constant(3.0).unwrap();
        let r = integral_sides(&w, (0.0, 1.0), 2.0, 1.0, &cfg()).unwrap();
        assert_relative_eq!(r.lhs, 1.0 / 9.0, max_relative = 1e-12);
        assert_relative_eq!(r.rhs, 1.5 / 9.0, max_relative = 1e-12);
        assert_relative_eq!(r.ratio, 2.0 / 3.0, max_relative = 1e-12);
    }

    #[test]
    fn diagonal_examples() {
        let w = Weight::power(1.0).unwrap();
        let r = diagonal_integral_sides(&w, (0.0, 1.0), 0.5, &cfg()).unwrap();
        assert_relative_eq!(r.lhs, 2.0 * 2f64.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(r.rhs, 3f64.sqrt() * 2.0, max_relative = 1e-14);
        let r = diagonal_integral_sides(&Weight::constant(1.0).unwrap(), (0.0, 1.0), 1.0, &cfg())
            .unwrap();
        assert_relative_eq!(r.lhs, 1.0, max_relative = 1e-12);
        assert_relative_eq!(r.rhs, 2.0, max_relative = 1e-12);
        let r = diagonal_integral_sides(&Weight::power(0.49).unwrap(), (0.0, 1.0), 1.0, &cfg())
            .unwrap();
        assert_relative_eq!(r.ratio, 1.49 / 2.0, max_relative = 1e-13);
    }

    #[test]
    fn divergent_power() {
        let w = Weight::power(0.5).unwrap();
        assert!(matches!(
            integral_sides(&w, (0.0, 1.0), 2.0, 1.0, &cfg()),
            Err(HardyError::Divergent(_))
        ));
        assert!(matches!(
            integral_sides_quadrature(&w, (0.0, 1.0), 3.0, 1.0, &cfg()),
            Err(HardyError::Divergent(_))
        ));
    }

    #[test]
    fn quadrature_matches_closed_form() {
        for (d, p, q) in [(1.0, 0.5, 0.5), (0.5, 1.0, 0.5), (-0.3, 2.0, 1.0), (2.0, 0.25, 0.1)] {
            let w = Weight::power(d).unwrap();
            let exact = integral_sides(&w, (0.0, 1.0), p, q, &cfg()).unwrap();
            let quad = integral_sides_quadrature(&w, (0.0, 1.0), p, q, &cfg()).unwrap();
            assert_relative_eq!(quad.lhs, exact.lhs, max_relative = 1e-7);
            assert_relative_eq!(quad.rhs, exact.rhs, max_relative = 1e-7);
        }
    }

    #[test]
    fn sweep_examples() {
        let rows = sharpness_sweep(2.0, 2.0, &[0.49]).unwrap();
        assert_relative_eq!(rows[0].ratio, (1.49f64 / 1.5).powi(2), max_relative = 1e-14);
        assert_relative_eq!(rows[0].ratio, rows[0].lhs / rows[0].rhs, max_relative = 1e-13);
        let rows = sharpness_sweep(2.0, 1.0, &[0.0]).unwrap();
        assert_relative_eq!(rows[0].ratio, 2.0 / 3.0, max_relative = 1e-15);
        let rows = sharpness_sweep(1.0, 1.0, &[0.999]).unwrap();
        assert_relative_eq!(rows[0].ratio, 0.9995, max_relative = 1e-14);
        assert!(sharpness_sweep(2.0, 1.0, &[0.5]).is_err());
        assert!(sharpness_sweep(2.0, 1.0, &[-1.0]).is_err());
    }

    #[test]
    fn parts_identity_examples() {
        let one = Weight::constant(1.0).unwrap();
        assert!(parts_identity_residual(&one, 2.5, 0.7, &cfg()).unwrap() < 1e-12);
        // g(t) = t: both sides equal 1/3 at α = 2, u = 1
        let lin = Weight::power(1.0).unwrap();
        let (l, r) = parts_identity_sides(&lin, 2.0, 1.0, &cfg()).unwrap();
        assert_relative_eq!(l, 1.0 / 3.0, max_relative = 1e-9);
        assert_relative_eq!(r, 1.0 / 3.0, max_relative = 1e-9);
        let root = Weight::power(0.5).unwrap();
        assert!(parts_identity_residual(&root, 3.0, 1.0, &cfg()).unwrap() <= 1e-8);
        assert!(matches!(
            parts_identity_residual(&one, 1.0, 1.0, &cfg()),
            Err(HardyError::Domain(_))
        ));
    }

    #[test]
    fn parts_identity_hypothesis_probe() {
        // ψ(t) = t^{-0.9}/0.1, so t·ψ^α blows up at 0 for α = 3
        let g = Weight::power(-0.9).unwrap();
        assert!(matches!(
            parts_identity_residual(&g, 3.0, 1.0, &cfg()),
            Err(HardyError::HypothesisViolated(_))
        ));
    }

    #[test]
    fn discretized_identity_tracks_integral() {
        let w = Weight::power(1.0).unwrap();
        let exact = integral_sides(&w, (0.0, 1.0), 0.5, 0.5, &cfg()).unwrap();
        let approx = discrete_approximation(&w, (0.0, 1.0), 0.5, 0.5, 2000).unwrap();
        assert!((approx.lhs / exact.lhs - 1.0).abs() < 3e-2);
        assert!((approx.rhs / exact.rhs - 1.0).abs() < 3e-2);
    }
}
