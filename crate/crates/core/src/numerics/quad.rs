//! Globally adaptive Gauss–Kronrod (G10/K21) quadrature.
//!
//! Intervals are kept in a max-heap keyed by local error estimate and the
//! worst one is bisected until the summed estimate meets tolerance. An
//! integrable power singularity at an endpoint produces a geometric cascade
//! of bisections toward it. Intervals narrower than `singularity_offset`
//! (scaled by `max(1, |x|)`) are frozen rather than split further; a frozen
//! interval touching an endpoint is replaced by the sum of a geometric
//! series fitted to three dyadic shells next to that endpoint.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::sum::compensated_sum;
use crate::error::{HardyError, Result};

const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208323457306,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

// Gauss weights for the odd-indexed Kronrod nodes XGK[1], XGK[3], ...
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    pub singularity_offset: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-9,
            max_subdivisions: 20_000,
            singularity_offset: 1e-14,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        if !ok(self.abs_tol) || !ok(self.rel_tol) || !ok(self.singularity_offset) {
            return Err(HardyError::Domain(
                "quadrature tolerances must be finite and positive".into(),
            ));
        }
        if self.max_subdivisions == 0 {
            return Err(HardyError::Domain("max_subdivisions must be at least 1".into()));
        }
        Ok(())
    }

    /// Same config with both tolerances replaced.
    pub fn with_tol(self, tol: f64) -> Self {
        Self {
            abs_tol: tol,
            rel_tol: tol,
            ..self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub subdivisions: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        scaled = res_asc * (200.0 * scaled / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

fn kronrod21<F: Fn(f64) -> f64>(g: &F, lo: f64, hi: f64) -> Result<Segment> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let eval = |x: f64| {
        let y = g(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(HardyError::Divergent(format!("integrand is {y} at x = {x}")))
        }
    };

    let f_center = eval(center)?;
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    let mut res_k = WGK[10] * f_center;
    let mut res_g = 0.0;
    let mut res_abs = WGK[10] * f_center.abs();
    for j in 0..10 {
        let dx = half * XGK[j];
        let (f1, f2) = (eval(center - dx)?, eval(center + dx)?);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (f_center - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let scale = half.abs();
    Ok(Segment {
        lo,
        hi,
        value: res_k * half,
        error: rescale_error((res_k - res_g) * half, res_abs * scale, res_asc * scale),
    })
}

#[derive(Debug, Clone, Copy)]
enum Endpoint {
    Left,
    Right,
}

/// Integral over a segment touching a (possibly singular) endpoint, from
/// the dyadic shells at distances `[w/2, w]`, `[w/4, w/2]`, `[w/8, w/4]`.
/// For `g ~ C·r^β` near the endpoint consecutive shells shrink by a fixed
/// ratio `2^{-(β+1)}`, and the remaining shells sum as a geometric series.
/// Returns `None` when the shells do not decay geometrically.
fn endpoint_tail<F: Fn(f64) -> f64>(g: &F, seg: Segment, end: Endpoint) -> Result<Option<Segment>> {
    let w = seg.hi - seg.lo;
    let at = |r: f64| match end {
        Endpoint::Left => seg.lo + r,
        Endpoint::Right => seg.hi - r,
    };
    let shell = |outer: f64| -> Result<Segment> {
        let (a, b) = (at(outer), at(0.5 * outer));
        if a < b {
            kronrod21(g, a, b)
        } else {
            kronrod21(g, b, a)
        }
    };
    let s1 = shell(w)?;
    let s2 = shell(0.5 * w)?;
    let s3 = shell(0.25 * w)?;
    let (i1, i2, i3) = (s1.value, s2.value, s3.value);
    if i1 == 0.0 || i2 == 0.0 || i3 == 0.0 || i1.signum() != i2.signum() || i2.signum() != i3.signum() {
        return Ok(None);
    }
    let (rho_near, rho_far) = (i3 / i2, i2 / i1);
    if !(rho_near > 0.0 && rho_near < 1.0 && rho_far > 0.0 && rho_far < 1.0) {
        return Ok(None);
    }
    let value = i1 + i2 + i3 / (1.0 - rho_near);
    let alternative = i1 + i2 / (1.0 - rho_far);
    Ok(Some(Segment {
        lo: seg.lo,
        hi: seg.hi,
        value,
        error: (value - alternative).abs() + s1.error + s2.error + s3.error / (1.0 - rho_near),
    }))
}

/// `∫_lo^hi g` to within `max(abs_tol, rel_tol·|value|)`.
pub fn adaptive_integral<F: Fn(f64) -> f64>(
    g: F,
    lo: f64,
    hi: f64,
    cfg: &QuadratureConfig,
) -> Result<Quadrature> {
    adaptive_integral_with_breaks(g, lo, hi, &[], cfg)
}

/// As [`adaptive_integral`], starting from a partition at `breaks`
/// (points outside `(lo, hi)` are ignored).
pub fn adaptive_integral_with_breaks<F: Fn(f64) -> f64>(
    g: F,
    lo: f64,
    hi: f64,
    breaks: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Quadrature> {
    cfg.validate()?;
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(HardyError::Domain(format!("bad integration interval ({lo}, {hi})")));
    }
    if lo == hi {
        return Ok(Quadrature {
            value: 0.0,
            error: 0.0,
            subdivisions: 0,
        });
    }

    let mut points = vec![lo];
    let mut inner: Vec<f64> = breaks.iter().copied().filter(|&x| x > lo && x < hi).collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    points.extend(inner);
    points.push(hi);

    let mut heap = BinaryHeap::new();
    for w in points.windows(2) {
        heap.push(kronrod21(&g, w[0], w[1])?);
    }
    let mut frozen: Vec<Segment> = Vec::new();
    let mut subdivisions = 0usize;

    let totals = |heap: &BinaryHeap<Segment>, frozen: &[Segment]| {
        let all = || heap.iter().chain(frozen.iter());
        (
            compensated_sum(all().map(|s| s.value)),
            compensated_sum(all().map(|s| s.error)),
        )
    };
    let (mut value, mut error) = totals(&heap, &frozen);

    loop {
        let target = cfg.abs_tol.max(cfg.rel_tol * value.abs());
        if error <= target {
            // running totals drift; confirm with a fresh sum before stopping
            (value, error) = totals(&heap, &frozen);
            if error <= cfg.abs_tol.max(cfg.rel_tol * value.abs()) {
                return Ok(Quadrature {
                    value,
                    error,
                    subdivisions,
                });
            }
        }
        let Some(worst) = heap.pop() else {
            return Err(HardyError::ToleranceNotMet {
                estimate: value,
                error,
                subdivisions,
            });
        };
        let mid = 0.5 * (worst.lo + worst.hi);
        let min_width = cfg.singularity_offset * mid.abs().max(1.0);
        if worst.hi - worst.lo <= min_width || mid <= worst.lo || mid >= worst.hi {
            let end = if worst.lo == lo {
                Some(Endpoint::Left)
            } else if worst.hi == hi {
                Some(Endpoint::Right)
            } else {
                None
            };
            let settled = match end.map(|e| endpoint_tail(&g, worst, e)) {
                Some(Ok(Some(tail))) => tail,
                Some(Err(e)) => return Err(e),
                _ => worst,
            };
            value += settled.value - worst.value;
            error += settled.error - worst.error;
            frozen.push(settled);
            continue;
        }
        if subdivisions >= cfg.max_subdivisions {
            heap.push(worst);
            let (value, error) = totals(&heap, &frozen);
            return Err(HardyError::ToleranceNotMet {
                estimate: value,
                error,
                subdivisions,
            });
        }
        subdivisions += 1;
        let left = kronrod21(&g, worst.lo, mid)?;
        let right = kronrod21(&g, mid, worst.hi)?;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
}
