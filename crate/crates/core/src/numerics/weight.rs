//! Positive weights on an interval: power weights `(t - origin)^a` and
//! piecewise-constant weights. Both families integrate `f^s` in closed form.

use serde::{Deserialize, Serialize};

use super::sum::{compensated_sum, running_sums};
use crate::error::{HardyError, Result};

/// `|s·a + 1|` at or below this is treated as the critical (log) exponent.
const CRITICAL_EXPONENT_TOL: f64 = 1e-12;

/// `f(t) = (t - origin)^exponent` on `[origin, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerWeight {
    exponent: f64,
    origin: f64,
}

impl PowerWeight {
    pub fn new(exponent: f64, origin: f64) -> Result<Self> {
        if !exponent.is_finite() || !origin.is_finite() {
            return Err(HardyError::InvalidWeight("non-finite power weight parameters".into()));
        }
        if exponent <= -1.0 {
            return Err(HardyError::InvalidWeight(format!(
                "exponent {exponent} must exceed -1 for local integrability"
            )));
        }
        Ok(Self { exponent, origin })
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn origin(&self) -> f64 {
        self.origin
    }

    fn integrate_power(&self, s: f64, lo: f64, hi: f64) -> Result<f64> {
        let e = s * self.exponent;
        let k = e + 1.0;
        let near = hi - self.origin;
        let far = lo - self.origin;
        if lo == hi {
            return Ok(0.0);
        }
        if far == 0.0 {
            if k <= CRITICAL_EXPONENT_TOL * e.abs().max(1.0) {
                return Err(HardyError::Divergent(format!(
                    "integral of t^{e} from the origin diverges"
                )));
            }
            return Ok(near.powf(k) / k);
        }
        let log_ratio = (near / far).ln();
        if k.abs() <= CRITICAL_EXPONENT_TOL {
            return Ok(log_ratio);
        }
        // (H^k - L^k)/k without cancellation near k = 0.
        Ok(far.powf(k) * (k * log_ratio).exp_m1() / k)
    }
}

/// A step function on `[x_0, x_k]` with one positive value per cell.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseConstantWeight {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    monotone: bool,
}

impl PiecewiseConstantWeight {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() || breakpoints.len() != values.len() + 1 {
            return Err(HardyError::InvalidWeight(format!(
                "{} breakpoints cannot bound {} cells",
                breakpoints.len(),
                values.len()
            )));
        }
        if breakpoints.iter().any(|x| !x.is_finite()) {
            return Err(HardyError::InvalidWeight("non-finite breakpoint".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(HardyError::InvalidWeight(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        if values.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(HardyError::InvalidWeight(
                "cell values must be finite and strictly positive".into(),
            ));
        }
        Ok(Self {
            breakpoints,
            values,
            monotone: false,
        })
    }

    /// Like [`new`](Self::new) but asserts the values are non-decreasing.
    pub fn new_monotone(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let mut w = Self::new(breakpoints, values)?;
        if !w.is_nondecreasing() {
            return Err(HardyError::InvalidWeight(
                "monotone flag set but values decrease".into(),
            ));
        }
        w.monotone = true;
        Ok(w)
    }

    /// Equal cells on `[lo, hi]`.
    pub fn uniform(lo: f64, hi: f64, values: Vec<f64>) -> Result<Self> {
        let n = values.len();
        if n == 0 || !(lo < hi) {
            return Err(HardyError::InvalidWeight("empty uniform grid".into()));
        }
        let breakpoints = (0..=n)
            .map(|i| if i == n { hi } else { lo + (hi - lo) * i as f64 / n as f64 })
            .collect();
        Self::new(breakpoints, values)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Whether the monotone flag was set at construction.
    pub fn monotone_flag(&self) -> bool {
        self.monotone
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }

    /// Index of the cell containing `x` (cells are closed on the left).
    pub fn cell_index(&self, x: f64) -> usize {
        let k = self.values.len();
        self.breakpoints[1..k].partition_point(|&b| b <= x)
    }

    fn integrate_power(&self, s: f64, lo: f64, hi: f64) -> f64 {
        if s == 0.0 {
            return hi - lo;
        }
        let first = self.cell_index(lo);
        compensated_sum(
            (first..self.values.len())
                .take_while(|&i| self.breakpoints[i] < hi)
                .map(|i| {
                    let overlap = hi.min(self.breakpoints[i + 1]) - lo.max(self.breakpoints[i]);
                    self.values[i].powf(s) * overlap.max(0.0)
                }),
        )
    }
}

/// A positive weight from one of the two supported families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WeightSpec", into = "WeightSpec")]
pub enum Weight {
    Power(PowerWeight),
    Piecewise(PiecewiseConstantWeight),
}

impl Weight {
    pub fn power(exponent: f64) -> Result<Self> {
        Ok(Weight::Power(PowerWeight::new(exponent, 0.0)?))
    }

    pub fn constant(value: f64) -> Result<Self> {
        Ok(Weight::Piecewise(PiecewiseConstantWeight::new(
            vec![0.0, 1.0],
            vec![value],
        )?))
    }

    pub fn piecewise(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        Ok(Weight::Piecewise(PiecewiseConstantWeight::new(breakpoints, values)?))
    }

    /// Closed domain `[lo, hi]`; power weights extend to `+∞`.
    pub fn domain(&self) -> (f64, f64) {
        match self {
            Weight::Power(w) => (w.origin, f64::INFINITY),
            Weight::Piecewise(w) => (w.breakpoints[0], *w.breakpoints.last().unwrap()),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Weight::Power(w) => (x - w.origin).powf(w.exponent),
            Weight::Piecewise(w) => w.values[w.cell_index(x)],
        }
    }

    pub fn is_nondecreasing(&self) -> bool {
        match self {
            Weight::Power(w) => w.exponent >= 0.0,
            Weight::Piecewise(w) => w.is_nondecreasing(),
        }
    }

    /// Points where the weight (or a derivative) is not smooth.
    pub fn breakpoints_within(&self, lo: f64, hi: f64) -> Vec<f64> {
        match self {
            Weight::Power(w) if w.origin > lo && w.origin < hi => vec![w.origin],
            Weight::Power(_) => Vec::new(),
            Weight::Piecewise(w) => w
                .breakpoints
                .iter()
                .copied()
                .filter(|&x| x > lo && x < hi)
                .collect(),
        }
    }

    /// `c·f`. Power weights have no amplitude, so only `c = 1` is accepted for them.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        match self {
            Weight::Piecewise(w) => Ok(Weight::Piecewise(PiecewiseConstantWeight {
                breakpoints: w.breakpoints.clone(),
                values: w.values.iter().map(|v| v * c).collect(),
                monotone: w.monotone,
            })),
            Weight::Power(_) if c == 1.0 => Ok(self.clone()),
            Weight::Power(_) => Err(HardyError::InvalidWeight(
                "power weights carry no amplitude".into(),
            )),
        }
    }

    pub fn check_interval(&self, lo: f64, hi: f64) -> Result<()> {
        let (dlo, dhi) = self.domain();
        if !(lo.is_finite() && hi.is_finite()) || lo > hi || lo < dlo || hi > dhi {
            return Err(HardyError::Domain(format!(
                "interval ({lo}, {hi}) is not inside the weight domain [{dlo}, {dhi}]"
            )));
        }
        Ok(())
    }

    /// Exact `∫_lo^hi f(t)^s dt`.
    pub fn integrate_power(&self, s: f64, lo: f64, hi: f64) -> Result<f64> {
        self.check_interval(lo, hi)?;
        match self {
            Weight::Power(w) => w.integrate_power(s, lo, hi),
            Weight::Piecewise(w) => Ok(w.integrate_power(s, lo, hi)),
        }
    }

    /// Cell averages of `f` over `n` equal cells of `[lo, hi]`.
    pub fn discretize(&self, lo: f64, hi: f64, n: usize) -> Result<PiecewiseConstantWeight> {
        self.check_interval(lo, hi)?;
        if n == 0 {
            return Err(HardyError::Domain("need at least one cell".into()));
        }
        let edges: Vec<f64> = (0..=n)
            .map(|i| if i == n { hi } else { lo + (hi - lo) * i as f64 / n as f64 })
            .collect();
        let values = edges
            .windows(2)
            .map(|c| Ok(self.integrate_power(1.0, c[0], c[1])? / (c[1] - c[0])))
            .collect::<Result<Vec<_>>>()?;
        PiecewiseConstantWeight::new(edges, values)
    }
}

/// `x ↦ ∫_from^x f^s`, with piecewise prefix tables precomputed.
#[derive(Debug, Clone)]
pub struct Antiderivative<'w> {
    weight: &'w Weight,
    s: f64,
    from: f64,
    // piecewise only: integral from x_0 to each breakpoint
    prefix: Vec<f64>,
    offset: f64,
}

impl<'w> Antiderivative<'w> {
    pub fn new(weight: &'w Weight, s: f64, from: f64) -> Result<Self> {
        let (dlo, _) = weight.domain();
        weight.check_interval(from, from)?;
        let (prefix, offset) = match weight {
            Weight::Power(_) => (Vec::new(), 0.0),
            Weight::Piecewise(w) => {
                let mut prefix = vec![0.0];
                prefix.extend(running_sums(w.values.iter().zip(w.breakpoints.windows(2)).map(
                    |(v, c)| if s == 0.0 { c[1] - c[0] } else { v.powf(s) * (c[1] - c[0]) },
                )));
                (prefix, w.integrate_power(s, dlo, from))
            }
        };
        Ok(Self {
            weight,
            s,
            from,
            prefix,
            offset,
        })
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        match self.weight {
            Weight::Power(w) => {
                self.weight.check_interval(self.from, x)?;
                w.integrate_power(self.s, self.from, x)
            }
            Weight::Piecewise(w) => {
                self.weight.check_interval(self.from, x)?;
                let i = w.cell_index(x);
                let v = w.values[i];
                let fs = if self.s == 0.0 { 1.0 } else { v.powf(self.s) };
                Ok(self.prefix[i] + fs * (x - w.breakpoints[i]) - self.offset)
            }
        }
    }
}

/// On-disk / CLI representation of a weight.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WeightSpec {
    Power {
        a: f64,
        #[serde(default)]
        origin: f64,
    },
    Piecewise {
        breakpoints: Vec<f64>,
        values: Vec<f64>,
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        monotone: bool,
    },
}

impl TryFrom<WeightSpec> for Weight {
    type Error = HardyError;

    fn try_from(spec: WeightSpec) -> Result<Self> {
        match spec {
            WeightSpec::Power { a, origin } => Ok(Weight::Power(PowerWeight::new(a, origin)?)),
            WeightSpec::Piecewise {
                breakpoints,
                values,
                monotone,
            } => {
                let w = if monotone {
                    PiecewiseConstantWeight::new_monotone(breakpoints, values)?
                } else {
                    PiecewiseConstantWeight::new(breakpoints, values)?
                };
                Ok(Weight::Piecewise(w))
            }
        }
    }
}

impl From<Weight> for WeightSpec {
    fn from(w: Weight) -> Self {
        match w {
            Weight::Power(p) => WeightSpec::Power {
                a: p.exponent,
                origin: p.origin,
            },
            Weight::Piecewise(p) => WeightSpec::Piecewise {
                breakpoints: p.breakpoints,
                values: p.values,
                monotone: p.monotone,
            },
        }
    }
}

impl std::str::FromStr for Weight {
    type Err = HardyError;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| HardyError::Parse(e.to_string()))
    }
}
