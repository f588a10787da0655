//! Weighted Hardy inequalities for finite positive sequences with negative
//! exponents.
//!
//! For `a_n, λ_n > 0` write `A_n = Σ_{i≤n} λ_i a_i`, `Λ_n = Σ_{i≤n} λ_i` and
//! `m_n = A_n / Λ_n` for the weighted prefix mean. Every sum over `n` uses
//! compensated summation.

use serde::{Deserialize, Serialize};

use crate::error::{HardyError, Result};
use crate::numerics::{compensated_sum, running_sums};
use crate::report::InequalityReport;

/// Paired sequences `(a_n)` and `(λ_n)` with strictly positive entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SequenceSpec")]
pub struct WeightedSequence {
    a: Vec<f64>,
    lam: Vec<f64>,
}

#[derive(Deserialize)]
struct SequenceSpec {
    a: Vec<f64>,
    lam: Option<Vec<f64>>,
}

impl TryFrom<SequenceSpec> for WeightedSequence {
    type Error = HardyError;

    fn try_from(spec: SequenceSpec) -> Result<Self> {
        match spec.lam {
            Some(lam) => Self::new(spec.a, lam),
            None => Self::unweighted(spec.a),
        }
    }
}

impl WeightedSequence {
    pub fn new(a: Vec<f64>, lam: Vec<f64>) -> Result<Self> {
        if a.is_empty() {
            return Err(HardyError::Domain("sequence must have at least one term".into()));
        }
        if a.len() != lam.len() {
            return Err(HardyError::Domain(format!(
                "a has {} terms but lam has {}",
                a.len(),
                lam.len()
            )));
        }
        let positive = |x: &f64| x.is_finite() && *x > 0.0;
        if !a.iter().all(positive) || !lam.iter().all(positive) {
            return Err(HardyError::Domain(
                "all a_n and lam_n must be finite and strictly positive".into(),
            ));
        }
        Ok(Self { a, lam })
    }

    /// `λ_n = 1` for every `n`.
    pub fn unweighted(a: Vec<f64>) -> Result<Self> {
        let lam = vec![1.0; a.len()];
        Self::new(a, lam)
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn lam(&self) -> &[f64] {
        &self.lam
    }
}

impl std::str::FromStr for WeightedSequence {
    type Err = HardyError;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| HardyError::Parse(e.to_string()))
    }
}

/// Running sums `A_n = Σ λ_i a_i` and `Λ_n = Σ λ_i`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrefixSums {
    pub weighted: Vec<f64>,
    pub mass: Vec<f64>,
}

impl PrefixSums {
    /// `A_n / Λ_n`.
    pub fn means(&self) -> Vec<f64> {
        self.weighted.iter().zip(&self.mass).map(|(a, l)| a / l).collect()
    }
}

pub fn prefix_sums(seq: &WeightedSequence) -> PrefixSums {
    PrefixSums {
        weighted: running_sums(seq.a.iter().zip(&seq.lam).map(|(a, l)| a * l)),
        mass: running_sums(seq.lam.iter().copied()),
    }
}

fn check_pq(p: f64, q: f64) -> Result<()> {
    if !(p.is_finite() && q.is_finite() && p > 0.0 && q > 0.0 && q <= p) {
        return Err(HardyError::InvalidExponents(format!(
            "need 0 < q <= p, got p = {p}, q = {q}"
        )));
    }
    Ok(())
}

/// `Σ λ_n m_n^{q-p} a_n^{-q}`; at `q = 0` this is `Σ λ_n m_n^{-p}`.
pub fn mixed_sum(seq: &WeightedSequence, means: &[f64], p: f64, q: f64) -> f64 {
    compensated_sum(
        seq.lam
            .iter()
            .zip(&seq.a)
            .zip(means)
            .map(|((l, a), m)| l * m.powf(q - p) * a.powf(-q)),
    )
}

/// `Σ λ_n m_n^{-p}  ≤  ((p+1)/p)^q · Σ λ_n m_n^{q-p} a_n^{-q}` for `0 < q ≤ p`.
pub fn hardy_sides(seq: &WeightedSequence, p: f64, q: f64) -> Result<InequalityReport> {
    check_pq(p, q)?;
    let means = prefix_sums(seq).means();
    let lhs = mixed_sum(seq, &means, p, 0.0);
    let rhs = ((p + 1.0) / p).powf(q) * mixed_sum(seq, &means, p, q);
    Ok(InequalityReport::le(lhs, rhs, &[("p", p), ("q", q), ("n", seq.len() as f64)]))
}

/// The same inequality with `λ_n ≡ 1`, where `m_n` is the plain running average.
pub fn unweighted_hardy_sides(a: &[f64], p: f64, q: f64) -> Result<InequalityReport> {
    hardy_sides(&WeightedSequence::unweighted(a.to_vec())?, p, q)
}

/// Strengthened `q = p` form carrying its exact remainder:
///
/// `Σ λ_n m_n^{-p} − (p/(p+1)) Σ λ_n a_n m_n^{-p-1}  ≥  Λ_N m_N^{-p} / (p+1)`,
///
/// with equality for `N = 1` and for constant sequences.
pub fn remainder_sides(seq: &WeightedSequence, p: f64) -> Result<InequalityReport> {
    if !(p.is_finite() && p > 0.0) {
        return Err(HardyError::InvalidExponents(format!("need p > 0, got {p}")));
    }
    let sums = prefix_sums(seq);
    let means = sums.means();
    let c = p / (p + 1.0);
    let lhs = compensated_sum(
        seq.lam
            .iter()
            .zip(&seq.a)
            .zip(&means)
            .map(|((l, a), m)| l * m.powf(-p) * (1.0 - c * a / m)),
    );
    let n = seq.len() - 1;
    let rhs = sums.mass[n] / (p + 1.0) * means[n].powf(-p);
    Ok(InequalityReport::ge(lhs, rhs, &[("p", p), ("n", seq.len() as f64)]))
}

/// `J_{q1} ≤ ((p+1)/p)^{q2−q1} J_{q2}` for `0 < q1 ≤ q2 ≤ p`, where
/// `J_q = Σ λ_n m_n^{q-p} a_n^{-q}`.
pub fn interpolation_sides(
    seq: &WeightedSequence,
    p: f64,
    q1: f64,
    q2: f64,
) -> Result<InequalityReport> {
    if !(q1.is_finite() && q1 > 0.0 && q1 <= q2) {
        return Err(HardyError::InvalidExponents(format!(
            "need 0 < q1 <= q2 <= p, got q1 = {q1}, q2 = {q2}, p = {p}"
        )));
    }
    check_pq(p, q2)?;
    let means = prefix_sums(seq).means();
    let lhs = mixed_sum(seq, &means, p, q1);
    let rhs = ((p + 1.0) / p).powf(q2 - q1) * mixed_sum(seq, &means, p, q2);
    Ok(InequalityReport::le(
        lhs,
        rhs,
        &[("p", p), ("q1", q1), ("q2", q2), ("n", seq.len() as f64)],
    ))
}

/// `p·y^{p+1} − (p+1)·y^p + 1`, which is non-negative and vanishes only at `y = 1`.
pub fn elementary_gap(y: f64, p: f64) -> Result<f64> {
    if !(y.is_finite() && y >= 0.0) || !(p.is_finite() && p > 0.0) {
        return Err(HardyError::Domain(format!("need y >= 0 and p > 0, got y = {y}, p = {p}")));
    }
    Ok(y.powf(p) * (p * y - p - 1.0) + 1.0)
}
