//! Bracketing root finder.

use crate::error::{HardyError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
    /// Final bracket; always contains a sign change (or an exact zero).
    pub bracket: (f64, f64),
}

/// Midpoint bisection until the bracket is no wider than `tol` or cannot
/// be split further in double precision. Returns the bracket end with the
/// smaller residual.
pub fn bisect<F: Fn(f64) -> f64>(g: F, lo: f64, hi: f64, tol: f64) -> Result<Root> {
    if !(lo.is_finite() && hi.is_finite()) || lo > hi || !(tol >= 0.0) {
        return Err(HardyError::Domain(format!("bad bracket ({lo}, {hi}) or tolerance {tol}")));
    }
    let (mut a, mut b) = (lo, hi);
    let (mut ga, mut gb) = (g(a), g(b));
    if ga == 0.0 {
        return Ok(Root { x: a, value: 0.0, iterations: 0, bracket: (a, a) });
    }
    if gb == 0.0 {
        return Ok(Root { x: b, value: 0.0, iterations: 0, bracket: (b, b) });
    }
    if !(ga.signum() * gb.signum() < 0.0) {
        return Err(HardyError::NoSignChange { lo, hi });
    }

    let mut iterations = 0;
    while b - a > tol {
        let m = a + 0.5 * (b - a);
        if m <= a || m >= b {
            break;
        }
        iterations += 1;
        let gm = g(m);
        if gm == 0.0 {
            return Ok(Root { x: m, value: 0.0, iterations, bracket: (m, m) });
        }
        if gm.signum() == ga.signum() {
            a = m;
            ga = gm;
        } else {
            b = m;
            gb = gm;
        }
        debug_assert!(ga.signum() * gb.signum() < 0.0);
    }
    let (x, value) = if ga.abs() <= gb.abs() { (a, ga) } else { (b, gb) };
    Ok(Root { x, value, iterations, bracket: (a, b) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear() {
        let r = bisect(|x| x - 1.0, 0.0, 2.0, 1e-12).unwrap();
        assert_eq!(r.x, 1.0);
    }

    #[test]
    fn sqrt_two() {
        let r = bisect(|x| x * x - 2.0, 1.0, 2.0, 1e-12).unwrap();
        assert!((r.x - 2f64.sqrt()).abs() <= 1e-12);
        assert!(r.bracket.1 - r.bracket.0 <= 1e-12);
    }

    #[test]
    fn quadratic_threshold() {
        let r = bisect(|p| (2.0 - p) * 2.0 * p - 1.0, 1.0, 2.0, 1e-12).unwrap();
        assert!((r.x - (1.0 + 2f64.sqrt() / 2.0)).abs() <= 1e-12);
    }

    #[test]
    fn no_sign_change() {
        assert!(matches!(
            bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12),
            Err(HardyError::NoSignChange { .. })
        ));
    }

    #[test]
    fn zero_tolerance_runs_to_machine_precision() {
        let r = bisect(|x| x.cos() - x, 0.0, 1.0, 0.0).unwrap();
        assert!(r.value.abs() < 1e-15);
        assert!(r.iterations < 1100);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn bracket_keeps_sign_change(root in -10.0f64..10.0, k in 1u32..6, tol in 1e-14f64..1e-3) {
                let g = |x: f64| (x - root).powi(2 * k as i32 - 1);
                let r = bisect(g, -20.0, 20.0, tol).unwrap();
                let (a, b) = r.bracket;
                prop_assert!(g(a) * g(b) <= 0.0);
                prop_assert!(b - a <= tol.max(1e-14 * 20.0));
                prop_assert!(a <= root && root <= b);
            }
        }
    }
}
