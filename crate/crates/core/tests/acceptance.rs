//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the test
//! fails if any criterion fails.

use std::time::{Duration, Instant};

use hardy_core::continuous::{
    discrete_approximation, integral_sides, integral_sides_quadrature, parts_identity_residual,
    sharpness_sweep,
};
use hardy_core::fuzz::{run_discrete, run_self_improvement};
use hardy_core::muckenhoupt::{
    ap_characteristic, check_self_improvement, critical_exponent, power_weight_constant,
    self_improvement_bound, GridSpec,
};
use hardy_core::{HardyError, QuadratureConfig, Weight};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: HardyError) -> String {
    e.to_string()
}

fn ac1_discrete_fuzz() -> Outcome {
    let start = Instant::now();
    let s = run_discrete(20_240_601, 10_000).map_err(err)?;
    let elapsed = start.elapsed();
    for c in &s.checks {
        ensure(c.cases == 10_000, format!("{}: only {} cases", c.name, c.cases))?;
        ensure(
            c.min_relative_margin >= -1e-9,
            format!("{}: min relative margin {:e}", c.name, c.min_relative_margin),
        )?;
        ensure(c.failures == 0, format!("{}: {} failures", c.name, c.failures))?;
    }
    ensure(elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;
    let margins: Vec<String> = s
        .checks
        .iter()
        .map(|c| format!("{} {:.2e}", c.name, c.min_relative_margin))
        .collect();
    Ok(format!("min margins: {}; {elapsed:.2?}", margins.join(", ")))
}

fn ac2_sharp_constant() -> Outcome {
    let rows = sharpness_sweep(2.0, 2.0, &[0.3, 0.4, 0.45, 0.49, 0.499]).map_err(err)?;
    let at_049 = rows[3].ratio;
    let want = (1.49f64 / 1.5).powi(2);
    ensure((at_049 - want).abs() <= 1e-9, format!("ratio {at_049} vs {want}"))?;
    // (1.49/1.5)^2 = 0.98671111…
    ensure((want - 0.9867111).abs() < 1e-7, "reference value")?;
    ensure(
        rows.windows(2).all(|w| w[0].ratio < w[1].ratio),
        "sweep not strictly increasing",
    )?;
    ensure(rows.iter().all(|r| r.ratio < 1.0), "ratio reached 1")?;
    Ok(format!(
        "ratios {:?}",
        rows.iter().map(|r| (r.ratio * 1e6).round() / 1e6).collect::<Vec<_>>()
    ))
}

fn ac3_continuous() -> Outcome {
    let w = Weight::power(1.0).map_err(err)?;
    let cfg = QuadratureConfig::default();
    let quad = integral_sides_quadrature(&w, (0.0, 1.0), 0.5, 0.5, &cfg).map_err(err)?;
    let exact = integral_sides(&w, (0.0, 1.0), 0.5, 0.5, &cfg).map_err(err)?;
    let (lhs_ref, rhs_ref) = (2.0 * 2f64.sqrt(), 2.0 * 3f64.sqrt());
    for (name, got) in [("quad lhs", quad.lhs), ("closed lhs", exact.lhs)] {
        ensure((got - lhs_ref).abs() <= 1e-7, format!("{name} {got} vs {lhs_ref}"))?;
    }
    for (name, got) in [("quad rhs", quad.rhs), ("closed rhs", exact.rhs)] {
        ensure((got - rhs_ref).abs() <= 1e-7, format!("{name} {got} vs {rhs_ref}"))?;
    }
    ensure(quad.lhs <= quad.rhs && quad.holds, "lhs > rhs")?;
    Ok(format!(
        "lhs err {:.1e}, rhs err {:.1e}",
        (quad.lhs - lhs_ref).abs(),
        (quad.rhs - rhs_ref).abs()
    ))
}

fn ac4_parts_identity() -> Outcome {
    let cfg = QuadratureConfig::default();
    let gs = [
        ("1", Weight::constant(1.0).map_err(err)?),
        ("t", Weight::power(1.0).map_err(err)?),
        ("t^0.5", Weight::power(0.5).map_err(err)?),
    ];
    let mut worst: f64 = 0.0;
    for (name, g) in &gs {
        for alpha in [1.5, 2.0, 3.0] {
            for u in [0.25, 1.0] {
                let r = parts_identity_residual(g, alpha, u, &cfg).map_err(err)?;
                ensure(r <= 1e-7, format!("g = {name}, a = {alpha}, u = {u}: residual {r:e}"))?;
                worst = worst.max(r);
            }
        }
    }
    Ok(format!("max residual {worst:.1e}"))
}

fn ac5_critical_exponent() -> Outcome {
    let cases = [
        (1.0, 1.0, 1e-12),
        (2.0, 1.0 + 2f64.sqrt() / 2.0, 1e-10),
        (4.0, 1.0 + 3f64.sqrt() / 2.0, 1e-10),
    ];
    for (m, want, tol) in cases {
        let s = critical_exponent(2.0, m).map_err(err)?;
        ensure((s.p0 - want).abs() <= tol, format!("M = {m}: p0 {} vs {want}", s.p0))?;
        ensure(s.residual.abs() <= 1e-12, format!("M = {m}: residual {:e}", s.residual))?;
    }
    Ok("p0(2,1) = 1, p0(2,2) = 1+√2/2, p0(2,4) = 1+√3/2".into())
}

fn ac6_extremal_alignment() -> Outcome {
    let mut worst: f64 = 0.0;
    for i in 1..=9 {
        let a = i as f64 / 10.0;
        let m = power_weight_constant(2.0, a).map_err(err)?;
        let p0 = critical_exponent(2.0, m).map_err(err)?.p0;
        ensure((p0 - (a + 1.0)).abs() <= 1e-8, format!("a = {a}: p0 = {p0}"))?;
        worst = worst.max((p0 - (a + 1.0)).abs());
        let w = Weight::power(a).map_err(err)?;
        match ap_characteristic(&w, a + 1.0, (0.0, 1.0)) {
            Err(HardyError::Divergent(_)) => {}
            other => return Err(format!("a = {a}: expected Divergent, got {other:?}")),
        }
    }
    Ok(format!("max |p0 - (a+1)| = {worst:.1e}; all Divergent at p = a+1"))
}

fn ac7_containment() -> Outcome {
    let start = Instant::now();
    let m = 4.0 / 3.0;
    let bound = self_improvement_bound(1.8, 2.0, m).map_err(err)?;
    let lambda = 0.8 * (4.0 / 3.0) / 0.52;
    let chain = f64::powf(lambda, 0.8);
    ensure((bound - chain).abs() <= 1e-12 * chain, format!("M' {bound} vs chain {chain}"))?;
    ensure((bound - 1.7767).abs() < 1e-4, format!("M' = {bound}"))?;

    let w = Weight::power(0.5).map_err(err)?;
    let grid = GridSpec::default().prefix_points();
    let check = check_self_improvement(&w, 2.0, 1.8, &grid).map_err(err)?;
    let measured = check.report.lhs;
    let expected = (0.8f64 / 0.3).powf(0.8) / 1.5;
    ensure((measured - expected).abs() <= 1e-12, format!("A_1.8 sup {measured} vs {expected}"))?;
    ensure((measured - 1.4611).abs() < 1e-4, format!("A_1.8 sup {measured}"))?;
    ensure(check.report.holds && measured <= bound, "sup exceeds M'")?;

    let s = run_self_improvement(20_240_607, 200, 2.0).map_err(err)?;
    let c = &s.checks[0];
    ensure(c.cases == 200 && c.failures == 0, format!("{c:?}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), format!("took {elapsed:?}"))?;
    Ok(format!(
        "M' = {bound:.4}, sup = {measured:.4}; 200 random weights, min margin {:.2e}; {elapsed:.2?}",
        c.min_relative_margin
    ))
}

fn ac8_discrete_continuous() -> Outcome {
    let w = Weight::power(1.0).map_err(err)?;
    let cfg = QuadratureConfig::default();
    let mut gaps = Vec::new();
    for (p, q) in [(0.5, 0.5), (0.25, 0.25)] {
        let cont = integral_sides(&w, (0.0, 1.0), p, q, &cfg).map_err(err)?;
        let disc = discrete_approximation(&w, (0.0, 1.0), p, q, 10_000).map_err(err)?;
        let gl = (disc.lhs / cont.lhs - 1.0).abs();
        let gr = (disc.rhs / cont.rhs - 1.0).abs();
        ensure(gl <= 1e-2 && gr <= 1e-2, format!("p={p} q={q}: gaps {gl:e}, {gr:e}"))?;
        gaps.push(format!("p=q={p}: {gl:.1e}/{gr:.1e}"));
    }
    Ok(format!("relative gaps lhs/rhs {}", gaps.join(", ")))
}

#[test]
fn acceptance() {
    println!();
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("AC1 discrete fuzz (1e4 sequences)", ac1_discrete_fuzz),
        ("AC2 sharp-constant sweep", ac2_sharp_constant),
        ("AC3 continuous f(x)=x, p=q=1/2", ac3_continuous),
        ("AC4 integration-by-parts identity", ac4_parts_identity),
        ("AC5 critical exponent solver", ac5_critical_exponent),
        ("AC6 extremal alignment", ac6_extremal_alignment),
        ("AC7 self-improvement containment", ac7_containment),
        ("AC8 discrete-continuous consistency", ac8_discrete_continuous),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                println!("FAIL  {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
