//! Command implementations: each reads its resolved configuration, runs the
//! corresponding library routines, writes machine-readable reports under the
//! output directory, and signals the outcome through the exit-code contract.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

use solwave::besselwave::{
    benjamin_ono, bessel_k_half, generate_example, verify_exact, ExactSolutionCase,
    HalfIntegerOrder,
};
use solwave::commutators::{
    assess_family, smoothing_probe, weight_commutator_probe, derivative_exchange_check_1d, weight_exchange_check, MultiIndex,
    ProbeMode, ProbeRatio, DEFAULT_DILATION_SCALES,
};
use solwave::decayometer::{fit_tail_exponent, estimate_report, EstimateReportConfig};
use solwave::grid::{sample_1d, Field};
use solwave::multiplier::CutoffSpec;
use solwave::solver::{
    center_at_peak, fixed_point_solve, petviashvili_solve, SolveConfig, SolveResult,
};
use solwave::symbols::{check_ellipticity, Ellipticity, HomogeneousTerm};
use solwave::Error;

use crate::config::*;
use crate::CliError;

/// Resolve a catalog label: `benjamin-ono`, `benjamin-ono-c<speed>`,
/// `cubic`, or `generated-k<degree>`.
pub fn case_by_label(label: &str) -> Result<ExactSolutionCase, CliError> {
    if label == "benjamin-ono" {
        return benjamin_ono(1.0).map_err(|e| CliError::Config(e.to_string()));
    }
    if label == "cubic" {
        let mut c = generate_example(3).map_err(|e| CliError::Config(e.to_string()))?;
        c.label = "cubic".to_string();
        return Ok(c);
    }
    if let Some(speed) = label.strip_prefix("benjamin-ono-c") {
        let c: f64 = speed
            .parse()
            .map_err(|_| CliError::Config(format!("bad wave speed in label `{label}`")))?;
        return benjamin_ono(c).map_err(|e| CliError::Config(e.to_string()));
    }
    if let Some(k) = label.strip_prefix("generated-k") {
        let k: u32 = k
            .parse()
            .map_err(|_| CliError::Config(format!("bad degree in label `{label}`")))?;
        return generate_example(k).map_err(|e| CliError::Config(e.to_string()));
    }
    Err(CliError::Config(format!("unknown case label `{label}`")))
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(e.to_string()))?;
    let path = dir.join(name);
    let text =
        serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    fs::write(&path, text + "\n").map_err(|e| CliError::Io(e.to_string()))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn write_profile_csv(dir: &Path, name: &str, field: &Field) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(e.to_string()))?;
    let path = dir.join(name);
    let mut w = std::io::BufWriter::new(
        fs::File::create(&path).map_err(|e| CliError::Io(e.to_string()))?,
    );
    writeln!(w, "x,re,im").map_err(|e| CliError::Io(e.to_string()))?;
    let xs = field.grid().axis_coords();
    for (x, v) in xs.iter().zip(field.values()) {
        writeln!(w, "{x},{},{}", v.re, v.im).map_err(|e| CliError::Io(e.to_string()))?;
    }
    println!("wrote {}", path.display());
    Ok(())
}

fn write_history_csv(dir: &Path, name: &str, history: &[f64]) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(e.to_string()))?;
    let path = dir.join(name);
    let mut w = std::io::BufWriter::new(
        fs::File::create(&path).map_err(|e| CliError::Io(e.to_string()))?,
    );
    writeln!(w, "iteration,residual").map_err(|e| CliError::Io(e.to_string()))?;
    for (i, r) in history.iter().enumerate() {
        writeln!(w, "{},{r}", i + 1).map_err(|e| CliError::Io(e.to_string()))?;
    }
    println!("wrote {}", path.display());
    Ok(())
}

// ---------------------------------------------------------------- verify

#[derive(Serialize)]
struct VerifyCaseResult {
    label: String,
    residual: f64,
    pass: bool,
}

#[derive(Serialize)]
struct VerifyReport {
    config: VerifyExactConfig,
    results: Vec<VerifyCaseResult>,
    all_pass: bool,
}

pub fn cmd_verify_exact(cfg: VerifyExactConfig, out: &Path) -> Result<(), CliError> {
    check_schema(cfg.schema_version)?;
    let grid = cfg.grid.build()?;
    let mut results = Vec::new();
    for label in &cfg.cases {
        let case = case_by_label(label)?;
        let residual = verify_exact(&case, grid).map_err(CliError::from_solwave)?;
        let pass = residual <= cfg.residual_tolerance;
        println!(
            "{label}: residual {residual:.3e} ({})",
            if pass { "pass" } else { "FAIL" }
        );
        results.push(VerifyCaseResult {
            label: label.clone(),
            residual,
            pass,
        });
    }
    let all_pass = results.iter().all(|r| r.pass);
    write_json(
        out,
        "verify_exact.json",
        &VerifyReport {
            config: cfg,
            results,
            all_pass,
        },
    )?;
    if all_pass {
        Ok(())
    } else {
        Err(CliError::Tolerance("residuals above tolerance".into()))
    }
}

// ---------------------------------------------------------------- solve

#[derive(Serialize)]
struct SolveSummary {
    config: SolveCommandConfig,
    converged: bool,
    iterations: usize,
    final_residual: Option<f64>,
    tail_exponent: Option<f64>,
    tail_r_squared: Option<f64>,
    stabilizer_deviation: Option<f64>,
}

pub fn cmd_solve(cfg: SolveCommandConfig, out: &Path) -> Result<(), CliError> {
    check_schema(cfg.schema_version)?;
    let grid = cfg.grid.build()?;
    if grid.dimension() != 1 {
        return Err(CliError::Config(
            "the solve command works on one-dimensional grids".into(),
        ));
    }
    let symbol = cfg.symbol.build(grid.dimension())?;
    let nl = cfg.nonlinearity.build()?;
    let guess = match cfg.initial_guess {
        InitialGuessConfig::Gaussian { amplitude, width } => {
            sample_1d(grid, move |x| amplitude * (-x * x / (width * width)).exp())
                .map_err(CliError::from_solwave)?
        }
        InitialGuessConfig::Constant { value } => {
            sample_1d(grid, move |_| value).map_err(CliError::from_solwave)?
        }
    };
    let solve_cfg = SolveConfig {
        max_iterations: cfg.max_iterations,
        residual_tolerance: cfg.residual_tolerance,
        petviashvili_exponent: cfg.petviashvili_exponent,
        damping: cfg.damping,
    };

    let result = match cfg.method {
        MethodConfig::Petviashvili => petviashvili_solve(&symbol, &nl, &guess, &solve_cfg),
        MethodConfig::FixedPoint => fixed_point_solve(&symbol, &nl, None, &guess, &solve_cfg),
    };

    let result: SolveResult = match result {
        Ok(r) => r,
        Err(Error::Diverged {
            iteration,
            residual,
            minimum,
            history,
        }) => {
            // keep the record of the failed run, then signal non-convergence
            write_history_csv(out, "solve_residuals.csv", &history)?;
            let summary = SolveSummary {
                config: cfg,
                converged: false,
                iterations: iteration,
                final_residual: Some(residual),
                tail_exponent: None,
                tail_r_squared: None,
                stabilizer_deviation: None,
            };
            write_json(out, "solve_summary.json", &summary)?;
            return Err(CliError::NonConvergence(format!(
                "diverged at iteration {iteration}: residual {residual:.3e} (minimum was {minimum:.3e})"
            )));
        }
        Err(e) => return Err(CliError::from_solwave(e)),
    };

    let centered = center_at_peak(&result.profile);
    let window = cfg
        .tail_window
        .unwrap_or((10.0, 0.4 * grid.half_length()));
    let fit = fit_tail_exponent(&centered, window).ok();
    let summary = SolveSummary {
        converged: result.converged,
        iterations: result.iterations_used,
        final_residual: result.residual_history.last().copied(),
        tail_exponent: fit.map(|f| f.exponent),
        tail_r_squared: fit.map(|f| f.r_squared),
        stabilizer_deviation: result
            .stabilizer_history
            .last()
            .map(|m| (m - Complex64::new(1.0, 0.0)).norm()),
        config: cfg,
    };
    write_profile_csv(out, "solve_profile.csv", &centered)?;
    write_history_csv(out, "solve_residuals.csv", &result.residual_history)?;
    write_json(out, "solve_summary.json", &summary)?;
    println!(
        "converged: {} in {} iterations; tail exponent {:?}",
        result.converged, result.iterations_used, summary.tail_exponent
    );
    if result.converged {
        Ok(())
    } else {
        Err(CliError::NonConvergence(format!(
            "residual {:.3e} after {} iterations",
            summary.final_residual.unwrap_or(f64::NAN),
            result.iterations_used
        )))
    }
}

// ---------------------------------------------------------------- decay

#[derive(Serialize)]
struct DecayReportOut {
    config: DecayReportConfig,
    case: String,
    report: solwave::decayometer::EstimateReport,
    pointwise_prediction: f64,
    tail_matches_prediction: bool,
}

pub fn cmd_decay_report(cfg: DecayReportConfig, out: &Path) -> Result<(), CliError> {
    check_schema(cfg.schema_version)?;
    let case = case_by_label(&cfg.case)?;
    let tr_cfg = EstimateReportConfig {
        max_order: cfg.max_order,
        epsilon: cfg.epsilon,
        s: cfg.s,
        lengths: cfg.lengths.clone(),
        points_for_first: cfg.points_for_first,
        tail_window: cfg.tail_window,
        slope_tolerance: cfg.slope_tolerance,
    };
    let sol = case.solution.clone();
    let report =
        estimate_report(&case.symbol, move |x| sol(x), &tr_cfg).map_err(CliError::from_solwave)?;
    for e in &report.entries {
        println!(
            "alpha={} beta={}: slope {:?} bounded {:?}",
            e.alpha, e.beta, e.growth_slope, e.bounded
        );
    }
    let prediction = report.rates.pointwise_exponent;
    let tail_ok = (report.tail_fit.exponent - prediction).abs() <= 0.05;
    println!(
        "tail exponent {:.4} vs predicted {prediction} ; all bounded: {}",
        report.tail_fit.exponent, report.all_bounded
    );
    let all_bounded = report.all_bounded;
    write_json(
        out,
        "decay_report.json",
        &DecayReportOut {
            config: cfg,
            case: case.label.clone(),
            report,
            pointwise_prediction: prediction,
            tail_matches_prediction: tail_ok,
        },
    )?;
    if all_bounded && tail_ok {
        Ok(())
    } else {
        Err(CliError::Tolerance(
            "decay verdicts outside tolerance".into(),
        ))
    }
}

// ----------------------------------------------------------- commutators

#[derive(Serialize)]
struct IdentityLine {
    name: String,
    relative_residual: f64,
    tolerance: f64,
    pass: bool,
}

#[derive(Serialize)]
struct ProbeLine {
    name: String,
    ratios: Vec<ProbeRatio>,
    max_over_min: f64,
    monotone_increasing: bool,
    pass: bool,
}

#[derive(Serialize)]
struct CommutatorReport {
    config: CommutatorCheckConfig,
    identities: Vec<IdentityLine>,
    probes: Vec<ProbeLine>,
    all_pass: bool,
}

pub fn cmd_commutator_check(cfg: CommutatorCheckConfig, out: &Path) -> Result<(), CliError> {
    check_schema(cfg.schema_version)?;
    let grid = cfg.grid.build()?;
    let poly_grid = cfg.polynomial_grid.build()?;
    let carrier = cfg.carrier;
    let v = sample_1d(grid, move |x| (-x * x / 2.0).exp() * (carrier * x).cos())
        .map_err(CliError::from_solwave)?;
    let vp = sample_1d(poly_grid, move |x| (-x * x / 2.0).exp() * (carrier * x).cos())
        .map_err(CliError::from_solwave)?;

    let mut identities = Vec::new();
    let push = |name: String, residual: f64, tol: f64, lines: &mut Vec<IdentityLine>| {
        let pass = residual <= tol;
        println!(
            "{name}: residual {residual:.3e} ({})",
            if pass { "pass" } else { "FAIL" }
        );
        lines.push(IdentityLine {
            name,
            relative_residual: residual,
            tolerance: tol,
            pass,
        });
    };

    let q32 = HomogeneousTerm::abs_power(1.5).map_err(CliError::from_solwave)?;
    for rho in [1usize, 2] {
        let rep = weight_exchange_check(&q32, &MultiIndex::one_d(rho), &v)
            .map_err(CliError::from_solwave)?;
        push(
            format!("weight-exchange |xi|^1.5 rho={rho}"),
            rep.relative_residual,
            cfg.identity_tolerance,
            &mut identities,
        );
    }
    for order in [1.0, 1.5] {
        let p = HomogeneousTerm::abs_power(order).map_err(CliError::from_solwave)?;
        for (a, b) in [(1usize, 1usize), (2, 1), (2, 2)] {
            let rep = derivative_exchange_check_1d(&p, a, b, &v).map_err(CliError::from_solwave)?;
            push(
                format!("derivative-exchange |xi|^{order} alpha={a} beta={b}"),
                rep.relative_residual,
                cfg.identity_tolerance,
                &mut identities,
            );
        }
    }
    let poly =
        HomogeneousTerm::line(2.0, Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0))
            .map_err(CliError::from_solwave)?;
    for rho in [1usize, 2] {
        let rep = weight_exchange_check(&poly, &MultiIndex::one_d(rho), &vp)
            .map_err(CliError::from_solwave)?;
        push(
            format!("weight-exchange xi^2 rho={rho}"),
            rep.relative_residual,
            cfg.polynomial_tolerance,
            &mut identities,
        );
    }
    for (a, b) in [(1usize, 1usize), (2, 1), (2, 2)] {
        let rep = derivative_exchange_check_1d(&poly, a, b, &vp).map_err(CliError::from_solwave)?;
        push(
            format!("derivative-exchange xi^2 alpha={a} beta={b}"),
            rep.relative_residual,
            cfg.polynomial_tolerance,
            &mut identities,
        );
    }

    let probe_grid = cfg.probe_grid.build()?;
    let cutoff = CutoffSpec::default();
    let mut probes = Vec::new();
    let push_probe = |name: String, ratios: Vec<ProbeRatio>, lines: &mut Vec<ProbeLine>| {
        let verdict = assess_family(&ratios);
        let (mm, mono) = verdict
            .map(|v| (v.max_over_min, v.monotone_increasing))
            .unwrap_or((f64::NAN, false));
        let pass = mm.is_finite() && mm <= cfg.ratio_bound && !mono;
        println!(
            "{name}: max/min {mm:.2}, monotone growth {mono} ({})",
            if pass { "pass" } else { "FAIL" }
        );
        lines.push(ProbeLine {
            name,
            ratios,
            max_over_min: mm,
            monotone_increasing: mono,
            pass,
        });
    };

    let q_sing = HomogeneousTerm::abs_power(-0.25).map_err(CliError::from_solwave)?;
    let r34 = smoothing_probe(&q_sing, &cutoff, 0.0, &DEFAULT_DILATION_SCALES, probe_grid)
        .map_err(CliError::from_solwave)?;
    push_probe("smoothing-operator |xi|^-0.25".into(), r34, &mut probes);

    let q_one = HomogeneousTerm::abs_power(1.0).map_err(CliError::from_solwave)?;
    let r35 = weight_commutator_probe(
        &q_one,
        &cutoff,
        0.5,
        0.0,
        ProbeMode::SquareData,
        &DEFAULT_DILATION_SCALES,
        probe_grid,
    )
    .map_err(CliError::from_solwave)?;
    push_probe("weight-commutator |xi| r=0.5".into(), r35, &mut probes);

    let all_pass = identities.iter().all(|l| l.pass) && probes.iter().all(|p| p.pass);
    write_json(
        out,
        "commutator_check.json",
        &CommutatorReport {
            config: cfg,
            identities,
            probes,
            all_pass,
        },
    )?;
    if all_pass {
        Ok(())
    } else {
        Err(CliError::Tolerance("commutator checks failed".into()))
    }
}

// ---------------------------------------------------------------- bessel

#[derive(Serialize)]
struct BesselReport {
    config: BesselCheckConfig,
    worst_recurrence_residual: f64,
    worst_closed_form_residual: f64,
    worst_symmetry_residual: f64,
    pass: bool,
}

pub fn cmd_bessel_check(cfg: BesselCheckConfig, out: &Path) -> Result<(), CliError> {
    check_schema(cfg.schema_version)?;
    if cfg.max_numerator < 3 || cfg.max_numerator % 2 == 0 {
        return Err(CliError::Config(
            "max_numerator must be an odd integer of at least 3".into(),
        ));
    }
    let xs: Vec<f64> = (0..cfg.samples)
        .map(|i| cfg.x_min + (cfg.x_max - cfg.x_min) * i as f64 / (cfg.samples - 1) as f64)
        .collect();

    let order = |n: i64| HalfIntegerOrder::new(n).expect("odd numerator");
    let mut worst_rec = 0.0f64;
    let mut worst_sym = 0.0f64;
    for n in (1..=cfg.max_numerator - 2).step_by(2) {
        let nu = n as f64 / 2.0;
        for &x in &xs {
            let km = bessel_k_half(order(n - 2), x).map_err(CliError::from_solwave)?;
            let k0 = bessel_k_half(order(n), x).map_err(CliError::from_solwave)?;
            let kp = bessel_k_half(order(n + 2), x).map_err(CliError::from_solwave)?;
            worst_rec = worst_rec.max((kp - (2.0 * nu / x) * k0 - km).abs() / kp);
            let neg = bessel_k_half(order(-n), x).map_err(CliError::from_solwave)?;
            worst_sym = worst_sym.max((neg - k0).abs() / k0);
        }
    }
    let mut worst_closed = 0.0f64;
    for &x in &xs {
        let k1 = bessel_k_half(order(1), x).map_err(CliError::from_solwave)?;
        let k3 = bessel_k_half(order(3), x).map_err(CliError::from_solwave)?;
        let k5 = bessel_k_half(order(5), x).map_err(CliError::from_solwave)?;
        let c3 = (1.0 / x + 1.0) * k1;
        let c5 = (3.0 / (x * x) + 3.0 / x + 1.0) * k1;
        worst_closed = worst_closed.max((k3 - c3).abs() / c3);
        worst_closed = worst_closed.max((k5 - c5).abs() / c5);
    }
    let pass =
        worst_rec <= cfg.tolerance && worst_closed <= cfg.tolerance && worst_sym == 0.0;
    println!(
        "recurrence {worst_rec:.3e}, closed forms {worst_closed:.3e}, symmetry {worst_sym:.3e} ({})",
        if pass { "pass" } else { "FAIL" }
    );
    write_json(
        out,
        "bessel_check.json",
        &BesselReport {
            config: cfg,
            worst_recurrence_residual: worst_rec,
            worst_closed_form_residual: worst_closed,
            worst_symmetry_residual: worst_sym,
            pass,
        },
    )?;
    if pass {
        Ok(())
    } else {
        Err(CliError::Tolerance("identity residuals too large".into()))
    }
}

// ----------------------------------------------------------- ellipticity

#[derive(Serialize)]
struct EllipticityReport {
    config: EllipticityConfig,
    verdict: Ellipticity,
}

pub fn cmd_ellipticity(cfg: EllipticityConfig, out: &Path) -> Result<(), CliError> {
    check_schema(cfg.schema_version)?;
    let symbol = cfg.symbol.build(cfg.dimension)?;
    let verdict = check_ellipticity(&symbol, cfg.tolerance);
    match &verdict {
        Ellipticity::Elliptic { inf_estimate, .. } => {
            println!("elliptic: inf estimate {inf_estimate:.6e}");
        }
        Ellipticity::NotElliptic { witness, ratio, .. } => {
            println!("not elliptic: ratio {ratio:.3e} at xi = {witness:?}");
        }
    }
    let elliptic = verdict.is_elliptic();
    write_json(
        out,
        "ellipticity.json",
        &EllipticityReport {
            config: cfg,
            verdict,
        },
    )?;
    if elliptic {
        Ok(())
    } else {
        Err(CliError::Tolerance(
            "symbol failed the global ellipticity estimate".into(),
        ))
    }
}
