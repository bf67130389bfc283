use rayon::prelude::*;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rbn::channels::MonitoringStrength;
use rbn::linalg::ComplexMatrix;
use rbn::observables::{mub_partner, qubit_observable, BlochAngles, ProjectiveObservable};
use rbn::optimizer::{
    bilocal_suppression, local_suppression, max_context_rbn, OptimizerConfig, SuppressionReport,
};
use rbn::quantifiers::{
    bilocal_bounds_asymmetric, closed_form_pure_suppression, closed_form_werner_suppression, delta,
    entanglement_entropy, eta, gamma_bound, irreality, local_bounds, reality_gain, shannon_entropy,
};
use rbn::states::{
    classical_classical_state, two_parameter_pure, two_parameter_state, DensityMatrix,
};
use rbn::verify::{run_all, VerifyConfig};
use rbn::Side;

use crate::OptimizerArgs;

pub enum CmdError {
    /// Invalid invocation or input; exit code 2.
    Usage(String),
    /// A checked invariant failed; exit code 1.
    Property(String),
}

fn usage(msg: impl Into<String>) -> CmdError {
    CmdError::Usage(msg.into())
}

fn lib_err(e: rbn::Error) -> CmdError {
    CmdError::Usage(e.to_string())
}

fn io_err(path: &str, e: std::io::Error) -> CmdError {
    CmdError::Usage(format!("{path}: {e}"))
}

fn fmt(x: f64) -> String {
    format!("{x:.12e}")
}

fn strength(e: f64) -> Result<MonitoringStrength, CmdError> {
    MonitoringStrength::new(e).map_err(lib_err)
}

fn optimizer_config(args: &OptimizerArgs) -> OptimizerConfig {
    OptimizerConfig {
        grid_theta: args.grid_theta,
        grid_phi: args.grid_phi,
        objective_tol: args.tol,
        seed: args.seed,
        ..OptimizerConfig::default()
    }
}

/// `a:b:n` → n evenly spaced points from a to b, all inside [0, 1].
fn parse_grid(spec: &str, name: &str) -> Result<Vec<f64>, CmdError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(usage(format!("--{name} expects a:b:n, got {spec:?}")));
    }
    let a: f64 = parts[0]
        .parse()
        .map_err(|_| usage(format!("--{name}: bad start {:?}", parts[0])))?;
    let b: f64 = parts[1]
        .parse()
        .map_err(|_| usage(format!("--{name}: bad end {:?}", parts[1])))?;
    let n: usize = parts[2]
        .parse()
        .map_err(|_| usage(format!("--{name}: bad count {:?}", parts[2])))?;
    if n == 0 {
        return Err(usage(format!("--{name}: grid must be nonempty")));
    }
    if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) {
        return Err(usage(format!("--{name}: endpoints must lie in [0, 1]")));
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    Ok((0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect())
}

/// Strength list: either a comma list (`0.1,0.6`) or a linspace `a:b:n`.
fn parse_eps_list(spec: &str) -> Result<Vec<f64>, CmdError> {
    let values = if spec.contains(':') {
        parse_grid(spec, "eps")?
    } else {
        spec.split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<f64>()
                    .map_err(|_| usage(format!("--eps: bad value {tok:?}")))
            })
            .collect::<Result<Vec<f64>, CmdError>>()?
    };
    if values.is_empty() {
        return Err(usage("--eps: list must be nonempty"));
    }
    for &e in &values {
        if !(0.0..=1.0).contains(&e) {
            return Err(usage(format!("--eps: {e} outside [0, 1]")));
        }
    }
    Ok(values)
}

fn header(command: &str, args: &OptimizerArgs) -> String {
    let cfg = optimizer_config(args);
    let mut out = String::new();
    let _ = writeln!(out, "# rbn v{} {command}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(out, "# seed: {}", args.seed);
    let _ = writeln!(
        out,
        "# optimizer: grid_theta={} grid_phi={} refine_starts={} objective_tol={:e} param_tol={:e} max_iterations={}",
        cfg.grid_theta,
        cfg.grid_phi,
        cfg.refine_starts,
        cfg.objective_tol,
        cfg.param_tol,
        cfg.max_iterations
    );
    out
}

fn write_file(path: &Path, contents: &str) -> Result<(), CmdError> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir).map_err(|e| io_err(&dir.display().to_string(), e))?;
        }
    }
    fs::write(path, contents).map_err(|e| io_err(&path.display().to_string(), e))
}

// ---------------------------------------------------------------------------
// figure1
// ---------------------------------------------------------------------------

pub fn figure1(
    eps_spec: &str,
    beta_spec: &str,
    alpha_spec: &str,
    out_dir: &str,
    args: &OptimizerArgs,
) -> Result<(), CmdError> {
    let eps_list = parse_eps_list(eps_spec)?;
    let betas = parse_grid(beta_spec, "beta-grid")?;
    let alphas = parse_grid(alpha_spec, "alpha-grid")?;
    let cfg = optimizer_config(args);

    // N(ρ^{½β}) is ε-independent; compute it once per β.
    let n_values: Vec<f64> = betas
        .par_iter()
        .map(|&beta| {
            let rho = two_parameter_state(0.5, beta).expect("grid is validated");
            max_context_rbn(&rho, &cfg).expect("two-qubit state").value
        })
        .collect();

    for &e in &eps_list {
        let eps = strength(e)?;

        let werner_rows: Vec<(f64, SuppressionReport)> = betas
            .par_iter()
            .map(|&beta| {
                let rho = two_parameter_state(0.5, beta).expect("grid is validated");
                let report = local_suppression(&rho, eps, &cfg).expect("two-qubit state");
                (beta, report)
            })
            .collect();

        let command = format!(
            "figure1 --eps {e} --beta-grid {beta_spec} --alpha-grid {alpha_spec} --out {out_dir}"
        );
        let mut csv = header(&command, args);
        csv.push_str("beta,Delta_B,N,LB1,UB1,LB2,UB2,closed_form\n");
        for ((beta, report), &n) in werner_rows.iter().zip(&n_values) {
            let bounds = report.bounds.with_trivial_ub(n);
            let excess = bounds.max_violation(report.value);
            if excess > 1e-8 + cfg.objective_tol {
                return Err(CmdError::Property(format!(
                    "figure1: Delta_B escapes its bounds at beta={beta}, eps={e} by {excess:.3e}"
                )));
            }
            let _ = writeln!(
                csv,
                "{},{},{},{},{},{},{},{}",
                fmt(*beta),
                fmt(report.value),
                fmt(n),
                fmt(bounds.lb1.expect("local report")),
                fmt(bounds.ub1.expect("local report")),
                fmt(bounds.lb2.expect("local report")),
                fmt(bounds.ub2.expect("local report")),
                fmt(closed_form_werner_suppression(*beta, e)),
            );
        }
        write_file(
            &Path::new(out_dir).join(format!("figure1_werner_eps{e}.csv")),
            &csv,
        )?;

        let pure_rows: Vec<(f64, f64, f64)> = alphas
            .par_iter()
            .map(|&alpha| {
                let rho = two_parameter_state(alpha, 1.0).expect("grid is validated");
                let report = local_suppression(&rho, eps, &cfg).expect("two-qubit state");
                let psi = two_parameter_pure(alpha).expect("grid is validated");
                let ent = entanglement_entropy(&psi).expect("valid pure state");
                (alpha, report.value, ent)
            })
            .collect();

        let mut csv = header(&command, args);
        csv.push_str("alpha,Delta_B,E,eps_times_E,closed_form\n");
        for (alpha, value, ent) in &pure_rows {
            // Pure-state sandwich ε·E ≤ Δ_B ≤ E doubles as the emitted
            // bound columns.
            let excess = (e * ent - value).max(value - ent);
            if excess > 1e-8 {
                return Err(CmdError::Property(format!(
                    "figure1: Delta_B escapes [eps*E, E] at alpha={alpha}, eps={e} by {excess:.3e}"
                )));
            }
            let _ = writeln!(
                csv,
                "{},{},{},{},{}",
                fmt(*alpha),
                fmt(*value),
                fmt(*ent),
                fmt(e * ent),
                fmt(closed_form_pure_suppression(*alpha, e)),
            );
        }
        write_file(
            &Path::new(out_dir).join(format!("figure1_pure_eps{e}.csv")),
            &csv,
        )?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// figure2
// ---------------------------------------------------------------------------

pub fn figure2(
    eps_spec: &str,
    beta_spec: &str,
    out_path: &str,
    args: &OptimizerArgs,
) -> Result<(), CmdError> {
    let eps_list = parse_eps_list(eps_spec)?;
    let betas = parse_grid(beta_spec, "beta-grid")?;
    let cfg = optimizer_config(args);

    let n_values: Vec<f64> = betas
        .par_iter()
        .map(|&beta| {
            let rho = two_parameter_state(0.5, beta).expect("grid is validated");
            max_context_rbn(&rho, &cfg).expect("two-qubit state").value
        })
        .collect();

    let mut rows: Vec<(f64, f64, f64, f64, f64)> = Vec::new();
    for &e in &eps_list {
        let eps = strength(e)?;
        let swept: Vec<(f64, f64, f64)> = betas
            .par_iter()
            .map(|&beta| {
                let rho = two_parameter_state(0.5, beta).expect("grid is validated");
                let local = local_suppression(&rho, eps, &cfg)
                    .expect("two-qubit state")
                    .value;
                let bilocal = bilocal_suppression(&rho, eps, eps, &cfg)
                    .expect("two-qubit state")
                    .value;
                (beta, local, bilocal)
            })
            .collect();
        for ((beta, local, bilocal), &n) in swept.into_iter().zip(&n_values) {
            rows.push((beta, e, n, local, bilocal));
        }
    }

    let command = format!("figure2 --eps {eps_spec} --beta-grid {beta_spec} --out {out_path}");
    let mut csv = header(&command, args);
    csv.push_str("beta,eps,N,Delta_B,Delta_bilocal\n");
    for (beta, e, n, local, bilocal) in &rows {
        let slack = (-bilocal).max(bilocal - local).max(local - n);
        if slack > 1e-8 {
            return Err(CmdError::Property(format!(
                "figure2: ordering N >= Delta_B >= Delta_bilocal >= 0 violated at beta={beta}, eps={e} by {slack:.3e}"
            )));
        }
        let _ = writeln!(
            csv,
            "{},{},{},{},{}",
            fmt(*beta),
            fmt(*e),
            fmt(*n),
            fmt(*local),
            fmt(*bilocal),
        );
    }
    write_file(Path::new(out_path), &csv)
}

// ---------------------------------------------------------------------------
// hierarchy
// ---------------------------------------------------------------------------

pub fn hierarchy(
    probs_spec: &str,
    out_path: Option<&str>,
    args: &OptimizerArgs,
) -> Result<(), CmdError> {
    let probs: Vec<f64> = probs_spec
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| usage(format!("--probs: bad value {tok:?}")))
        })
        .collect::<Result<_, _>>()?;
    if probs.len() < 2 {
        return Err(usage("--probs: need at least two outcomes"));
    }
    if probs.iter().any(|&p| p < 0.0) {
        return Err(usage("--probs: probabilities must be nonnegative"));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > 1e-10 {
        return Err(usage(format!(
            "--probs: probabilities must sum to 1 (got {total})"
        )));
    }

    let d = probs.len();
    let computational: Vec<ComplexMatrix> = (0..d)
        .map(|k| ComplexMatrix::basis_projector(d, k))
        .collect();
    let labels: Vec<f64> = (0..d).map(|k| (d - k) as f64).collect();
    let pointer = ProjectiveObservable::new(computational.clone(), labels).map_err(lib_err)?;
    let probe = mub_partner(&pointer).map_err(lib_err)?;
    let rho = classical_classical_state(&probs, &computational, &computational).map_err(lib_err)?;

    let h = shannon_entropy(&probs);
    let eta_mub = eta(&probe, &probe, &rho).map_err(lib_err)?;
    let cfg = optimizer_config(args);
    let n_report = max_context_rbn(&rho, &cfg).map_err(lib_err)?;

    let eta_dev = (eta_mub - h).abs();
    let n_margin = n_report.value - h;

    let mut report = String::new();
    let _ = writeln!(report, "probs\t{probs_spec}");
    let _ = writeln!(report, "shannon_entropy\t{}", fmt(h));
    let _ = writeln!(report, "eta_mub_probes\t{}", fmt(eta_mub));
    let _ = writeln!(report, "rbn_quantifier\t{}", fmt(n_report.value));
    let _ = writeln!(report, "eta_matches_shannon_dev\t{}", fmt(eta_dev));
    let _ = writeln!(report, "rbn_minus_shannon\t{}", fmt(n_margin));
    let _ = writeln!(
        report,
        "chain\tBellNonlocal < Steerable < Entangled < Discordant < SymDiscordant < RBN (strict subsets)"
    );
    let _ = writeln!(
        report,
        "note\tthis state has zero symmetric discord by construction, yet its RBN quantifier stays positive"
    );
    print!("{report}");

    if let Some(path) = out_path {
        let mut csv = header(&format!("hierarchy --probs {probs_spec}"), args);
        csv.push_str("quantity,value\n");
        let _ = writeln!(csv, "shannon_entropy,{}", fmt(h));
        let _ = writeln!(csv, "eta_mub_probes,{}", fmt(eta_mub));
        let _ = writeln!(csv, "rbn_quantifier,{}", fmt(n_report.value));
        let _ = writeln!(csv, "eta_matches_shannon_dev,{}", fmt(eta_dev));
        let _ = writeln!(csv, "rbn_minus_shannon,{}", fmt(n_margin));
        write_file(Path::new(path), &csv)?;
    }

    if eta_dev > 1e-10 {
        return Err(CmdError::Property(format!(
            "eta with DFT-partner probes deviates from the Shannon entropy by {eta_dev:.3e}"
        )));
    }
    if n_margin < -1e-6 {
        return Err(CmdError::Property(format!(
            "optimized quantifier fell below the Shannon entropy by {:.3e}",
            -n_margin
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

pub fn verify(seed: u64, samples: usize, out_path: Option<&str>) -> Result<(), CmdError> {
    if samples == 0 {
        return Err(usage("--samples must be at least 1"));
    }
    let reports = run_all(&VerifyConfig { seed, samples });

    let mut table = String::from("property,samples,max_violation,tolerance,status\n");
    let mut failures = Vec::new();
    for r in &reports {
        let _ = writeln!(
            table,
            "{},{},{},{},{}",
            r.name,
            r.samples,
            fmt(r.max_violation),
            fmt(r.tolerance),
            if r.passed { "pass" } else { "fail" }
        );
        if !r.passed {
            failures.push(format!(
                "{} ({:.3e} > {:.3e})",
                r.name, r.max_violation, r.tolerance
            ));
        }
    }
    print!("{table}");
    println!(
        "verify: {}/{} suites passed (seed={seed}, samples={samples})",
        reports.len() - failures.len(),
        reports.len()
    );
    if let Some(path) = out_path {
        write_file(Path::new(path), &table)?;
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CmdError::Property(failures.join("; ")))
    }
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

fn parse_angles(spec: &str, name: &str) -> Result<BlochAngles, CmdError> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 2 {
        return Err(usage(format!("--{name} expects theta,phi, got {spec:?}")));
    }
    let theta: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| usage(format!("--{name}: bad theta {:?}", parts[0])))?;
    let phi: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| usage(format!("--{name}: bad phi {:?}", parts[1])))?;
    BlochAngles::new(theta, phi).map_err(lib_err)
}

pub fn eval(
    state_path: &str,
    obs_a_spec: &str,
    obs_b_spec: &str,
    eps: f64,
    eps_b: Option<f64>,
) -> Result<(), CmdError> {
    let text = fs::read_to_string(state_path).map_err(|e| io_err(state_path, e))?;
    let rho = DensityMatrix::from_json(&text).map_err(lib_err)?;
    let obs_a = qubit_observable(&parse_angles(obs_a_spec, "obs-a")?);
    let obs_b = qubit_observable(&parse_angles(obs_b_spec, "obs-b")?);

    let mut out = String::new();
    let irr_a = irreality(&obs_a, &rho, Side::A).map_err(lib_err)?;
    let irr_b = irreality(&obs_b, &rho, Side::B).map_err(lib_err)?;
    let context = eta(&obs_a, &obs_b, &rho).map_err(lib_err)?;
    let _ = writeln!(out, "irreality_a\t{}", fmt(irr_a));
    let _ = writeln!(out, "irreality_b\t{}", fmt(irr_b));
    let _ = writeln!(out, "eta\t{}", fmt(context));

    match eps_b {
        None => {
            let e = strength(eps)?;
            let one = strength(1.0)?;
            let value = delta(&obs_a, &obs_b, &rho, one, e).map_err(lib_err)?;
            let gain = reality_gain(&obs_b, &rho, e, Side::B).map_err(lib_err)?;
            let gamma = gamma_bound(&obs_b, &rho, e, Side::B).map_err(lib_err)?;
            let bounds = local_bounds(&rho, e, &obs_a, &obs_b).map_err(lib_err)?;
            let _ = writeln!(out, "delta_local\t{}", fmt(value));
            let _ = writeln!(out, "reality_gain_b\t{}", fmt(gain));
            let _ = writeln!(out, "gamma_b\t{}", fmt(gamma));
            let _ = writeln!(out, "lb1\t{}", fmt(bounds.lb1.expect("local bounds")));
            let _ = writeln!(out, "ub1\t{}", fmt(bounds.ub1.expect("local bounds")));
            let _ = writeln!(out, "lb2\t{}", fmt(bounds.lb2.expect("local bounds")));
            let _ = writeln!(out, "ub2\t{}", fmt(bounds.ub2.expect("local bounds")));
        }
        Some(eb) => {
            let ea = strength(eps)?;
            let eb = strength(eb)?;
            let value = delta(&obs_a, &obs_b, &rho, ea, eb).map_err(lib_err)?;
            let gain = reality_gain(&obs_b, &rho, eb, Side::B).map_err(lib_err)?;
            let gamma = gamma_bound(&obs_b, &rho, eb, Side::B).map_err(lib_err)?;
            let (lb, ub) =
                bilocal_bounds_asymmetric(&rho, ea, eb, &obs_a, &obs_b).map_err(lib_err)?;
            let _ = writeln!(out, "delta_bilocal\t{}", fmt(value));
            let _ = writeln!(out, "reality_gain_b\t{}", fmt(gain));
            let _ = writeln!(out, "gamma_b\t{}", fmt(gamma));
            let _ = writeln!(out, "lb1_bi\t{}", fmt(lb));
            let _ = writeln!(out, "ub1_bi\t{}", fmt(ub));
        }
    }
    print!("{out}");
    Ok(())
}
