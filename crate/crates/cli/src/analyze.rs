use std::io::Write;

use bandit_replay::log_io::{read_events, WorldConfig};
use bandit_replay::stats::{
    bound_coverage, consistency_experiment, convergence_curve, deviation_bound, derive_seeds, fit_decay,
    replicate, rho_regression, write_bound_csv, write_consistency_csv, write_coverage_csv, write_curve_csv,
    write_replication_csv, ConsistencyConfig, Perturbation,
};
use bandit_replay::{Error, Event, Result, WorldModel};

use crate::algo::{AlgoKind, AlgoSpec};
use crate::output::sink;
use crate::{AnalysisKind, AnalyzeArgs};

fn need<T: Copy>(value: Option<T>, flag: &str, kind: &str) -> Result<T> {
    value.ok_or_else(|| Error::Config(format!("--kind {kind} needs {flag}")))
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn load_world(args: &AnalyzeArgs, kind: &str) -> Result<WorldModel> {
    let path = args
        .world
        .as_ref()
        .ok_or_else(|| Error::Config(format!("--kind {kind} needs --world")))?;
    WorldConfig::load(path)?.world()
}

fn algorithms(args: &AnalyzeArgs, dim: usize, default: Option<AlgoKind>) -> Result<Vec<AlgoSpec>> {
    let kinds = match (args.algo.is_empty(), default) {
        (true, Some(kind)) => vec![kind],
        (true, None) => return Err(Error::Config("--algo is required".into())),
        (false, _) => args.algo.clone(),
    };
    for (i, k) in kinds.iter().enumerate() {
        if kinds[..i].contains(k) {
            return Err(Error::Config(format!("algorithm `{}` listed twice", k.label())));
        }
    }
    kinds.into_iter().map(|k| AlgoSpec::new(k, &args.params, dim)).collect()
}

fn single_policy(args: &AnalyzeArgs, world: &WorldModel) -> Result<AlgoSpec> {
    let specs = algorithms(args, world.dim(), Some(AlgoKind::Fixed))?;
    match specs.as_slice() {
        [spec] => Ok(*spec),
        _ => Err(Error::Config("this analysis takes exactly one fixed policy".into())),
    }
}

pub fn run(args: &AnalyzeArgs) -> Result<()> {
    let mut out = sink(args.out.as_deref())?;
    match args.kind {
        AnalysisKind::Replicate => run_replicate(args, &mut out)?,
        AnalysisKind::Convergence => run_convergence(args, &mut out)?,
        AnalysisKind::Bounds => run_bounds(args, &mut out)?,
        AnalysisKind::Consistency => run_consistency(args, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn run_replicate(args: &AnalyzeArgs, out: &mut dyn Write) -> Result<()> {
    let log_path = args
        .log
        .as_ref()
        .ok_or_else(|| Error::Config("--kind replicate needs --log".into()))?;
    let runs = need(args.runs, "--runs", "replicate")?;
    let seed = need(args.seed, "--seed", "replicate")?;
    let reader = read_events::<f64>(log_path)?;
    let specs = algorithms(args, reader.header().dim, None)?;
    let log: Vec<Event> = reader.collect::<Result<_>>()?;
    let seeds = if args.identical_seeds { vec![seed; runs] } else { derive_seeds(seed, runs) };

    let mut rows = Vec::with_capacity(specs.len());
    for spec in &specs {
        let summary = replicate(|| spec.build(), &log, args.subsample_p, &seeds)?;
        rows.push((spec.kind.label(), summary));
    }
    write_replication_csv(&mut *out, &rows)?;

    for (name, s) in &rows {
        let rel = s.relative_std();
        eprintln!(
            "{} {name}: std/mean = {rel:.4} (limit {}), {} runs, {} excluded",
            verdict(rel <= args.max_rel_std),
            args.max_rel_std,
            s.runs,
            s.excluded
        );
    }
    if rows.len() > 1 {
        let mut order = rows.clone();
        order.sort_by(|a, b| a.1.relative_std().total_cmp(&b.1.relative_std()));
        let names: Vec<&str> = order.iter().map(|r| r.0).collect();
        eprintln!("std/mean ascending: {}", names.join(" <= "));
    }
    Ok(())
}

fn run_convergence(args: &AnalyzeArgs, out: &mut dyn Write) -> Result<()> {
    let world = load_world(args, "convergence")?;
    let policy = single_policy(args, &world)?.build();
    if args.l_grid.is_empty() {
        return Err(Error::Config("--kind convergence needs --l-grid".into()));
    }
    let runs = need(args.runs, "--runs", "convergence")?;
    let seed = need(args.seed, "--seed", "convergence")?;
    let curve = convergence_curve(&policy, &world, &args.l_grid, runs, seed)?;
    write_curve_csv(&mut *out, &curve)?;

    let (lo, hi) = (args.slope_min.unwrap_or(-0.6), args.slope_max.unwrap_or(-0.4));
    if curve.iter().all(|p| p.median_error == 0.0) {
        eprintln!("PASS median error is zero at every L");
    } else if curve.len() < 3 {
        eprintln!("need at least 3 grid points to fit a decay exponent");
    } else {
        let fit = fit_decay(&curve)?;
        eprintln!(
            "{} log-log slope {:.4} (accepted range [{lo}, {hi}])",
            verdict((lo..=hi).contains(&fit.slope)),
            fit.slope
        );
    }
    Ok(())
}

fn run_bounds(args: &AnalyzeArgs, out: &mut dyn Write) -> Result<()> {
    if args.delta.is_empty() {
        return Err(Error::Config("--kind bounds needs --delta".into()));
    }
    let l = need(args.l, "--l", "bounds")?;
    if args.world.is_none() {
        let k = need(args.k, "--k", "bounds")?;
        let g = need(args.g, "--g", "bounds")?;
        let reports = args
            .delta
            .iter()
            .map(|&d| deviation_bound(k, l, g, d))
            .collect::<Result<Vec<_>>>()?;
        write_bound_csv(&mut *out, &reports)?;
        for r in &reports {
            eprintln!(
                "delta {}: gamma1 = {:.6}, gamma2 = {:.6}, bound = {:.6}",
                r.delta, r.gamma1, r.gamma2, r.bound
            );
        }
        return Ok(());
    }

    let world = load_world(args, "bounds")?;
    let policy = single_policy(args, &world)?.build();
    let runs = need(args.runs, "--runs", "bounds")?;
    let seed = need(args.seed, "--seed", "bounds")?;
    let reports = args
        .delta
        .iter()
        .enumerate()
        .map(|(i, &d)| bound_coverage(&policy, &world, l, d, runs, seed.wrapping_add(i as u64)))
        .collect::<Result<Vec<_>>>()?;
    write_coverage_csv(&mut *out, &reports)?;
    for c in &reports {
        let target = 1.0 - c.bound.delta;
        eprintln!(
            "{} delta {}: coverage {:.4} (needs >= {target}), bound {:.6}",
            verdict(c.fraction() >= target),
            c.bound.delta,
            c.fraction(),
            c.bound.bound
        );
    }
    Ok(())
}

fn run_consistency(args: &AnalyzeArgs, out: &mut dyn Write) -> Result<()> {
    let world = load_world(args, "consistency")?;
    let specs = algorithms(args, world.dim(), None)?;
    let seed = need(args.seed, "--seed", "consistency")?;
    let perturbation = match args.perturb.as_slice() {
        [] => Perturbation::None,
        &[low, high] if 0.0 < low && low <= high => Perturbation::Uniform { low, high },
        _ => return Err(Error::Config("--perturb takes LOW,HIGH with 0 < LOW <= HIGH".into())),
    };
    let config = ConsistencyConfig {
        segments: need(args.segments, "--segments", "consistency")?,
        log_events: need(args.events, "--events", "consistency")?,
        online_trials: args.online_trials,
        perturbation,
    };
    let entries: Vec<(&str, _)> = specs.iter().map(|s| (s.kind.label(), move || s.build())).collect();
    let rows = consistency_experiment(&entries, &world, config, seed)?;
    write_consistency_csv(&mut *out, &rows)?;

    let (lo, hi) = (args.slope_min.unwrap_or(0.9), args.slope_max.unwrap_or(1.1));
    let base = specs[0].kind.label();
    for other in &specs[1..] {
        let fit = rho_regression(&rows, base, other.kind.label())?;
        let pass = (lo..=hi).contains(&fit.slope) && fit.residual_std <= args.max_residual;
        eprintln!(
            "{} rho({}) on rho({base}): slope {:.4} in [{lo}, {hi}], residual std {:.4} (limit {})",
            verdict(pass),
            other.kind.label(),
            fit.slope,
            fit.residual_std,
            args.max_residual
        );
    }
    Ok(())
}
