//! Verification layer: replication studies, convergence curves, the
//! finite-sample deviation bound and its empirical coverage, and
//! offline/online consistency experiments.
//!
//! Runs are independent and execute in parallel; every run derives its
//! generator from `(seed, run index)` and results are gathered in run
//! order, so output does not depend on scheduling.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::algorithms::BanditAlgorithm;
use crate::error::{Error, Result};
use crate::replay::{evaluate_finite, ReplayOptions};
use crate::scalar::Scalar;
use crate::types::Event;
use crate::world::{generate_log, simulate_online, true_per_trial_payoff, LoggingPolicy, WorldModel};
use crate::SimRng;

/// Generator for stream `stream` of run `run` under `seed`.
pub fn run_rng(seed: u64, run: u64, stream: u64) -> SimRng {
    let mut rng = SimRng::seed_from_u64(seed);
    rng.set_stream(run.wrapping_mul(8).wrapping_add(stream));
    rng
}

/// `count` well-mixed seeds derived from `base`.
pub fn derive_seeds(base: u64, count: usize) -> Vec<u64> {
    let mut rng = SimRng::seed_from_u64(base);
    (0..count).map(|_| rng.gen()).collect()
}

fn median<S: Scalar>(values: &mut [S]) -> S {
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / S::of(2.0)
    }
}

/// Spread of `g_hat` over replicated evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReplicationSummary<S> {
    pub mean: S,
    /// Sample standard deviation (`R - 1` denominator).
    pub std: S,
    pub max: S,
    pub min: S,
    /// Runs that produced an estimate.
    pub runs: usize,
    /// Runs dropped because they retained no events.
    pub excluded: usize,
    pub subsample_p: S,
}

impl<S: Scalar> ReplicationSummary<S> {
    pub fn from_values(values: &[S], excluded: usize, subsample_p: S) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::AllRunsExcluded { runs: excluded });
        }
        let n = S::of_usize(values.len());
        let mean = values.iter().copied().sum::<S>() / n;
        let std = if values.len() > 1 {
            (values.iter().map(|&v| (v - mean) * (v - mean)).sum::<S>() / (n - S::one())).sqrt()
        } else {
            S::zero()
        };
        let max = values.iter().copied().fold(S::neg_infinity(), S::max);
        let min = values.iter().copied().fold(S::infinity(), S::min);
        Ok(ReplicationSummary { mean, std, max, min, runs: values.len(), excluded, subsample_p })
    }

    /// `std / mean`
    pub fn relative_std(&self) -> S {
        self.std / self.mean
    }
}

/// Evaluates a fresh algorithm on an independent Bernoulli(`subsample_p`)
/// subsample of `log` once per seed, with the finite-stream evaluator.
pub fn replicate<S, A, F>(
    factory: F,
    log: &[Event<S>],
    subsample_p: S,
    seeds: &[u64],
) -> Result<ReplicationSummary<S>>
where
    S: Scalar,
    A: BanditAlgorithm<S>,
    F: Fn() -> A + Sync,
{
    if seeds.len() < 2 {
        return Err(Error::param("runs", "need at least 2 runs"));
    }
    if !(subsample_p > S::zero() && subsample_p <= S::one()) {
        return Err(Error::param("subsample_p", format!("{subsample_p} outside (0, 1]")));
    }
    let p = subsample_p.as_f64();
    let outcomes: Vec<Result<Option<S>>> = seeds
        .par_iter()
        .map(|&seed| {
            let mut coins = run_rng(seed, 0, 0);
            let mut alg_rng = run_rng(seed, 0, 1);
            let sub = log.iter().filter(|_| p >= 1.0 || coins.gen::<f64>() < p);
            match evaluate_finite(factory(), sub, &mut alg_rng, ReplayOptions::default()) {
                Ok(r) => Ok(Some(r.per_trial)),
                Err(Error::NoValidEvents) => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect();
    let mut values = Vec::with_capacity(seeds.len());
    let mut excluded = 0;
    for outcome in outcomes {
        match outcome? {
            Some(v) => values.push(v),
            None => excluded += 1,
        }
    }
    ReplicationSummary::from_values(&values, excluded, subsample_p)
}

/// Least-squares line `y = intercept + slope * x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// Residual standard deviation (`n - 2` denominator).
    pub residual_std: f64,
    pub points: usize,
}

pub fn fit_line(xs: &[f64], ys: &[f64]) -> Result<LineFit> {
    let n = xs.len();
    if n != ys.len() || n < 3 {
        return Err(Error::param("points", "need at least 3 paired points"));
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if !(sxx > 0.0) {
        return Err(Error::param("points", "x values have no spread"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = xs.iter().zip(ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    Ok(LineFit { slope, intercept, residual_std: (ss / (nf - 2.0)).sqrt(), points: n })
}

/// Median absolute estimation error at one log size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint<S> {
    pub events: usize,
    pub median_error: S,
    pub mean_retained: f64,
    pub runs: usize,
}

/// For each log size, replays `runs` fresh uniform logs against `policy`
/// and records the median of `|g_π − g_hat|`.
pub fn convergence_curve<S, P>(
    policy: &P,
    world: &WorldModel<S>,
    grid: &[usize],
    runs: usize,
    seed: u64,
) -> Result<Vec<CurvePoint<S>>>
where
    S: Scalar,
    P: BanditAlgorithm<S> + Clone + Sync,
{
    if runs == 0 {
        return Err(Error::param("runs", "must be positive"));
    }
    if grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::param("l_grid", "must be sorted ascending"));
    }
    let truth = true_per_trial_payoff(world, policy)?.value;
    grid.iter()
        .enumerate()
        .map(|(gi, &events)| {
            let outcomes: Vec<Result<(S, usize)>> = (0..runs as u64)
                .into_par_iter()
                .map(|run| {
                    let id = (gi as u64) << 32 | run;
                    let log = generate_log(world, LoggingPolicy::Uniform, events, run_rng(seed, id, 0))?;
                    let r = evaluate_finite(policy.clone(), log, &mut run_rng(seed, id, 1), ReplayOptions::default())?;
                    Ok(((truth - r.per_trial).abs(), r.retained))
                })
                .collect();
            let mut errors = Vec::with_capacity(runs);
            let mut retained = 0usize;
            for o in outcomes {
                let (e, t) = o?;
                errors.push(e);
                retained += t;
            }
            Ok(CurvePoint {
                events,
                median_error: median(&mut errors),
                mean_retained: retained as f64 / runs as f64,
                runs,
            })
        })
        .collect()
}

/// Fits `ln(error) = c + slope · ln(L)`. Fails if any error is zero.
pub fn fit_decay<S: Scalar>(curve: &[CurvePoint<S>]) -> Result<LineFit> {
    if curve.iter().any(|p| !(p.median_error > S::zero())) {
        return Err(Error::param("curve", "log-log fit needs strictly positive errors"));
    }
    let xs: Vec<f64> = curve.iter().map(|p| (p.events as f64).ln()).collect();
    let ys: Vec<f64> = curve.iter().map(|p| p.median_error.as_f64().ln()).collect();
    fit_line(&xs, &ys)
}

/// Deviation bound for a fixed policy replayed on `L` uniform events.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport<S> {
    pub k: usize,
    pub l: usize,
    pub g: S,
    pub delta: S,
    /// `sqrt(3K/L · ln(4/δ))`, relative deviation of `T` from `L/K`.
    pub gamma1: S,
    /// `sqrt(3K/(L g) · ln(4/δ))`, relative deviation of `Ĝ` from `L g/K`.
    pub gamma2: S,
    /// `(γ₁ + γ₂) g / (1 − γ₁)`
    pub bound: S,
}

/// With probability at least `1 − δ`, `|Ĝ/T − g| ≤ bound` for a fixed
/// policy of value `g` replayed on `L` i.i.d. uniform events over `K` arms.
pub fn deviation_bound<S: Scalar>(k: usize, l: usize, g: S, delta: S) -> Result<BoundReport<S>> {
    if k == 0 || l == 0 {
        return Err(Error::param("k, l", "must be positive"));
    }
    if !(g > S::zero() && g <= S::one()) {
        return Err(Error::param("g", format!("{g} outside (0, 1]")));
    }
    if !(delta > S::zero() && delta < S::one()) {
        return Err(Error::param("delta", format!("{delta} outside (0, 1)")));
    }
    let log_term = (S::of(4.0) / delta).ln();
    let ratio = S::of(3.0) * S::of_usize(k) / S::of_usize(l);
    let gamma1 = (ratio * log_term).sqrt();
    if gamma1 >= S::one() {
        return Err(Error::BoundUndefined { gamma1: gamma1.as_f64() });
    }
    let gamma2 = (ratio / g * log_term).sqrt();
    let bound = (gamma1 + gamma2) * g / (S::one() - gamma1);
    Ok(BoundReport { k, l, g, delta, gamma1, gamma2, bound })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageReport<S> {
    pub bound: BoundReport<S>,
    pub truth: S,
    pub runs: usize,
    /// Runs with `|g_hat − g_π| ≤ bound`. Runs without valid events count
    /// as not covered.
    pub covered: usize,
}

impl<S> CoverageReport<S> {
    pub fn fraction(&self) -> f64 {
        self.covered as f64 / self.runs as f64
    }
}

/// Empirical coverage of [`deviation_bound`] over `runs` fresh logs of
/// `events` events each, using the world's ground truth as `g`.
pub fn bound_coverage<S, P>(
    policy: &P,
    world: &WorldModel<S>,
    events: usize,
    delta: S,
    runs: usize,
    seed: u64,
) -> Result<CoverageReport<S>>
where
    S: Scalar,
    P: BanditAlgorithm<S> + Clone + Sync,
{
    if !world.schedule().is_fixed() {
        return Err(Error::Config("coverage needs a fixed arm set".into()));
    }
    let truth = true_per_trial_payoff(world, policy)?.value;
    let bound = deviation_bound(world.arms_at(0).len(), events, truth, delta)?;
    let hits: Vec<Result<bool>> = (0..runs as u64)
        .into_par_iter()
        .map(|run| {
            let log = generate_log(world, LoggingPolicy::Uniform, events, run_rng(seed, run, 0))?;
            match evaluate_finite(policy.clone(), log, &mut run_rng(seed, run, 1), ReplayOptions::default()) {
                Ok(r) => Ok((r.per_trial - truth).abs() <= bound.bound),
                Err(Error::NoValidEvents) => Ok(false),
                Err(e) => Err(e),
            }
        })
        .collect();
    let mut covered = 0;
    for h in hits {
        covered += usize::from(h?);
    }
    Ok(CoverageReport { bound, truth, runs, covered })
}

/// Segment-level multiplicative factor applied to online payoffs only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Perturbation {
    None,
    /// Factor drawn uniformly from `[low, high]` once per segment.
    Uniform { low: f64, high: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConsistencyConfig {
    pub segments: usize,
    /// Uniform log size per segment, shared by all algorithms.
    pub log_events: usize,
    /// Online horizon; `None` runs each algorithm online for as many trials
    /// as it retained offline.
    pub online_trials: Option<usize>,
    pub perturbation: Perturbation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencyRow {
    pub segment: usize,
    pub algorithm: String,
    pub factor: f64,
    pub g_online: f64,
    pub g_offline: f64,
    /// `g_offline / g_online`
    pub rho: f64,
}

/// Per segment, runs every algorithm live against the world and replays it
/// on a uniform log from the same world, reporting the ratio of the two
/// per-trial payoffs.
pub fn consistency_experiment<S, A, F>(
    algorithms: &[(&str, F)],
    world: &WorldModel<S>,
    config: ConsistencyConfig,
    seed: u64,
) -> Result<Vec<ConsistencyRow>>
where
    S: Scalar,
    A: BanditAlgorithm<S>,
    F: Fn() -> A + Sync,
{
    if algorithms.len() < 2 {
        return Err(Error::param("algorithms", "need at least 2 algorithms"));
    }
    if config.segments == 0 || config.log_events == 0 {
        return Err(Error::param("segments, log_events", "must be positive"));
    }
    let per_segment: Vec<Result<Vec<ConsistencyRow>>> = (0..config.segments as u64)
        .into_par_iter()
        .map(|segment| {
            let factor = match config.perturbation {
                Perturbation::None => 1.0,
                Perturbation::Uniform { low, high } => {
                    low + (high - low) * run_rng(seed, segment, 0).gen::<f64>()
                }
            };
            let log: Vec<Event<S>> =
                generate_log(world, LoggingPolicy::Uniform, config.log_events, run_rng(seed, segment, 1))?
                    .collect();
            let mut rows = Vec::with_capacity(algorithms.len());
            for (i, (name, factory)) in algorithms.iter().enumerate() {
                let stream = 2 + 2 * i as u64;
                let offline = evaluate_finite(
                    factory(),
                    &log,
                    &mut run_rng(seed, segment, stream),
                    ReplayOptions::default(),
                )?;
                let trials = config.online_trials.unwrap_or(offline.retained);
                let mut alg = factory();
                let online = simulate_online(world, &mut alg, trials, &mut run_rng(seed, segment, stream + 1), false)?;
                let g_online = online.per_trial().as_f64() * factor;
                let g_offline = offline.per_trial.as_f64();
                rows.push(ConsistencyRow {
                    segment: segment as usize,
                    algorithm: name.to_string(),
                    factor,
                    g_online,
                    g_offline,
                    rho: g_offline / g_online,
                });
            }
            Ok(rows)
        })
        .collect();
    let mut rows = Vec::new();
    for seg in per_segment {
        rows.extend(seg?);
    }
    Ok(rows)
}

/// Regresses `ρ_y` on `ρ_x` across segments.
pub fn rho_regression(rows: &[ConsistencyRow], x_algorithm: &str, y_algorithm: &str) -> Result<LineFit> {
    let pick = |name: &str| -> Vec<(usize, f64)> {
        rows.iter().filter(|r| r.algorithm == name).map(|r| (r.segment, r.rho)).collect()
    };
    let (xs, ys) = (pick(x_algorithm), pick(y_algorithm));
    if xs.len() != ys.len() || xs.iter().zip(&ys).any(|(a, b)| a.0 != b.0) {
        return Err(Error::param("rows", "algorithms must cover the same segments"));
    }
    let xv: Vec<f64> = xs.iter().map(|p| p.1).collect();
    let yv: Vec<f64> = ys.iter().map(|p| p.1).collect();
    fit_line(&xv, &yv)
}

// CSV tables

pub fn write_replication_csv<S: Scalar, W: Write>(
    out: W,
    rows: &[(&str, ReplicationSummary<S>)],
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["algorithm", "mean", "std", "max", "min", "runs", "excluded", "subsample_p"])?;
    for (name, s) in rows {
        w.write_record([
            name.to_string(),
            s.mean.to_string(),
            s.std.to_string(),
            s.max.to_string(),
            s.min.to_string(),
            s.runs.to_string(),
            s.excluded.to_string(),
            s.subsample_p.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_curve_csv<S: Scalar, W: Write>(out: W, curve: &[CurvePoint<S>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["events", "median_error", "mean_retained", "runs"])?;
    for p in curve {
        w.write_record([
            p.events.to_string(),
            p.median_error.to_string(),
            p.mean_retained.to_string(),
            p.runs.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_bound_csv<S: Scalar, W: Write>(out: W, reports: &[BoundReport<S>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["k", "l", "g", "delta", "gamma1", "gamma2", "bound"])?;
    for r in reports {
        w.write_record([
            r.k.to_string(),
            r.l.to_string(),
            r.g.to_string(),
            r.delta.to_string(),
            r.gamma1.to_string(),
            r.gamma2.to_string(),
            r.bound.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_coverage_csv<S: Scalar, W: Write>(out: W, reports: &[CoverageReport<S>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["k", "l", "g", "delta", "gamma1", "gamma2", "bound", "runs", "covered", "fraction"])?;
    for c in reports {
        let r = &c.bound;
        w.write_record([
            r.k.to_string(),
            r.l.to_string(),
            r.g.to_string(),
            r.delta.to_string(),
            r.gamma1.to_string(),
            r.gamma2.to_string(),
            r.bound.to_string(),
            c.runs.to_string(),
            c.covered.to_string(),
            c.fraction().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_consistency_csv<W: Write>(out: W, rows: &[ConsistencyRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["segment", "algorithm", "factor", "g_online", "g_offline", "rho"])?;
    for r in rows {
        w.write_record([
            r.segment.to_string(),
            r.algorithm.clone(),
            r.factor.to_string(),
            r.g_online.to_string(),
            r.g_offline.to_string(),
            r.rho.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::FixedPolicy;
    use crate::types::{arm_range, ArmId, Context};
    use crate::world::{ArmSchedule, ContextSampler, PayoffModel};

    #[test]
    fn bound_closed_form() {
        let r = deviation_bound(2, 1000, 0.5f64, 0.05).unwrap();
        assert!((r.gamma1 - 0.162).abs() < 5e-4, "{}", r.gamma1);
        assert!((r.gamma2 - 0.229).abs() < 5e-4, "{}", r.gamma2);
        assert!((r.bound - 0.234).abs() < 5e-4, "{}", r.bound);
        // independent recomputation
        let g1 = (3.0 * 2.0 / 1000.0 * (4.0f64 / 0.05).ln()).sqrt();
        let g2 = (3.0 * 2.0 / (1000.0 * 0.5) * (4.0f64 / 0.05).ln()).sqrt();
        assert!((r.gamma1 - g1).abs() < 1e-12 && (r.gamma2 - g2).abs() < 1e-12);
        assert!((r.bound - (g1 + g2) * 0.5 / (1.0 - g1)).abs() < 1e-12);
    }

    #[test]
    fn bound_scales_with_inverse_sqrt_l() {
        let a = deviation_bound(3, 1000, 0.3f64, 0.1).unwrap();
        let b = deviation_bound(3, 4000, 0.3f64, 0.1).unwrap();
        assert!((a.gamma1 / b.gamma1 - 2.0).abs() < 1e-12);
        assert!((a.gamma2 / b.gamma2 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn bound_undefined_for_small_l() {
        assert!(matches!(deviation_bound(10, 20, 0.5f64, 0.05), Err(Error::BoundUndefined { .. })));
        assert!(deviation_bound(2, 1000, 0.0f64, 0.05).is_err());
        assert!(deviation_bound(2, 1000, 0.5f64, 1.0).is_err());
    }

    #[test]
    fn replicate_deterministic_log() {
        let log: Vec<Event<f64>> =
            (0..200).map(|_| Event::uniform(Context::empty(), arm_range(1), ArmId(0), 1.0)).collect();
        let s = replicate(|| FixedPolicy::Constant(ArmId(0)), &log, 0.5, &derive_seeds(1, 5)).unwrap();
        assert_eq!((s.mean, s.std, s.runs), (1.0, 0.0, 5));
        assert!(replicate(|| FixedPolicy::Constant(ArmId(0)), &log, 0.5, &[1]).is_err());
        assert!(replicate(|| FixedPolicy::Constant(ArmId(0)), &log, 0.0, &[1, 2]).is_err());
    }

    #[test]
    fn replicate_full_log_zero_variance() {
        let world = WorldModel::<f64>::new(
            0,
            ArmSchedule::Fixed(3),
            ContextSampler::Constant(Context::empty()),
            PayoffModel::Constant(vec![0.3, 0.6, 0.1]),
        )
        .unwrap();
        let log: Vec<_> = generate_log(&world, LoggingPolicy::Uniform, 3000, run_rng(0, 0, 0)).unwrap().collect();
        let s = replicate(|| FixedPolicy::Constant(ArmId(1)), &log, 1.0, &derive_seeds(2, 4)).unwrap();
        assert_eq!(s.std, 0.0);
        assert_eq!(s.min, s.max);
    }

    #[test]
    fn replicate_excludes_empty_runs() {
        let log: Vec<Event<f64>> =
            (0..2).map(|_| Event::uniform(Context::empty(), arm_range(2), ArmId(0), 1.0)).collect();
        let err = replicate(|| FixedPolicy::Constant(ArmId(1)), &log, 1.0, &[1, 2]).unwrap_err();
        assert!(matches!(err, Error::AllRunsExcluded { runs: 2 }));
    }

    #[test]
    fn line_fit_exact() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [3.0, 5.0, 7.0, 9.0];
        let f = fit_line(&xs, &ys).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12 && (f.intercept - 1.0).abs() < 1e-12);
        assert!(f.residual_std < 1e-12);
        assert!(fit_line(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn zero_error_on_deterministic_world() {
        let world = WorldModel::<f64>::new(
            0,
            ArmSchedule::Fixed(2),
            ContextSampler::Constant(Context::empty()),
            PayoffModel::Constant(vec![1.0, 0.0]),
        )
        .unwrap();
        let curve = convergence_curve(&FixedPolicy::Constant(ArmId(0)), &world, &[100, 1000], 10, 3).unwrap();
        assert!(curve.iter().all(|p| p.median_error == 0.0));
        assert!(fit_decay(&curve).is_err());
        assert!(convergence_curve(&FixedPolicy::Constant(ArmId(0)), &world, &[1000, 100], 10, 3).is_err());
    }

    #[test]
    fn median_even_and_odd() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn csv_headers() {
        let mut out = Vec::new();
        write_bound_csv(&mut out, &[deviation_bound(2, 1000, 0.5f64, 0.05).unwrap()]).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("k,l,g,delta,gamma1,gamma2,bound\n2,1000,0.5,0.05,"));
    }
}
