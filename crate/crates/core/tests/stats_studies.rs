//! Convergence, bound coverage and offline/online consistency studies at
//! test-suite scale.

use bandit_replay::algorithms::{Algorithm, EpsGreedy, FixedPolicy, LinUcb, Ucb};
use bandit_replay::stats::{
    bound_coverage, consistency_experiment, convergence_curve, fit_decay, rho_regression, ConsistencyConfig,
    Perturbation,
};
use bandit_replay::types::{ArmId, Context};
use bandit_replay::world::{ArmSchedule, ContextSampler, PayoffModel, WorldModel};

fn two_arm_world() -> WorldModel<f64> {
    WorldModel::new(0, ArmSchedule::Fixed(2), ContextSampler::Constant(Context::empty()), PayoffModel::Constant(vec![0.5, 0.3]))
        .unwrap()
}

fn linear_world() -> WorldModel<f64> {
    WorldModel::new(
        3,
        ArmSchedule::Fixed(4),
        ContextSampler::UnitBox,
        PayoffModel::Linear(vec![
            vec![0.3, 0.1, 0.1],
            vec![0.1, 0.4, 0.0],
            vec![0.0, 0.2, 0.5],
            vec![0.2, 0.2, 0.2],
        ]),
    )
    .unwrap()
}

#[test]
fn decay_exponent_is_stable_across_seeds() {
    let world = two_arm_world();
    let policy = FixedPolicy::Constant(ArmId(0));
    let slopes: Vec<f64> = (0..10)
        .map(|seed| {
            let curve = convergence_curve(&policy, &world, &[1_000, 10_000, 100_000], 200, 100 + seed).unwrap();
            assert!(curve.iter().all(|p| p.median_error >= 0.0));
            fit_decay(&curve).unwrap().slope
        })
        .collect();
    let mean = slopes.iter().sum::<f64>() / slopes.len() as f64;
    let std = (slopes.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (slopes.len() - 1) as f64).sqrt();
    assert!(std < 0.05, "slopes {slopes:?}");
    assert!((-0.6..=-0.4).contains(&mean), "mean slope {mean}");
}

#[test]
fn bound_covers_at_both_confidence_levels() {
    let world = two_arm_world();
    let policy = FixedPolicy::Constant(ArmId(0));
    for delta in [0.05, 0.2] {
        let report = bound_coverage(&policy, &world, 1_000, delta, 2_000, 7).unwrap();
        assert!(report.fraction() >= 1.0 - delta, "delta {delta}: {}", report.fraction());
    }
}

type Factory = fn() -> Algorithm<f64>;

fn contenders() -> Vec<(&'static str, Factory)> {
    vec![
        ("eps-greedy", || EpsGreedy::new(0.4).unwrap().into()),
        ("ucb", || Ucb::new(1.0).unwrap().into()),
        ("linucb", || LinUcb::new(1.0, 3).unwrap().into()),
    ]
}

#[test]
fn unperturbed_ratios_near_one() {
    let config = ConsistencyConfig {
        segments: 4,
        log_events: 40_000,
        online_trials: None,
        perturbation: Perturbation::None,
    };
    let rows = consistency_experiment(&contenders(), &linear_world(), config, 11).unwrap();
    assert_eq!(rows.len(), 12);
    for r in &rows {
        assert!((r.rho - 1.0).abs() < 0.1, "{r:?}");
    }
}

#[test]
fn shared_factor_moves_all_ratios_together() {
    let config = ConsistencyConfig {
        segments: 12,
        log_events: 40_000,
        online_trials: None,
        perturbation: Perturbation::Uniform { low: 0.6, high: 1.0 },
    };
    let rows = consistency_experiment(&contenders(), &linear_world(), config, 12).unwrap();
    for seg in rows.chunks(3) {
        let expected = 1.0 / seg[0].factor;
        for r in seg {
            assert_eq!(r.factor, seg[0].factor);
            assert!((r.rho / expected - 1.0).abs() < 0.1, "{r:?}");
        }
    }
    for other in ["ucb", "linucb"] {
        let fit = rho_regression(&rows, "eps-greedy", other).unwrap();
        assert!((0.8..=1.2).contains(&fit.slope), "{other}: {fit:?}");
    }
}
