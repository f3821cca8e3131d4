mod support;

use bandit_replay::algorithms::{Algorithm, EpsGreedy, FirstContextCommit, FixedPolicy, LinUcb, Ucb};
use bandit_replay::types::{ArmId, Context};

use support::enumerate::{direct_histories, max_deviation, replayed_histories, tiny_world};

fn algorithms() -> Vec<Algorithm<f64>> {
    vec![
        FixedPolicy::Constant(ArmId(1)).into(),
        FixedPolicy::Table { entries: vec![(Context::new(vec![1.0, 1.0]), ArmId(1))], fallback: ArmId(0) }
            .into(),
        FixedPolicy::Uniform.into(),
        FirstContextCommit::new().into(),
        EpsGreedy::new(0.3).unwrap().into(),
        EpsGreedy::new(0.0).unwrap().into(),
        Ucb::new(1.0).unwrap().into(),
        LinUcb::new(1.0, 2).unwrap().into(),
    ]
}

#[test]
fn replayed_history_distribution_equals_direct_interaction() {
    let world = tiny_world();
    for alg in algorithms() {
        for steps in 1..=4 {
            let direct = direct_histories(&world, alg.clone(), steps);
            let replayed = replayed_histories(&world, alg.clone(), steps);
            let total: f64 = replayed.values().sum();
            assert!((total - 1.0).abs() < 1e-12, "{alg:?}: mass {total}");
            let dev = max_deviation(&direct, &replayed);
            assert!(dev <= 1e-12, "{alg:?} steps {steps}: deviation {dev}");
        }
    }
}

#[test]
fn enumeration_detects_a_biased_evaluator() {
    // Sanity check of the oracle itself: a direct process on a different
    // world must not match.
    let world = tiny_world();
    let other = bandit_replay::world::WorldModel::new(
        2,
        world.schedule().clone(),
        bandit_replay::world::ContextSampler::Finite {
            support: vec![Context::new(vec![0.0, 1.0]), Context::new(vec![1.0, 1.0])],
            weights: vec![0.5, 0.5],
        },
        world.payoff_model().clone(),
    )
    .unwrap();
    let alg: Algorithm<f64> = Ucb::new(1.0).unwrap().into();
    let dev = max_deviation(&direct_histories(&other, alg.clone(), 2), &replayed_histories(&world, alg, 2));
    assert!(dev > 1e-3);
}
