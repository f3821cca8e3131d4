//! Exhaustive enumeration of retained-history distributions on tiny worlds
//! with deterministic payoffs.
//!
//! `direct_histories` walks direct interaction with the world; it never
//! touches the replay code. `replayed_histories` drives `Replayer::step`
//! with every (context, logged arm, algorithm choice) outcome of one stream
//! event; skipped events must leave the replayer untouched, so the repeat
//! loop collapses to a geometric series over the skip probability.

use std::collections::BTreeMap;

use bandit_replay::algorithms::BanditAlgorithm;
use bandit_replay::replay::{ReplayOptions, Replayer};
use bandit_replay::types::{ArmId, Event};
use bandit_replay::world::WorldModel;

/// (context index, arm, payoff) per retained step.
pub type HistoryKey = Vec<(usize, u32, u64)>;

pub type Distribution = BTreeMap<HistoryKey, f64>;

fn support(world: &WorldModel<f64>) -> Vec<(bandit_replay::world::SampledContext<f64>, f64)> {
    world.context_support().expect("enumerable world")
}

fn payoff(world: &WorldModel<f64>, ctx: &bandit_replay::world::SampledContext<f64>, arm: ArmId) -> f64 {
    let p = world.expected_payoff(ctx, arm).unwrap();
    assert!(p == 0.0 || p == 1.0, "enumeration needs deterministic payoffs");
    p
}

pub fn direct_histories<A>(world: &WorldModel<f64>, algorithm: A, steps: usize) -> Distribution
where
    A: BanditAlgorithm<f64> + Clone,
{
    let arms = world.arms_at(0);
    let support = support(world);
    let mut frontier = vec![(algorithm, HistoryKey::new(), 1.0)];
    for _ in 0..steps {
        let mut next = Vec::new();
        for (alg, key, prob) in frontier {
            for (ctx, px) in &support {
                let dist = alg.arm_distribution(&ctx.context, &arms).unwrap();
                for (&arm, &q) in arms.iter().zip(&dist) {
                    if q == 0.0 {
                        continue;
                    }
                    let r = payoff(world, ctx, arm);
                    let mut a = alg.clone();
                    a.update(&Event::uniform(ctx.context.clone(), arms.clone(), arm, r)).unwrap();
                    let mut k = key.clone();
                    k.push((ctx.index.unwrap(), arm.0, r.to_bits()));
                    next.push((a, k, prob * px * q));
                }
            }
        }
        frontier = next;
    }
    collect(frontier.into_iter().map(|(_, k, p)| (k, p)))
}

pub fn replayed_histories<A>(world: &WorldModel<f64>, algorithm: A, steps: usize) -> Distribution
where
    A: BanditAlgorithm<f64> + Clone,
{
    let arms = world.arms_at(0);
    let k = arms.len() as f64;
    let support = support(world);
    let mut frontier = vec![(Replayer::new(algorithm, ReplayOptions::default()), HistoryKey::new(), 1.0)];
    for _ in 0..steps {
        let mut next = Vec::new();
        for (replayer, key, prob) in frontier {
            let mut skip = 0.0;
            let mut retained = Vec::new();
            for (ctx, px) in &support {
                let dist = replayer.algorithm().arm_distribution(&ctx.context, &arms).unwrap();
                for &logged in &arms {
                    let r = payoff(world, ctx, logged);
                    let event = Event::uniform(ctx.context.clone(), arms.clone(), logged, r);
                    for (&choice, &q) in arms.iter().zip(&dist) {
                        if q == 0.0 {
                            continue;
                        }
                        let w = px / k * q;
                        let mut rp = replayer.clone();
                        if rp.step(&event, choice).unwrap() {
                            let mut key = key.clone();
                            key.push((ctx.index.unwrap(), logged.0, r.to_bits()));
                            retained.push((rp, key, w));
                        } else {
                            assert_eq!(rp.retained(), replayer.retained());
                            assert_eq!(rp.total_payoff(), replayer.total_payoff());
                            skip += w;
                        }
                    }
                }
            }
            // Σ_n skip^n · w: the event is eventually retained after n skips.
            let eventually = 1.0 / (1.0 - skip);
            for (rp, key, w) in retained {
                next.push((rp, key, prob * w * eventually));
            }
        }
        frontier = next;
    }
    collect(frontier.into_iter().map(|(_, k, p)| (k, p)))
}

fn collect(items: impl Iterator<Item = (HistoryKey, f64)>) -> Distribution {
    let mut out = Distribution::new();
    for (k, p) in items {
        *out.entry(k).or_default() += p;
    }
    out
}

pub fn max_deviation(a: &Distribution, b: &Distribution) -> f64 {
    a.keys()
        .chain(b.keys())
        .map(|k| (a.get(k).copied().unwrap_or(0.0) - b.get(k).copied().unwrap_or(0.0)).abs())
        .fold(0.0, f64::max)
}

/// 2 contexts × 2 arms with deterministic 0/1 payoffs and unequal context
/// probabilities.
pub fn tiny_world() -> WorldModel<f64> {
    use bandit_replay::types::Context;
    use bandit_replay::world::{ArmSchedule, ContextSampler, PayoffModel};
    WorldModel::new(
        2,
        ArmSchedule::Fixed(2),
        ContextSampler::Finite {
            support: vec![Context::new(vec![0.0, 1.0]), Context::new(vec![1.0, 1.0])],
            weights: vec![0.3, 0.7],
        },
        PayoffModel::Table(vec![vec![1.0, 0.0], vec![0.0, 1.0]]),
    )
    .unwrap()
}
