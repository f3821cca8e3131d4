use std::collections::BTreeMap;

use rand::Rng;

use super::{argmax_lowest_id, indicator, ArmStats, BanditAlgorithm};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::types::{ArmId, Context, Event};

/// Deterministic context-free UCB.
///
/// Score of arm `a` after `t` retained events is
/// `mean_a + alpha * sqrt(2 ln t / n_a)`; arms with `n_a = 0` score `+inf`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ucb<S> {
    alpha: S,
    trials: u64,
    stats: BTreeMap<ArmId, ArmStats<S>>,
}

impl<S: Scalar> Ucb<S> {
    pub fn new(alpha: S) -> Result<Self> {
        if !(alpha >= S::zero() && alpha.is_finite()) {
            return Err(Error::param("alpha", format!("{alpha} must be finite and >= 0")));
        }
        Ok(Ucb { alpha, trials: 0, stats: BTreeMap::new() })
    }

    /// Rebuilds a state from explicit per-arm statistics.
    pub fn with_stats(alpha: S, stats: impl IntoIterator<Item = (ArmId, ArmStats<S>)>) -> Result<Self> {
        let mut ucb = Self::new(alpha)?;
        ucb.stats = stats.into_iter().collect();
        ucb.trials = ucb.stats.values().map(|s| s.count).sum();
        Ok(ucb)
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn stats(&self, arm: ArmId) -> ArmStats<S> {
        self.stats.get(&arm).copied().unwrap_or_default()
    }

    pub fn score(&self, arm: ArmId) -> S {
        let s = self.stats(arm);
        if s.count == 0 {
            return S::infinity();
        }
        let t = S::of(self.trials as f64);
        let width = (S::of(2.0) * t.ln() / S::of(s.count as f64)).sqrt();
        s.mean() + self.alpha * width
    }

    fn choose(&self, arms: &[ArmId]) -> Result<ArmId> {
        argmax_lowest_id(arms, |a| Ok(self.score(a)))
    }
}

impl<S: Scalar> BanditAlgorithm<S> for Ucb<S> {
    fn name(&self) -> &'static str {
        "ucb"
    }

    fn select_arm<R: Rng + ?Sized>(
        &self,
        _context: &Context<S>,
        arms: &[ArmId],
        _rng: &mut R,
    ) -> Result<ArmId> {
        self.choose(arms)
    }

    fn update(&mut self, event: &Event<S>) -> Result<()> {
        let s = self.stats.entry(event.chosen).or_default();
        s.count += 1;
        s.sum += event.payoff;
        self.trials += 1;
        Ok(())
    }

    fn arm_distribution(&self, _context: &Context<S>, arms: &[ArmId]) -> Result<Vec<S>> {
        Ok(indicator(arms, self.choose(arms)?))
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::types::arm_range;

    #[test]
    fn hand_evaluated_scores() {
        // counts [10, 2], means [0.6, 0.5], t = 12
        let ucb = Ucb::with_stats(
            1.0f64,
            [
                (ArmId(0), ArmStats { count: 10, sum: 6.0 }),
                (ArmId(1), ArmStats { count: 2, sum: 1.0 }),
            ],
        )
        .unwrap();
        assert_eq!(ucb.trials(), 12);
        // 0.6 + sqrt(2 ln 12 / 10) = 1.304969...; 0.5 + sqrt(ln 12) = 2.076351...
        let s0 = 0.6 + (2.0 * 12f64.ln() / 10.0).sqrt();
        let s1 = 0.5 + (2.0 * 12f64.ln() / 2.0).sqrt();
        assert!((s0 - 1.304_969).abs() < 1e-6 && (s1 - 2.076_359).abs() < 1e-6);
        assert!((ucb.score(ArmId(0)) - s0).abs() < 1e-12);
        assert!((ucb.score(ArmId(1)) - s1).abs() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(ucb.select_arm(&Context::empty(), &arm_range(2), &mut rng).unwrap(), ArmId(1));
    }

    #[test]
    fn unplayed_arms_first_lowest_id() {
        let mut ucb = Ucb::<f64>::new(1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let arms = arm_range(3);
        assert_eq!(ucb.select_arm(&Context::empty(), &arms, &mut rng).unwrap(), ArmId(0));
        ucb.update(&Event::uniform(Context::empty(), arms.clone(), ArmId(0), 1.0)).unwrap();
        assert_eq!(ucb.select_arm(&Context::empty(), &arms, &mut rng).unwrap(), ArmId(1));
    }

    #[test]
    fn alpha_zero_is_greedy() {
        let ucb = Ucb::with_stats(
            0.0f64,
            [
                (ArmId(0), ArmStats { count: 10, sum: 6.0 }),
                (ArmId(1), ArmStats { count: 2, sum: 1.0 }),
            ],
        )
        .unwrap();
        assert_eq!(ucb.choose(&arm_range(2)).unwrap(), ArmId(0));
        assert!(Ucb::new(-1.0f64).is_err());
    }
}
