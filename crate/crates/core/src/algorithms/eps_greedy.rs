use std::collections::BTreeMap;

use rand::Rng;

use super::{argmax_lowest_id, ArmStats, BanditAlgorithm};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::types::{ArmId, Context, Event};

/// Context-free ε-greedy with a fixed ε.
///
/// Each selection draws one uniform coin; below ε it draws a uniformly
/// random candidate, otherwise it plays the arm with the highest empirical
/// mean. Unplayed arms have mean 0.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsGreedy<S> {
    epsilon: S,
    stats: BTreeMap<ArmId, ArmStats<S>>,
}

impl<S: Scalar> EpsGreedy<S> {
    pub fn new(epsilon: S) -> Result<Self> {
        if !(epsilon >= S::zero() && epsilon <= S::one()) {
            return Err(Error::param("epsilon", format!("{epsilon} outside [0, 1]")));
        }
        Ok(EpsGreedy { epsilon, stats: BTreeMap::new() })
    }

    pub fn epsilon(&self) -> S {
        self.epsilon
    }

    pub fn stats(&self, arm: ArmId) -> ArmStats<S> {
        self.stats.get(&arm).copied().unwrap_or_default()
    }

    pub fn mean(&self, arm: ArmId) -> S {
        self.stats(arm).mean()
    }

    fn greedy(&self, arms: &[ArmId]) -> Result<ArmId> {
        argmax_lowest_id(arms, |a| Ok(self.mean(a)))
    }
}

impl<S: Scalar> BanditAlgorithm<S> for EpsGreedy<S> {
    fn name(&self) -> &'static str {
        "eps-greedy"
    }

    fn select_arm<R: Rng + ?Sized>(
        &self,
        _context: &Context<S>,
        arms: &[ArmId],
        rng: &mut R,
    ) -> Result<ArmId> {
        if arms.is_empty() {
            return Err(Error::NoCandidateArms);
        }
        let coin: f64 = rng.gen();
        if coin < self.epsilon.as_f64() {
            Ok(arms[rng.gen_range(0..arms.len())])
        } else {
            self.greedy(arms)
        }
    }

    fn update(&mut self, event: &Event<S>) -> Result<()> {
        let s = self.stats.entry(event.chosen).or_default();
        s.count += 1;
        s.sum += event.payoff;
        Ok(())
    }

    fn arm_distribution(&self, _context: &Context<S>, arms: &[ArmId]) -> Result<Vec<S>> {
        let greedy = self.greedy(arms)?;
        let explore = self.epsilon / S::of_usize(arms.len());
        Ok(arms
            .iter()
            .map(|&a| if a == greedy { S::one() - self.epsilon + explore } else { explore })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::types::arm_range;

    fn with_means(epsilon: f64, means: &[f64]) -> EpsGreedy<f64> {
        let mut alg = EpsGreedy::new(epsilon).unwrap();
        for (i, &m) in means.iter().enumerate() {
            // ten pulls with the requested mean
            for k in 0..10 {
                let payoff = if (k as f64) < m * 10.0 { 1.0 } else { 0.0 };
                let e = Event::uniform(Context::empty(), arm_range(means.len()), ArmId(i as u32), payoff);
                alg.update(&e).unwrap();
            }
        }
        alg
    }

    #[test]
    fn greedy_when_epsilon_zero() {
        let alg = with_means(0.0, &[0.2, 0.5, 0.1]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            assert_eq!(alg.select_arm(&Context::empty(), &arm_range(3), &mut rng).unwrap(), ArmId(1));
        }
    }

    #[test]
    fn uniform_when_epsilon_one() {
        let alg = with_means(1.0, &[0.2, 0.5, 0.1]);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let n = 100_000;
        let mut counts = [0usize; 3];
        for _ in 0..n {
            counts[alg.select_arm(&Context::empty(), &arm_range(3), &mut rng).unwrap().index()] += 1;
        }
        for c in counts {
            assert!((c as f64 / n as f64 - 1.0 / 3.0).abs() < 0.02, "{counts:?}");
        }
    }

    #[test]
    fn running_average() {
        let mut alg = EpsGreedy::<f64>::new(0.1).unwrap();
        for payoff in [1.0, 0.0] {
            alg.update(&Event::uniform(Context::empty(), arm_range(4), ArmId(3), payoff)).unwrap();
        }
        assert_eq!(alg.stats(ArmId(3)), ArmStats { count: 2, sum: 1.0 });
        assert_eq!(alg.mean(ArmId(3)), 0.5);
        assert_eq!(alg.mean(ArmId(0)), 0.0);
    }

    #[test]
    fn distribution_sums_to_one() {
        let alg = with_means(0.4, &[0.2, 0.5, 0.1, 0.3]);
        let d = alg.arm_distribution(&Context::empty(), &arm_range(4)).unwrap();
        assert!((d.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!((d[1] - 0.7).abs() < 1e-15);
        assert!((d[0] - 0.1).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_epsilon() {
        assert!(EpsGreedy::new(1.5f64).is_err());
        assert!(EpsGreedy::new(f64::NAN).is_err());
        let alg = EpsGreedy::new(0.5f64).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            alg.select_arm(&Context::empty(), &[], &mut rng),
            Err(Error::NoCandidateArms)
        ));
    }
}
