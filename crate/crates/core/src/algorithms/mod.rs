//! Bandit algorithms under evaluation.
//!
//! An algorithm's mutable state is a sufficient statistic of the history it
//! has been fed, so `select_arm` takes the state alone. Selection never
//! mutates state; only [`BanditAlgorithm::update`] does.

use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::types::{ArmId, Context, Event};

mod commit;
mod eps_greedy;
mod fixed;
mod linucb;
mod ucb;

pub use commit::FirstContextCommit;
pub use eps_greedy::EpsGreedy;
pub use fixed::FixedPolicy;
pub use linucb::{LinUcb, RidgeArm};
pub use ucb::Ucb;

pub trait BanditAlgorithm<S: Scalar> {
    fn name(&self) -> &'static str;

    /// Chooses one of `arms` for `context`. Randomness comes only from `rng`.
    fn select_arm<R: Rng + ?Sized>(
        &self,
        context: &Context<S>,
        arms: &[ArmId],
        rng: &mut R,
    ) -> Result<ArmId>;

    /// Feeds back one retained event.
    fn update(&mut self, event: &Event<S>) -> Result<()>;

    /// Exact selection probabilities, aligned with `arms`.
    fn arm_distribution(&self, context: &Context<S>, arms: &[ArmId]) -> Result<Vec<S>>;

    /// History-independent policies (the scope of the ground-truth oracle
    /// and of the finite-sample deviation bound).
    fn is_fixed(&self) -> bool {
        false
    }
}

/// Argmax over candidates; ties go to the lowest arm id.
pub(crate) fn argmax_lowest_id<S, F>(arms: &[ArmId], mut score: F) -> Result<ArmId>
where
    S: Scalar,
    F: FnMut(ArmId) -> Result<S>,
{
    let mut best: Option<(ArmId, S)> = None;
    for &arm in arms {
        let s = score(arm)?;
        best = match best {
            None => Some((arm, s)),
            Some((b, bs)) if s > bs || (s == bs && arm < b) => Some((arm, s)),
            keep => keep,
        };
    }
    best.map(|(arm, _)| arm).ok_or(Error::NoCandidateArms)
}

pub(crate) fn indicator<S: Scalar>(arms: &[ArmId], chosen: ArmId) -> Vec<S> {
    arms.iter().map(|&a| if a == chosen { S::one() } else { S::zero() }).collect()
}

/// Per-arm running count and payoff sum.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ArmStats<S> {
    pub count: u64,
    pub sum: S,
}

impl<S: Scalar> ArmStats<S> {
    pub fn mean(&self) -> S {
        if self.count == 0 {
            S::zero()
        } else {
            self.sum / S::of(self.count as f64)
        }
    }
}

/// Closed set of algorithms, for configuration-driven construction.
#[derive(Debug, Clone)]
pub enum Algorithm<S> {
    Fixed(FixedPolicy<S>),
    EpsGreedy(EpsGreedy<S>),
    Ucb(Ucb<S>),
    LinUcb(LinUcb<S>),
    FirstContextCommit(FirstContextCommit),
}

macro_rules! dispatch {
    ($self:expr, $alg:ident => $body:expr) => {
        match $self {
            Algorithm::Fixed($alg) => $body,
            Algorithm::EpsGreedy($alg) => $body,
            Algorithm::Ucb($alg) => $body,
            Algorithm::LinUcb($alg) => $body,
            Algorithm::FirstContextCommit($alg) => $body,
        }
    };
}

impl<S: Scalar> BanditAlgorithm<S> for Algorithm<S> {
    fn name(&self) -> &'static str {
        dispatch!(self, a => BanditAlgorithm::<S>::name(a))
    }

    fn select_arm<R: Rng + ?Sized>(
        &self,
        context: &Context<S>,
        arms: &[ArmId],
        rng: &mut R,
    ) -> Result<ArmId> {
        dispatch!(self, a => a.select_arm(context, arms, rng))
    }

    fn update(&mut self, event: &Event<S>) -> Result<()> {
        dispatch!(self, a => a.update(event))
    }

    fn arm_distribution(&self, context: &Context<S>, arms: &[ArmId]) -> Result<Vec<S>> {
        dispatch!(self, a => a.arm_distribution(context, arms))
    }

    fn is_fixed(&self) -> bool {
        dispatch!(self, a => BanditAlgorithm::<S>::is_fixed(a))
    }
}

impl<S> From<FixedPolicy<S>> for Algorithm<S> {
    fn from(p: FixedPolicy<S>) -> Self {
        Algorithm::Fixed(p)
    }
}

impl<S> From<EpsGreedy<S>> for Algorithm<S> {
    fn from(p: EpsGreedy<S>) -> Self {
        Algorithm::EpsGreedy(p)
    }
}

impl<S> From<Ucb<S>> for Algorithm<S> {
    fn from(p: Ucb<S>) -> Self {
        Algorithm::Ucb(p)
    }
}

impl<S> From<LinUcb<S>> for Algorithm<S> {
    fn from(p: LinUcb<S>) -> Self {
        Algorithm::LinUcb(p)
    }
}

impl<S> From<FirstContextCommit> for Algorithm<S> {
    fn from(p: FirstContextCommit) -> Self {
        Algorithm::FirstContextCommit(p)
    }
}
