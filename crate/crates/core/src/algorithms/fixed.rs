use rand::Rng;

use super::{argmax_lowest_id, indicator, BanditAlgorithm};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::types::{ArmId, Context, Event};

/// History-independent policy.
///
/// When the preferred arm is not in the candidate set, the candidate with
/// the lowest id is chosen instead.
#[derive(Debug, Clone, PartialEq)]
pub enum FixedPolicy<S> {
    /// Always the same arm.
    Constant(ArmId),
    /// Lookup by exact context match; `fallback` for unlisted contexts.
    Table { entries: Vec<(Context<S>, ArmId)>, fallback: ArmId },
    /// `argmax_a w_aᵀx`, with `weights[a]` the weight vector of arm `a`.
    LinearArgmax { weights: Vec<Vec<S>> },
    /// Uniformly random over the candidates.
    Uniform,
}

impl<S: Scalar> FixedPolicy<S> {
    fn preferred(&self, context: &Context<S>, arms: &[ArmId]) -> Result<Option<ArmId>> {
        Ok(match self {
            FixedPolicy::Constant(arm) => Some(*arm),
            FixedPolicy::Table { entries, fallback } => Some(
                entries
                    .iter()
                    .find(|(c, _)| c == context)
                    .map(|&(_, a)| a)
                    .unwrap_or(*fallback),
            ),
            FixedPolicy::LinearArgmax { weights } => Some(argmax_lowest_id(arms, |a| {
                let w = weights.get(a.index()).ok_or(Error::UnknownArm { arm: a })?;
                if w.len() != context.dim() {
                    return Err(Error::DimensionMismatch { expected: w.len(), actual: context.dim() });
                }
                Ok(context.dot(w))
            })?),
            FixedPolicy::Uniform => None,
        })
    }

    fn deterministic_choice(&self, context: &Context<S>, arms: &[ArmId]) -> Result<Option<ArmId>> {
        let lowest = *arms.iter().min().ok_or(Error::NoCandidateArms)?;
        Ok(self
            .preferred(context, arms)?
            .map(|arm| if arms.contains(&arm) { arm } else { lowest }))
    }
}

impl<S: Scalar> BanditAlgorithm<S> for FixedPolicy<S> {
    fn name(&self) -> &'static str {
        "fixed"
    }

    fn select_arm<R: Rng + ?Sized>(
        &self,
        context: &Context<S>,
        arms: &[ArmId],
        rng: &mut R,
    ) -> Result<ArmId> {
        match self.deterministic_choice(context, arms)? {
            Some(arm) => Ok(arm),
            None => Ok(arms[rng.gen_range(0..arms.len())]),
        }
    }

    fn update(&mut self, _event: &Event<S>) -> Result<()> {
        Ok(())
    }

    fn arm_distribution(&self, context: &Context<S>, arms: &[ArmId]) -> Result<Vec<S>> {
        match self.deterministic_choice(context, arms)? {
            Some(arm) => Ok(indicator(arms, arm)),
            None => Ok(vec![S::one() / S::of_usize(arms.len()); arms.len()]),
        }
    }

    fn is_fixed(&self) -> bool {
        true
    }
}
