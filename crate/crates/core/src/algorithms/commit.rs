use rand::Rng;

use super::{indicator, BanditAlgorithm};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::types::{ArmId, Context, Event};

/// History-dependent algorithm that commits forever on its first retained
/// context: if the first context is "on" it always plays arm 0, otherwise
/// it always plays arm 1. Before anything is retained it applies the same
/// rule to the current context.
///
/// A context is "on" when its first feature is at least 0.5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FirstContextCommit {
    committed: Option<ArmId>,
}

impl FirstContextCommit {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn committed(&self) -> Option<ArmId> {
        self.committed
    }

    fn rule<S: Scalar>(context: &Context<S>) -> ArmId {
        match context.features().first() {
            Some(&x) if x >= S::of(0.5) => ArmId(0),
            _ => ArmId(1),
        }
    }

    fn choose<S: Scalar>(&self, context: &Context<S>, arms: &[ArmId]) -> Result<ArmId> {
        let preferred = self.committed.unwrap_or_else(|| Self::rule(context));
        if arms.contains(&preferred) {
            Ok(preferred)
        } else {
            arms.iter().min().copied().ok_or(Error::NoCandidateArms)
        }
    }
}

impl<S: Scalar> BanditAlgorithm<S> for FirstContextCommit {
    fn name(&self) -> &'static str {
        "first-context-commit"
    }

    fn select_arm<R: Rng + ?Sized>(
        &self,
        context: &Context<S>,
        arms: &[ArmId],
        _rng: &mut R,
    ) -> Result<ArmId> {
        self.choose(context, arms)
    }

    fn update(&mut self, event: &Event<S>) -> Result<()> {
        if self.committed.is_none() {
            self.committed = Some(Self::rule(&event.context));
        }
        Ok(())
    }

    fn arm_distribution(&self, context: &Context<S>, arms: &[ArmId]) -> Result<Vec<S>> {
        Ok(indicator(arms, self.choose(context, arms)?))
    }
}
