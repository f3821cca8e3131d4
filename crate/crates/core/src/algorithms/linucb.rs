use std::collections::BTreeMap;

use rand::Rng;

use super::{argmax_lowest_id, indicator, BanditAlgorithm};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::types::{ArmId, Context, Event};

/// Ridge-regression state of one arm.
///
/// `design` starts at the identity and accumulates `x xᵀ`; `response`
/// accumulates `r x`. The inverse and coefficients are refreshed on every
/// update so scoring costs `O(d²)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RidgeArm<S> {
    design: Matrix<S>,
    response: Vec<S>,
    inverse: Matrix<S>,
    coef: Vec<S>,
}

impl<S: Scalar> RidgeArm<S> {
    fn fresh(dim: usize) -> Self {
        RidgeArm {
            design: Matrix::identity(dim),
            response: vec![S::zero(); dim],
            inverse: Matrix::identity(dim),
            coef: vec![S::zero(); dim],
        }
    }

    pub fn design(&self) -> &Matrix<S> {
        &self.design
    }

    pub fn response(&self) -> &[S] {
        &self.response
    }

    pub fn coefficients(&self) -> &[S] {
        &self.coef
    }

    fn score(&self, x: &[S], alpha: S) -> S {
        let mean: S = self.coef.iter().zip(x).map(|(&w, &xi)| w * xi).sum();
        let variance = self.inverse.quad_form(x).max(S::zero());
        mean + alpha * variance.sqrt()
    }
}

/// LinUCB with disjoint per-arm linear models.
#[derive(Debug, Clone, PartialEq)]
pub struct LinUcb<S> {
    alpha: S,
    dim: usize,
    arms: BTreeMap<ArmId, RidgeArm<S>>,
    fresh: RidgeArm<S>,
}

impl<S: Scalar> LinUcb<S> {
    pub fn new(alpha: S, dim: usize) -> Result<Self> {
        if !(alpha >= S::zero() && alpha.is_finite()) {
            return Err(Error::param("alpha", format!("{alpha} must be finite and >= 0")));
        }
        Ok(LinUcb { alpha, dim, arms: BTreeMap::new(), fresh: RidgeArm::fresh(dim) })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arm(&self, arm: ArmId) -> &RidgeArm<S> {
        self.arms.get(&arm).unwrap_or(&self.fresh)
    }

    fn check_dim(&self, context: &Context<S>) -> Result<()> {
        if context.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, actual: context.dim() });
        }
        Ok(())
    }

    /// `θ_aᵀx + α sqrt(xᵀ A_a⁻¹ x)` with `θ_a = A_a⁻¹ b_a`.
    pub fn score(&self, context: &Context<S>, arm: ArmId) -> Result<S> {
        self.check_dim(context)?;
        Ok(self.arm(arm).score(context.features(), self.alpha))
    }

    fn choose(&self, context: &Context<S>, arms: &[ArmId]) -> Result<ArmId> {
        self.check_dim(context)?;
        argmax_lowest_id(arms, |a| Ok(self.arm(a).score(context.features(), self.alpha)))
    }
}

impl<S: Scalar> BanditAlgorithm<S> for LinUcb<S> {
    fn name(&self) -> &'static str {
        "linucb"
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
        self.check_dim(&event.context)?;
        let x = event.context.features();
        let dim = self.dim;
        let state = self.arms.entry(event.chosen).or_insert_with(|| RidgeArm::fresh(dim));
        state.design.add_outer(x);
        for (b, &xi) in state.response.iter_mut().zip(x) {
            *b += event.payoff * xi;
        }
        let chol = state.design.cholesky().ok_or(Error::SingularMatrix { arm: event.chosen })?;
        state.coef = chol.solve(&state.response);
        state.inverse = chol.inverse();
        Ok(())
    }

    fn arm_distribution(&self, context: &Context<S>, arms: &[ArmId]) -> Result<Vec<S>> {
        Ok(indicator(arms, self.choose(context, arms)?))
    }
}
