use bandit_replay::algorithms::{EpsGreedy, FirstContextCommit, FixedPolicy, LinUcb, Ucb};
use bandit_replay::{Algorithm, ArmId, Result};
use clap::ValueEnum;

use crate::AlgoArgs;

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgoKind {
    Fixed,
    EpsGreedy,
    Ucb,
    Linucb,
    /// Commits forever to the arm matching its first context.
    CommitFirst,
}

impl AlgoKind {
    pub fn label(self) -> &'static str {
        match self {
            AlgoKind::Fixed => "fixed",
            AlgoKind::EpsGreedy => "eps-greedy",
            AlgoKind::Ucb => "ucb",
            AlgoKind::Linucb => "linucb",
            AlgoKind::CommitFirst => "commit-first",
        }
    }
}

/// Fully parameterized algorithm, validated once so factories can build
/// fresh copies without failing.
#[derive(Debug, Clone, Copy)]
pub struct AlgoSpec {
    pub kind: AlgoKind,
    params: (u32, f64, f64),
    dim: usize,
}

impl AlgoSpec {
    pub fn new(kind: AlgoKind, args: &AlgoArgs, dim: usize) -> Result<Self> {
        let spec = AlgoSpec { kind, params: (args.arm, args.epsilon, args.alpha), dim };
        spec.try_build()?;
        Ok(spec)
    }

    fn try_build(&self) -> Result<Algorithm> {
        let (arm, epsilon, alpha) = self.params;
        Ok(match self.kind {
            AlgoKind::Fixed => FixedPolicy::Constant(ArmId(arm)).into(),
            AlgoKind::EpsGreedy => EpsGreedy::new(epsilon)?.into(),
            AlgoKind::Ucb => Ucb::new(alpha)?.into(),
            AlgoKind::Linucb => LinUcb::new(alpha, self.dim)?.into(),
            AlgoKind::CommitFirst => FirstContextCommit::new().into(),
        })
    }

    pub fn build(&self) -> Algorithm {
        self.try_build().expect("validated in AlgoSpec::new")
    }
}
