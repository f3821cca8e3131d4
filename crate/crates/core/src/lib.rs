//! Replay-based offline evaluation of contextual bandit algorithms.
//!
//! A log of events collected by a uniformly random logging policy can be
//! replayed against any bandit algorithm: an event is kept only when the
//! algorithm picks the logged arm, and the kept events are distributed as
//! if the algorithm had interacted with the world directly. The crate
//! provides the evaluators, the algorithms they evaluate (fixed policies,
//! ε-greedy, UCB, LinUCB), synthetic worlds with known ground truth, a
//! statistics layer that checks the estimator's guarantees, and a
//! line-oriented log format.
//!
//! All numeric code is generic over [`Scalar`] (`f32` or `f64`); the
//! un-suffixed aliases at the crate root fix the scalar to `f64`.

// `!(x > 0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algorithms;
pub mod error;
pub mod linalg;
pub mod log_io;
pub mod replay;
pub mod scalar;
pub mod stats;
pub mod types;
pub mod world;

pub use algorithms::{BanditAlgorithm, FirstContextCommit};
pub use error::{Error, PartialReplay, Result};
pub use scalar::Scalar;
pub use types::{arm_range, ArmId, EventItem};

/// Seeded generator used throughout; portable and reproducible.
pub type SimRng = rand_chacha::ChaCha8Rng;

pub type Context = types::Context<f64>;
pub type Event = types::Event<f64>;
pub type History = types::History<f64>;
pub type Algorithm = algorithms::Algorithm<f64>;
pub type FixedPolicy = algorithms::FixedPolicy<f64>;
pub type EpsGreedy = algorithms::EpsGreedy<f64>;
pub type Ucb = algorithms::Ucb<f64>;
pub type LinUcb = algorithms::LinUcb<f64>;
pub type WorldModel = world::WorldModel<f64>;
pub type LoggingPolicy = world::LoggingPolicy<f64>;
pub type EvaluationResult = replay::EvaluationResult<f64>;

pub type Context32 = types::Context<f32>;
pub type Event32 = types::Event<f32>;
pub type Algorithm32 = algorithms::Algorithm<f32>;
pub type WorldModel32 = world::WorldModel<f32>;
pub type EvaluationResult32 = replay::EvaluationResult<f32>;
