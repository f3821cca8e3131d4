//! Domain types: contexts, arms, logged events and histories.

use std::borrow::Borrow;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::{uniform_tolerance, Scalar};

/// Arm identifier. Ids are 0-based and stable across a log.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ArmId(pub u32);

impl ArmId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<u32> for ArmId {
    fn from(id: u32) -> Self {
        ArmId(id)
    }
}

impl fmt::Display for ArmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for ArmId {
    type Err = std::num::ParseIntError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        s.parse().map(ArmId)
    }
}

/// `0..k` as arm ids.
pub fn arm_range(k: usize) -> Vec<ArmId> {
    (0..k as u32).map(ArmId).collect()
}

/// Dense context feature vector. The empty vector is the context-free case.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Context<S>(pub Vec<S>);

impl<S: Scalar> Context<S> {
    pub fn new(features: Vec<S>) -> Self {
        Context(features)
    }

    pub fn empty() -> Self {
        Context(Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn features(&self) -> &[S] {
        &self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    pub fn dot(&self, weights: &[S]) -> S {
        self.0.iter().zip(weights).map(|(&x, &w)| x * w).sum()
    }
}

impl<S: Scalar> From<Vec<S>> for Context<S> {
    fn from(features: Vec<S>) -> Self {
        Context(features)
    }
}

/// One logged interaction.
#[derive(Debug, Clone, PartialEq)]
pub struct Event<S> {
    pub context: Context<S>,
    /// Candidate pool at this trial.
    pub arms: Vec<ArmId>,
    pub chosen: ArmId,
    /// Probability with which the logger picked `chosen`.
    pub propensity: S,
    pub payoff: S,
}

impl<S: Scalar> Event<S> {
    /// Builds an event logged by a uniform logger (`propensity = 1/|arms|`).
    pub fn uniform(context: Context<S>, arms: Vec<ArmId>, chosen: ArmId, payoff: S) -> Self {
        let propensity = S::one() / S::of_usize(arms.len().max(1));
        Event { context, arms, chosen, propensity, payoff }
    }

    pub fn validate(&self) -> Result<()> {
        if self.arms.is_empty() {
            return Err(Error::InvalidEvent("empty candidate set".into()));
        }
        if !self.arms.contains(&self.chosen) {
            return Err(Error::InvalidEvent(format!(
                "chosen arm {} not among candidates",
                self.chosen
            )));
        }
        for (i, a) in self.arms.iter().enumerate() {
            if self.arms[..i].contains(a) {
                return Err(Error::InvalidEvent(format!("duplicate candidate arm {a}")));
            }
        }
        if !(self.propensity > S::zero() && self.propensity <= S::one()) {
            return Err(Error::InvalidEvent(format!(
                "propensity {} outside (0, 1]",
                self.propensity
            )));
        }
        if !(self.payoff >= S::zero() && self.payoff <= S::one()) {
            return Err(Error::InvalidEvent(format!("payoff {} outside [0, 1]", self.payoff)));
        }
        if !self.context.is_finite() {
            return Err(Error::InvalidEvent("non-finite context feature".into()));
        }
        Ok(())
    }

    /// True when the propensity equals `1/|arms|` up to rounding.
    pub fn is_uniform(&self) -> bool {
        let expected = S::one() / S::of_usize(self.arms.len().max(1));
        (self.propensity - expected).abs() <= uniform_tolerance::<S>() * expected
    }
}

/// Retained events, in order. Append-only.
#[derive(Debug, Clone, PartialEq)]
pub struct History<S> {
    events: Vec<Event<S>>,
}

impl<S> Default for History<S> {
    fn default() -> Self {
        History { events: Vec::new() }
    }
}

impl<S: Scalar> History<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, event: Event<S>) {
        self.events.push(event);
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn events(&self) -> &[Event<S>] {
        &self.events
    }

    pub fn first(&self) -> Option<&Event<S>> {
        self.events.first()
    }
}

/// Anything an evaluator can pull from an event stream: owned events,
/// borrowed events, or fallible reads from a log.
pub trait EventItem<S: Scalar> {
    type Event: Borrow<Event<S>>;

    fn into_event(self) -> Result<Self::Event>;
}

impl<S: Scalar> EventItem<S> for Event<S> {
    type Event = Event<S>;

    fn into_event(self) -> Result<Event<S>> {
        Ok(self)
    }
}

impl<'a, S: Scalar> EventItem<S> for &'a Event<S> {
    type Event = &'a Event<S>;

    fn into_event(self) -> Result<&'a Event<S>> {
        Ok(self)
    }
}

impl<S: Scalar, T: Borrow<Event<S>>, E: Into<Error>> EventItem<S> for std::result::Result<T, E> {
    type Event = T;

    fn into_event(self) -> Result<T> {
        self.map_err(Into::into)
    }
}
