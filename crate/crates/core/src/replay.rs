//! Replay evaluators.
//!
//! An event is retained only when the algorithm, given the history retained
//! so far, picks the logged arm. Retained events update the algorithm and
//! the payoff total; all other events are skipped without touching the
//! algorithm's state or the history. On a uniformly logged i.i.d. stream
//! the retained history has exactly the distribution of direct interaction.

use std::borrow::Borrow;

use rand::{Rng, SeedableRng};

use crate::algorithms::BanditAlgorithm;
use crate::error::{Error, PartialReplay, Result};
use crate::scalar::Scalar;
use crate::types::{ArmId, Event, EventItem, History};
use crate::SimRng;

/// How a randomized algorithm draws while the evaluator searches for the
/// next matching event.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DrawSemantics {
    /// A fresh draw for every candidate event.
    #[default]
    PerEvent,
    /// One draw per trial: every candidate event of a trial is judged with
    /// the same random seed until one is retained.
    PerTrial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReplayOptions {
    pub semantics: DrawSemantics,
    pub keep_history: bool,
    /// Reject events whose propensity is not `1/|arms|`.
    pub require_uniform: bool,
}

impl Default for ReplayOptions {
    fn default() -> Self {
        ReplayOptions { semantics: DrawSemantics::PerEvent, keep_history: false, require_uniform: true }
    }
}

impl ReplayOptions {
    pub fn with_history(mut self) -> Self {
        self.keep_history = true;
        self
    }

    pub fn with_semantics(mut self, semantics: DrawSemantics) -> Self {
        self.semantics = semantics;
        self
    }

    /// Skips the uniform-propensity check. Only meaningful for
    /// demonstrating the bias it guards against.
    pub fn unchecked(mut self) -> Self {
        self.require_uniform = false;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationResult<S> {
    /// `Ĝ / T`
    pub per_trial: S,
    /// `Ĝ`, the payoff accumulated over retained events.
    pub total_payoff: S,
    /// `T`, the number of retained events.
    pub retained: usize,
    /// `L`, the number of events read from the stream.
    pub consumed: usize,
    pub history: Option<History<S>>,
}

/// Incremental evaluator state, one event at a time.
#[derive(Debug, Clone)]
pub struct Replayer<S, A> {
    algorithm: A,
    options: ReplayOptions,
    total: S,
    retained: usize,
    consumed: usize,
    history: Option<History<S>>,
    trial_seed: Option<u64>,
}

impl<S: Scalar, A: BanditAlgorithm<S>> Replayer<S, A> {
    pub fn new(algorithm: A, options: ReplayOptions) -> Self {
        Replayer {
            algorithm,
            options,
            total: S::zero(),
            retained: 0,
            consumed: 0,
            history: options.keep_history.then(History::new),
            trial_seed: None,
        }
    }

    pub fn algorithm(&self) -> &A {
        &self.algorithm
    }

    pub fn retained(&self) -> usize {
        self.retained
    }

    pub fn consumed(&self) -> usize {
        self.consumed
    }

    pub fn total_payoff(&self) -> S {
        self.total
    }

    pub fn history(&self) -> Option<&History<S>> {
        self.history.as_ref()
    }

    /// Asks the algorithm for its arm on `event` and processes the event.
    /// Returns whether it was retained.
    pub fn offer<R: Rng + ?Sized>(&mut self, event: &Event<S>, rng: &mut R) -> Result<bool> {
        if self.options.require_uniform && !event.is_uniform() {
            return Err(Error::NonUniformPropensity {
                index: self.consumed,
                propensity: event.propensity.as_f64(),
                arms: event.arms.len(),
            });
        }
        let choice = match self.options.semantics {
            DrawSemantics::PerEvent => self.algorithm.select_arm(&event.context, &event.arms, rng)?,
            DrawSemantics::PerTrial => {
                let seed = *self.trial_seed.get_or_insert_with(|| rng.next_u64());
                let mut trial_rng = SimRng::seed_from_u64(seed);
                self.algorithm.select_arm(&event.context, &event.arms, &mut trial_rng)?
            }
        };
        self.step(event, choice)
    }

    /// Processes `event` given the arm the algorithm chose for it.
    pub fn step(&mut self, event: &Event<S>, choice: ArmId) -> Result<bool> {
        self.consumed += 1;
        if choice != event.chosen {
            return Ok(false);
        }
        self.algorithm.update(event)?;
        self.total += event.payoff;
        self.retained += 1;
        self.trial_seed = None;
        if let Some(h) = self.history.as_mut() {
            h.push(event.clone());
        }
        Ok(true)
    }

    fn partial(&self) -> PartialReplay {
        PartialReplay {
            total_payoff: self.total.as_f64(),
            retained: self.retained,
            consumed: self.consumed,
        }
    }

    /// Final result, or `None` when nothing was retained.
    pub fn result(&self) -> Option<EvaluationResult<S>> {
        (self.retained > 0).then(|| EvaluationResult {
            per_trial: self.total / S::of_usize(self.retained),
            total_payoff: self.total,
            retained: self.retained,
            consumed: self.consumed,
            history: self.history.clone(),
        })
    }

    pub fn into_parts(self) -> (A, Option<EvaluationResult<S>>) {
        let result = self.result();
        (self.algorithm, result)
    }
}

/// Reads events until exactly `target` have been retained.
pub fn evaluate_infinite<S, A, I, R>(
    algorithm: A,
    stream: I,
    target: usize,
    rng: &mut R,
    options: ReplayOptions,
) -> Result<EvaluationResult<S>>
where
    S: Scalar,
    A: BanditAlgorithm<S>,
    I: IntoIterator,
    I::Item: EventItem<S>,
    R: Rng + ?Sized,
{
    if target == 0 {
        return Err(Error::param("target", "need at least one valid event"));
    }
    let mut replayer = Replayer::new(algorithm, options);
    for item in stream {
        let event = item.into_event()?;
        replayer.offer(event.borrow(), rng)?;
        if replayer.retained == target {
            return Ok(replayer.result().expect("target >= 1 events retained"));
        }
    }
    Err(Error::StreamExhausted { target, partial: replayer.partial() })
}

/// One pass over a finite stream; `T` is however many events matched.
pub fn evaluate_finite<S, A, I, R>(
    algorithm: A,
    stream: I,
    rng: &mut R,
    options: ReplayOptions,
) -> Result<EvaluationResult<S>>
where
    S: Scalar,
    A: BanditAlgorithm<S>,
    I: IntoIterator,
    I::Item: EventItem<S>,
    R: Rng + ?Sized,
{
    let mut replayer = Replayer::new(algorithm, options);
    for item in stream {
        let event = item.into_event()?;
        replayer.offer(event.borrow(), rng)?;
    }
    replayer.result().ok_or(Error::NoValidEvents)
}

/// Thins a stream with arbitrary propensities so the survivors look like a
/// uniform log: an event logged with propensity `p` survives with
/// probability `p_min / p`. Survivors carry propensity `1/|arms|`.
#[derive(Debug)]
pub struct RejectionThinning<'r, S, I, R: ?Sized> {
    inner: I,
    p_min: S,
    rng: &'r mut R,
    index: usize,
    accepted: usize,
}

impl<'r, S: Scalar, I, R: Rng + ?Sized> RejectionThinning<'r, S, I, R> {
    pub fn new(inner: I, p_min: S, rng: &'r mut R) -> Result<Self> {
        if !(p_min > S::zero() && p_min <= S::one()) {
            return Err(Error::param("p_min", format!("{p_min} outside (0, 1]")));
        }
        Ok(RejectionThinning { inner, p_min, rng, index: 0, accepted: 0 })
    }

    pub fn accepted(&self) -> usize {
        self.accepted
    }

    pub fn seen(&self) -> usize {
        self.index
    }

    fn thin(&mut self, mut event: Event<S>) -> Result<Option<Event<S>>> {
        let index = self.index;
        self.index += 1;
        let p = event.propensity;
        let slack = S::one() + S::epsilon() * S::of(4.0);
        if !(p > S::zero()) || p * slack < self.p_min {
            return Err(Error::PropensityBound {
                index,
                propensity: p.as_f64(),
                p_min: self.p_min.as_f64(),
            });
        }
        let accept = self.p_min / p;
        if accept < S::one() && self.rng.gen::<f64>() >= accept.as_f64() {
            return Ok(None);
        }
        self.accepted += 1;
        event.propensity = S::one() / S::of_usize(event.arms.len());
        Ok(Some(event))
    }
}

impl<S, I, R> Iterator for RejectionThinning<'_, S, I, R>
where
    S: Scalar,
    I: Iterator,
    I::Item: EventItem<S>,
    R: Rng + ?Sized,
{
    type Item = Result<Event<S>>;

    fn next(&mut self) -> Option<Result<Event<S>>> {
        loop {
            let event = match self.inner.next()?.into_event() {
                Ok(e) => e.borrow().clone(),
                Err(e) => return Some(Err(e)),
            };
            match self.thin(event) {
                Ok(Some(e)) => return Some(Ok(e)),
                Ok(None) => continue,
                Err(e) => return Some(Err(e)),
            }
        }
    }
}

/// Rejection-sampling evaluator for logs with arbitrary known propensities,
/// all of them at least `p_min`. `consumed` counts events of the original
/// stream.
pub fn evaluate_rejection<S, A, I, R>(
    algorithm: A,
    stream: I,
    p_min: S,
    rng: &mut R,
    options: ReplayOptions,
) -> Result<EvaluationResult<S>>
where
    S: Scalar,
    A: BanditAlgorithm<S>,
    I: IntoIterator,
    I::Item: EventItem<S>,
    R: Rng + ?Sized,
{
    let mut replayer = Replayer::new(algorithm, options);
    // Thinning coins and algorithm draws come from separate generators so
    // both stay reproducible from `rng`.
    let mut thin_rng = SimRng::seed_from_u64(rng.next_u64());
    let mut thinned = RejectionThinning::new(stream.into_iter(), p_min, &mut thin_rng)?;
    for event in thinned.by_ref() {
        replayer.offer(&event?, rng)?;
    }
    let seen = thinned.seen();
    let mut result = replayer.result().ok_or(Error::NoValidEvents)?;
    result.consumed = seen;
    Ok(result)
}
