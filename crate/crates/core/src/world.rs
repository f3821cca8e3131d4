//! Synthetic i.i.d. worlds with known expected payoffs, logging policies,
//! direct (online) interaction and ground-truth oracles.

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};

use crate::algorithms::{BanditAlgorithm, FirstContextCommit, FixedPolicy};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::types::{arm_range, ArmId, Context, Event, History};
use crate::SimRng;

/// Monte Carlo sample size for ground truth on non-enumerable worlds.
pub const DEFAULT_MC_SAMPLES: usize = 1_000_000;

/// Distribution over contexts.
#[derive(Debug, Clone, PartialEq)]
pub enum ContextSampler<S> {
    /// The same context every trial (context-free when empty).
    Constant(Context<S>),
    /// Finite support with (unnormalized) weights.
    Finite { support: Vec<Context<S>>, weights: Vec<S> },
    /// Each coordinate independently uniform on `[0, 1)`.
    UnitBox,
}

/// Expected payoff of each (context, arm). Entries are indexed by arm id.
#[derive(Debug, Clone, PartialEq)]
pub enum PayoffModel<S> {
    /// Context-independent means.
    Constant(Vec<S>),
    /// `table[context index][arm]`; needs an enumerable context sampler.
    Table(Vec<Vec<S>>),
    /// `weights[arm] · x`.
    Linear(Vec<Vec<S>>),
}

impl<S: Scalar> PayoffModel<S> {
    fn arm_count(&self) -> usize {
        match self {
            PayoffModel::Constant(m) => m.len(),
            PayoffModel::Table(t) => t.iter().map(Vec::len).min().unwrap_or(0),
            PayoffModel::Linear(w) => w.len(),
        }
    }
}

/// An arm that is a candidate on trials `from..until`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArmWindow {
    pub arm: ArmId,
    pub from: usize,
    pub until: Option<usize>,
}

impl ArmWindow {
    fn active(&self, trial: usize) -> bool {
        trial >= self.from && self.until.is_none_or(|u| trial < u)
    }
}

/// Candidate pool per trial: a fixed `K`, or arms entering and leaving at
/// fixed trial indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArmSchedule {
    Fixed(usize),
    Windows(Vec<ArmWindow>),
}

impl ArmSchedule {
    pub fn arms_at(&self, trial: usize) -> Vec<ArmId> {
        match self {
            ArmSchedule::Fixed(k) => arm_range(*k),
            ArmSchedule::Windows(w) => {
                let mut arms: Vec<ArmId> =
                    w.iter().filter(|w| w.active(trial)).map(|w| w.arm).collect();
                arms.sort_unstable();
                arms.dedup();
                arms
            }
        }
    }

    pub fn is_fixed(&self) -> bool {
        matches!(self, ArmSchedule::Fixed(_))
    }

    fn max_arm(&self) -> Option<ArmId> {
        match self {
            ArmSchedule::Fixed(0) => None,
            ArmSchedule::Fixed(k) => Some(ArmId(*k as u32 - 1)),
            ArmSchedule::Windows(w) => w.iter().map(|w| w.arm).max(),
        }
    }

    /// Trials in `0..horizon` where the candidate set may change, with the
    /// length of each constant stretch.
    pub fn segments(&self, horizon: usize) -> Vec<(usize, usize)> {
        let mut cuts = vec![0];
        if let ArmSchedule::Windows(w) = self {
            for win in w {
                cuts.push(win.from);
                if let Some(u) = win.until {
                    cuts.push(u);
                }
            }
        }
        cuts.retain(|&c| c < horizon);
        cuts.sort_unstable();
        cuts.dedup();
        cuts.iter()
            .enumerate()
            .map(|(i, &start)| (start, cuts.get(i + 1).copied().unwrap_or(horizon) - start))
            .collect()
    }
}

/// How the historical log chose arms.
#[derive(Debug, Clone, PartialEq)]
pub enum LoggingPolicy<S> {
    Uniform,
    /// `probs[arm]`; must sum to 1 over every candidate set.
    Explicit(Vec<S>),
}

impl<S: Scalar> LoggingPolicy<S> {
    pub fn probabilities(&self, arms: &[ArmId]) -> Result<Vec<S>> {
        match self {
            LoggingPolicy::Uniform => {
                if arms.is_empty() {
                    return Err(Error::NoCandidateArms);
                }
                Ok(vec![S::one() / S::of_usize(arms.len()); arms.len()])
            }
            LoggingPolicy::Explicit(p) => {
                let probs = arms
                    .iter()
                    .map(|a| p.get(a.index()).copied().ok_or(Error::UnknownArm { arm: *a }))
                    .collect::<Result<Vec<S>>>()?;
                let sum: S = probs.iter().copied().sum();
                if (sum - S::one()).abs() > S::of(1e-9).max(S::epsilon() * S::of(8.0))
                    || probs.iter().any(|&q| !(q >= S::zero()))
                {
                    return Err(Error::LoggerNotNormalized { sum: sum.as_f64() });
                }
                Ok(probs)
            }
        }
    }

    pub fn is_uniform(&self) -> bool {
        matches!(self, LoggingPolicy::Uniform)
    }
}

/// A sampled context together with its support index, when enumerable.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledContext<S> {
    pub context: Context<S>,
    pub index: Option<usize>,
}

/// One i.i.d. draw: the context, the candidates, and a realized payoff for
/// every candidate (most of which a log never reveals).
#[derive(Debug, Clone, PartialEq)]
pub struct FullTuple<S> {
    pub trial: usize,
    pub context: SampledContext<S>,
    pub arms: Vec<ArmId>,
    pub expected: Vec<S>,
    pub payoffs: Vec<S>,
}

impl<S: Scalar> FullTuple<S> {
    pub fn payoff_of(&self, arm: ArmId) -> Option<S> {
        self.arms.iter().position(|&a| a == arm).map(|i| self.payoffs[i])
    }
}

/// Synthetic environment `D` with Bernoulli payoffs of known expectation.
#[derive(Debug, Clone, PartialEq)]
pub struct WorldModel<S> {
    dim: usize,
    arms: ArmSchedule,
    contexts: ContextSampler<S>,
    payoffs: PayoffModel<S>,
    context_index: Option<WeightedIndex<f64>>,
}

impl<S: Scalar> WorldModel<S> {
    pub fn new(
        dim: usize,
        arms: ArmSchedule,
        contexts: ContextSampler<S>,
        payoffs: PayoffModel<S>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::Config(msg));
        let context_index = match &contexts {
            ContextSampler::Constant(c) => {
                if c.dim() != dim {
                    return bad(format!("constant context has dimension {}, expected {dim}", c.dim()));
                }
                None
            }
            ContextSampler::Finite { support, weights } => {
                if support.is_empty() || support.len() != weights.len() {
                    return bad("finite context support and weights must be non-empty and equal length".into());
                }
                if let Some(c) = support.iter().find(|c| c.dim() != dim || !c.is_finite()) {
                    return bad(format!("support context {:?} does not match dimension {dim}", c.0));
                }
                let w: Vec<f64> = weights.iter().map(|w| w.as_f64()).collect();
                Some(WeightedIndex::new(w).map_err(|e| Error::Config(format!("context weights: {e}")))?)
            }
            ContextSampler::UnitBox => None,
        };
        let world = WorldModel { dim, arms, contexts, payoffs, context_index };
        world.check_payoffs()?;
        Ok(world)
    }

    fn check_payoffs(&self) -> Result<()> {
        let in_unit = |v: S| v >= S::zero() && v <= S::one();
        if let Some(max) = self.arms.max_arm() {
            if max.index() >= self.payoffs.arm_count() {
                return Err(Error::UnknownArm { arm: max });
            }
        }
        if let ArmSchedule::Fixed(0) = self.arms {
            return Err(Error::Config("world needs at least one arm".into()));
        }
        match (&self.payoffs, &self.contexts) {
            (PayoffModel::Constant(m), _) => {
                if !m.iter().all(|&v| in_unit(v)) {
                    return Err(Error::Config("expected payoffs must lie in [0, 1]".into()));
                }
            }
            (PayoffModel::Table(t), ContextSampler::Finite { support, .. }) => {
                if t.len() != support.len() {
                    return Err(Error::Config(format!(
                        "payoff table has {} rows for {} contexts",
                        t.len(),
                        support.len()
                    )));
                }
                if !t.iter().flatten().all(|&v| in_unit(v)) {
                    return Err(Error::Config("expected payoffs must lie in [0, 1]".into()));
                }
            }
            (PayoffModel::Table(t), ContextSampler::Constant(_)) => {
                if t.len() != 1 || !t[0].iter().all(|&v| in_unit(v)) {
                    return Err(Error::Config("payoff table needs one row in [0, 1]".into()));
                }
            }
            (PayoffModel::Table(_), ContextSampler::UnitBox) => {
                return Err(Error::Config("payoff table needs an enumerable context sampler".into()));
            }
            (PayoffModel::Linear(w), sampler) => {
                if let Some(bad) = w.iter().find(|w| w.len() != self.dim) {
                    return Err(Error::DimensionMismatch { expected: self.dim, actual: bad.len() });
                }
                for weights in w {
                    let (lo, hi) = match sampler {
                        ContextSampler::UnitBox => (
                            weights.iter().map(|&x| x.min(S::zero())).sum(),
                            weights.iter().map(|&x| x.max(S::zero())).sum(),
                        ),
                        ContextSampler::Constant(c) => (c.dot(weights), c.dot(weights)),
                        ContextSampler::Finite { support, .. } => support
                            .iter()
                            .map(|c| c.dot(weights))
                            .fold((S::infinity(), S::neg_infinity()), |(lo, hi), v| {
                                (lo.min(v), hi.max(v))
                            }),
                    };
                    if !(in_unit(lo) && in_unit(hi)) {
                        return Err(Error::Config(format!(
                            "linear payoffs range over [{lo}, {hi}], outside [0, 1]"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn schedule(&self) -> &ArmSchedule {
        &self.arms
    }

    pub fn contexts(&self) -> &ContextSampler<S> {
        &self.contexts
    }

    pub fn payoff_model(&self) -> &PayoffModel<S> {
        &self.payoffs
    }

    pub fn arms_at(&self, trial: usize) -> Vec<ArmId> {
        self.arms.arms_at(trial)
    }

    /// Largest candidate-set size over the first `horizon` trials.
    pub fn max_arms(&self, horizon: usize) -> usize {
        self.arms
            .segments(horizon.max(1))
            .iter()
            .map(|&(t, _)| self.arms_at(t).len())
            .max()
            .unwrap_or(0)
    }

    /// True when ground truth can be computed by exact enumeration.
    pub fn is_enumerable(&self) -> bool {
        !matches!(self.contexts, ContextSampler::UnitBox) || self.dim == 0
    }

    /// Support points with their probabilities, for enumerable worlds.
    pub fn context_support(&self) -> Option<Vec<(SampledContext<S>, S)>> {
        match &self.contexts {
            ContextSampler::Constant(c) => {
                Some(vec![(SampledContext { context: c.clone(), index: Some(0) }, S::one())])
            }
            ContextSampler::Finite { support, weights } => {
                let total: S = weights.iter().copied().sum();
                Some(
                    support
                        .iter()
                        .zip(weights)
                        .enumerate()
                        .map(|(i, (c, &w))| {
                            (SampledContext { context: c.clone(), index: Some(i) }, w / total)
                        })
                        .collect(),
                )
            }
            ContextSampler::UnitBox if self.dim == 0 => {
                Some(vec![(SampledContext { context: Context::empty(), index: None }, S::one())])
            }
            ContextSampler::UnitBox => None,
        }
    }

    pub fn sample_context<R: Rng + ?Sized>(&self, rng: &mut R) -> SampledContext<S> {
        match &self.contexts {
            ContextSampler::Constant(c) => SampledContext { context: c.clone(), index: Some(0) },
            ContextSampler::Finite { support, .. } => {
                let i = self.context_index.as_ref().expect("finite sampler has an index").sample(rng);
                SampledContext { context: support[i].clone(), index: Some(i) }
            }
            ContextSampler::UnitBox => SampledContext {
                context: Context::new((0..self.dim).map(|_| S::of(rng.gen::<f64>())).collect()),
                index: None,
            },
        }
    }

    pub fn expected_payoff(&self, context: &SampledContext<S>, arm: ArmId) -> Result<S> {
        let unknown = || Error::UnknownArm { arm };
        match &self.payoffs {
            PayoffModel::Constant(m) => m.get(arm.index()).copied().ok_or_else(unknown),
            PayoffModel::Table(t) => {
                let row = context
                    .index
                    .ok_or_else(|| Error::Config("payoff table lookup without a context index".into()))?;
                t[row].get(arm.index()).copied().ok_or_else(unknown)
            }
            PayoffModel::Linear(w) => {
                let w = w.get(arm.index()).ok_or_else(unknown)?;
                Ok(context.context.dot(w).max(S::zero()).min(S::one()))
            }
        }
    }

    /// Draws `(x_t, r_{t,1..K})`: one Bernoulli payoff per candidate arm.
    pub fn sample_full_tuple<R: Rng + ?Sized>(&self, trial: usize, rng: &mut R) -> Result<FullTuple<S>> {
        let context = self.sample_context(rng);
        let arms = self.arms_at(trial);
        if arms.is_empty() {
            return Err(Error::EmptySchedule { trial });
        }
        let expected =
            arms.iter().map(|&a| self.expected_payoff(&context, a)).collect::<Result<Vec<S>>>()?;
        let payoffs = expected.iter().map(|&p| bernoulli(p, rng)).collect();
        Ok(FullTuple { trial, context, arms, expected, payoffs })
    }

    /// Optimal fixed policy (argmax expected payoff per context).
    pub fn optimal_policy(&self) -> Result<FixedPolicy<S>> {
        let arms = self.arms_at(0);
        if let PayoffModel::Linear(w) = &self.payoffs {
            return Ok(FixedPolicy::LinearArgmax { weights: w.clone() });
        }
        let support = self.context_support().ok_or_else(|| {
            Error::Config("optimal policy needs enumerable contexts or linear payoffs".into())
        })?;
        let mut entries = Vec::with_capacity(support.len());
        for (ctx, _) in &support {
            let best = crate::algorithms::argmax_lowest_id(&arms, |a| self.expected_payoff(ctx, a))?;
            entries.push((ctx.context.clone(), best));
        }
        if let [(_, arm)] = entries[..] {
            return Ok(FixedPolicy::Constant(arm));
        }
        let fallback = entries[0].1;
        Ok(FixedPolicy::Table { entries, fallback })
    }
}

pub(crate) fn bernoulli<S: Scalar, R: Rng + ?Sized>(p: S, rng: &mut R) -> S {
    if rng.gen::<f64>() < p.as_f64() {
        S::one()
    } else {
        S::zero()
    }
}

/// Lazy log generator; yields exactly `len` events.
#[derive(Debug)]
pub struct LogGenerator<'w, S, R> {
    world: &'w WorldModel<S>,
    logger: LoggingPolicy<S>,
    rng: R,
    next: usize,
    len: usize,
}

impl<'w, S: Scalar, R: Rng> LogGenerator<'w, S, R> {
    /// Events paired with the full tuple they were drawn from.
    pub fn with_tuples(self) -> impl Iterator<Item = (Event<S>, FullTuple<S>)> + 'w
    where
        R: 'w,
    {
        let mut this = self;
        std::iter::from_fn(move || this.step())
    }

    fn step(&mut self) -> Option<(Event<S>, FullTuple<S>)> {
        if self.next >= self.len {
            return None;
        }
        let trial = self.next;
        self.next += 1;
        let tuple = self
            .world
            .sample_full_tuple(trial, &mut self.rng)
            .expect("schedule and logger validated when the generator was built");
        let probs = self.logger.probabilities(&tuple.arms).expect("logger validated");
        let pick = match self.logger {
            LoggingPolicy::Uniform => self.rng.gen_range(0..tuple.arms.len()),
            LoggingPolicy::Explicit(_) => sample_index(&probs, &mut self.rng),
        };
        let event = Event {
            context: tuple.context.context.clone(),
            arms: tuple.arms.clone(),
            chosen: tuple.arms[pick],
            propensity: probs[pick],
            payoff: tuple.payoffs[pick],
        };
        Some((event, tuple))
    }
}

impl<S: Scalar, R: Rng> Iterator for LogGenerator<'_, S, R> {
    type Item = Event<S>;

    fn next(&mut self) -> Option<Event<S>> {
        self.step().map(|(e, _)| e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.len - self.next;
        (left, Some(left))
    }
}

impl<S: Scalar, R: Rng> ExactSizeIterator for LogGenerator<'_, S, R> {}

fn sample_index<S: Scalar, R: Rng + ?Sized>(probs: &[S], rng: &mut R) -> usize {
    let u = rng.gen::<f64>();
    let mut acc = 0.0;
    for (i, p) in probs.iter().enumerate() {
        acc += p.as_f64();
        if u < acc {
            return i;
        }
    }
    // rounding left u above the final cumulative sum
    probs.iter().rposition(|p| *p > S::zero()).unwrap_or(probs.len() - 1)
}

/// Streams `len` logged events produced by `logger` interacting with `world`.
pub fn generate_log<S: Scalar, R: Rng>(
    world: &WorldModel<S>,
    logger: LoggingPolicy<S>,
    len: usize,
    rng: R,
) -> Result<LogGenerator<'_, S, R>> {
    for (start, _) in world.arms.segments(len) {
        let arms = world.arms_at(start);
        if arms.is_empty() {
            return Err(Error::EmptySchedule { trial: start });
        }
        logger.probabilities(&arms)?;
    }
    Ok(LogGenerator { world, logger, rng, next: 0, len })
}

/// Exact value of a history-independent policy, or a Monte Carlo estimate
/// with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundTruth<S> {
    pub value: S,
    pub std_error: Option<S>,
}

/// `g_π = E_D[r_{π(x)}]` on a world with a fixed arm set. Enumerable worlds
/// are summed exactly; others use [`DEFAULT_MC_SAMPLES`] seeded draws.
pub fn true_per_trial_payoff<S: Scalar, P: BanditAlgorithm<S>>(
    world: &WorldModel<S>,
    policy: &P,
) -> Result<GroundTruth<S>> {
    if !world.arms.is_fixed() {
        return Err(Error::Config(
            "time-varying arm schedule: use true_mean_payoff_over with a horizon".into(),
        ));
    }
    truth_at(world, policy, 0, DEFAULT_MC_SAMPLES, &mut SimRng::seed_from_u64(0))
}

/// Average of `g_π` over trials `0..horizon` of a scheduled world.
pub fn true_mean_payoff_over<S: Scalar, P: BanditAlgorithm<S>>(
    world: &WorldModel<S>,
    policy: &P,
    horizon: usize,
) -> Result<GroundTruth<S>> {
    if horizon == 0 {
        return Err(Error::param("horizon", "must be positive"));
    }
    let mut rng = SimRng::seed_from_u64(0);
    let mut value = S::zero();
    let mut var = S::zero();
    let mut mc = false;
    for (start, len) in world.arms.segments(horizon) {
        let w = S::of_usize(len) / S::of_usize(horizon);
        let g = truth_at(world, policy, start, DEFAULT_MC_SAMPLES, &mut rng)?;
        value += w * g.value;
        if let Some(se) = g.std_error {
            mc = true;
            var += w * w * se * se;
        }
    }
    Ok(GroundTruth { value, std_error: mc.then(|| var.sqrt()) })
}

/// Monte Carlo ground truth with an explicit sample size and generator,
/// regardless of enumerability.
pub fn monte_carlo_payoff<S: Scalar, P: BanditAlgorithm<S>, R: Rng + ?Sized>(
    world: &WorldModel<S>,
    policy: &P,
    trial: usize,
    samples: usize,
    rng: &mut R,
) -> Result<GroundTruth<S>> {
    if !policy.is_fixed() {
        return Err(Error::NotFixedPolicy);
    }
    if samples < 2 {
        return Err(Error::param("samples", "need at least 2 Monte Carlo samples"));
    }
    let arms = world.arms_at(trial);
    let (mut sum, mut sum_sq) = (0.0f64, 0.0f64);
    for _ in 0..samples {
        let ctx = world.sample_context(rng);
        let probs = policy.arm_distribution(&ctx.context, &arms)?;
        let mut v = 0.0;
        for (&a, p) in arms.iter().zip(probs) {
            if p > S::zero() {
                v += p.as_f64() * world.expected_payoff(&ctx, a)?.as_f64();
            }
        }
        sum += v;
        sum_sq += v * v;
    }
    let n = samples as f64;
    let mean = sum / n;
    let var = ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
    Ok(GroundTruth { value: S::of(mean), std_error: Some(S::of((var / n).sqrt())) })
}

fn truth_at<S: Scalar, P: BanditAlgorithm<S>>(
    world: &WorldModel<S>,
    policy: &P,
    trial: usize,
    samples: usize,
    rng: &mut SimRng,
) -> Result<GroundTruth<S>> {
    if !policy.is_fixed() {
        return Err(Error::NotFixedPolicy);
    }
    let Some(support) = world.context_support() else {
        return monte_carlo_payoff(world, policy, trial, samples, rng);
    };
    let arms = world.arms_at(trial);
    let mut value = S::zero();
    for (ctx, px) in support {
        let probs = policy.arm_distribution(&ctx.context, &arms)?;
        for (&a, p) in arms.iter().zip(probs) {
            if p > S::zero() {
                value += px * p * world.expected_payoff(&ctx, a)?;
            }
        }
    }
    Ok(GroundTruth { value, std_error: None })
}

/// `R_A(T) = max_{π ∈ Π} T·g_π − G_A`.
pub fn regret<S: Scalar, P: BanditAlgorithm<S>>(
    world: &WorldModel<S>,
    total_payoff: S,
    trials: usize,
    reference: &[P],
) -> Result<S> {
    if reference.is_empty() {
        return Err(Error::param("reference", "policy set must be non-empty"));
    }
    let mut best = S::neg_infinity();
    for policy in reference {
        best = best.max(true_per_trial_payoff(world, policy)?.value);
    }
    Ok(S::of_usize(trials) * best - total_payoff)
}

/// Outcome of running an algorithm directly against the world.
#[derive(Debug, Clone, PartialEq)]
pub struct OnlineRun<S> {
    pub total_payoff: S,
    pub trials: usize,
    pub history: Option<History<S>>,
}

impl<S: Scalar> OnlineRun<S> {
    pub fn per_trial(&self) -> S {
        self.total_payoff / S::of_usize(self.trials.max(1))
    }
}

/// Runs `algorithm` live for `trials` trials: it sees each context, picks an
/// arm, observes that arm's payoff and learns from it.
pub fn simulate_online<S, A, R>(
    world: &WorldModel<S>,
    algorithm: &mut A,
    trials: usize,
    rng: &mut R,
    keep_history: bool,
) -> Result<OnlineRun<S>>
where
    S: Scalar,
    A: BanditAlgorithm<S>,
    R: Rng + ?Sized,
{
    let mut total = S::zero();
    let mut history = keep_history.then(History::new);
    for t in 0..trials {
        let tuple = world.sample_full_tuple(t, rng)?;
        let chosen = algorithm.select_arm(&tuple.context.context, &tuple.arms, rng)?;
        let payoff = tuple.payoff_of(chosen).ok_or(Error::UnknownArm { arm: chosen })?;
        let event = Event {
            context: tuple.context.context,
            arms: tuple.arms,
            chosen,
            propensity: S::one(),
            payoff,
        };
        total += payoff;
        algorithm.update(&event)?;
        if let Some(h) = history.as_mut() {
            h.push(event);
        }
    }
    Ok(OnlineRun { total_payoff: total, trials, history })
}

/// Two arms, a binary context from a fair coin, arm 0 always pays 1 and
/// arm 1 always pays 0; paired with the algorithm that commits forever on
/// its first context. Its expected per-trial payoff is 0.5 but every single
/// run earns either all or nothing.
pub fn example_one_fixture<S: Scalar>() -> (WorldModel<S>, FirstContextCommit) {
    let world = WorldModel::new(
        1,
        ArmSchedule::Fixed(2),
        ContextSampler::Finite {
            support: vec![Context::new(vec![S::zero()]), Context::new(vec![S::one()])],
            weights: vec![S::one(), S::one()],
        },
        PayoffModel::Constant(vec![S::one(), S::zero()]),
    )
    .expect("fixture world is valid");
    (world, FirstContextCommit::new())
}
