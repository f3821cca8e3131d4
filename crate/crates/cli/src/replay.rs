use std::io::Write;

use bandit_replay::log_io::read_events;
use bandit_replay::replay::{evaluate_finite, evaluate_infinite, evaluate_rejection, ReplayOptions};
use bandit_replay::stats::run_rng;
use bandit_replay::{Error, Result};

use crate::algo::AlgoSpec;
use crate::output::sink;
use crate::{ReplayArgs, ReplayMode};

pub fn run(args: &ReplayArgs) -> Result<()> {
    let reader = read_events::<f64>(&args.log)?;
    let spec = AlgoSpec::new(args.algo, &args.params, reader.header().dim)?;
    let mut rng = run_rng(args.seed, 0, 1);
    let options = ReplayOptions::default();
    let result = match args.mode {
        ReplayMode::Infinite => {
            let target = args
                .target_t
                .ok_or_else(|| Error::Config("--mode infinite needs --target-t".into()))?;
            evaluate_infinite(spec.build(), reader, target, &mut rng, options)?
        }
        ReplayMode::Finite => evaluate_finite(spec.build(), reader, &mut rng, options)?,
        ReplayMode::Rejection => {
            let p_min = args
                .p_min
                .ok_or_else(|| Error::Config("--mode rejection needs --p-min".into()))?;
            evaluate_rejection(spec.build(), reader, p_min, &mut rng, options)?
        }
    };

    let mut out = sink(args.out.as_deref())?;
    writeln!(out, "algorithm,g_hat,total_payoff,T,L")?;
    writeln!(
        out,
        "{},{},{},{},{}",
        spec.kind.label(),
        result.per_trial,
        result.total_payoff,
        result.retained,
        result.consumed
    )?;
    out.flush()?;
    eprintln!(
        "{}: g_hat = {:.6} from T = {} of L = {} events",
        spec.kind.label(),
        result.per_trial,
        result.retained,
        result.consumed
    );
    Ok(())
}
