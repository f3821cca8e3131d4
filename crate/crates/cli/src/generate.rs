use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};

use bandit_replay::log_io::{EventWriter, LogHeader, LoggerConfig, LoggerKind, WorldConfig};
use bandit_replay::stats::run_rng;
use bandit_replay::world::generate_log;
use bandit_replay::{Error, Result};

use crate::output::sink;
use crate::GenerateArgs;

pub fn run(args: &GenerateArgs) -> Result<()> {
    let config = WorldConfig::load(&args.world)?;
    let seed = args
        .seed
        .or(config.seed)
        .ok_or_else(|| Error::Config("no seed: pass --seed or set `seed` in the world file".into()))?;
    let world = config.world::<f64>()?;
    let logger_kind = match config.logger {
        LoggerConfig::Uniform => LoggerKind::Uniform,
        LoggerConfig::Explicit { .. } => LoggerKind::Explicit,
    };
    let events = generate_log(&world, config.logger::<f64>(), args.events, run_rng(seed, 0, 0))?;

    let header = LogHeader::new(world.dim(), logger_kind, seed).with_count(args.events as u64);
    let mut writer = EventWriter::new(BufWriter::new(File::create(&args.out)?), header)?;
    let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
    let (mut k_min, mut k_max) = (usize::MAX, 0);
    for event in events {
        writer.write(&event)?;
        *counts.entry(event.chosen.0).or_default() += 1;
        k_min = k_min.min(event.arms.len());
        k_max = k_max.max(event.arms.len());
    }
    let written = writer.finish()?;

    let mut out = sink(None)?;
    writeln!(out, "arm,count,frequency")?;
    for (arm, count) in &counts {
        writeln!(out, "{arm},{count},{}", *count as f64 / written as f64)?;
    }
    out.flush()?;
    if written > 0 {
        eprintln!("wrote {written} events to {} (K from {k_min} to {k_max})", args.out.display());
    } else {
        eprintln!("wrote an empty log to {}", args.out.display());
    }
    Ok(())
}
