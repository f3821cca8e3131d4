//! Event-log and world-config formats.
//!
//! An event log is UTF-8 text, one record per line, every line terminated
//! by `\n`. The first line is the header:
//!
//! ```text
//! #bandit-log v1 dim=<d> logger=<uniform|explicit> seed=<u64> count=<n|->
//! ```
//!
//! Each following line is one event, six tab-separated fields:
//!
//! ```text
//! <t>\t<x_1,...,x_d>\t<arm,...>\t<chosen>\t<propensity>\t<payoff>
//! ```
//!
//! `t` counts from 0. The context field is empty when `d = 0`. Reals are
//! written in shortest round-trip form, so a write/read cycle reproduces
//! every value bit for bit.

mod world_config;

use std::fmt::{self, Write as _};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::marker::PhantomData;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::types::{ArmId, Context, Event, EventItem};

pub use world_config::{
    ArmsConfig, ContextsConfig, LoggerConfig, PayoffConfig, WindowConfig, WorldConfig,
};

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "#bandit-log";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoggerKind {
    Uniform,
    Explicit,
}

impl fmt::Display for LoggerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LoggerKind::Uniform => "uniform",
            LoggerKind::Explicit => "explicit",
        })
    }
}

impl FromStr for LoggerKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "uniform" => Ok(LoggerKind::Uniform),
            "explicit" => Ok(LoggerKind::Explicit),
            other => Err(format!("unknown logger kind `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LogHeader {
    pub version: u32,
    pub dim: usize,
    pub logger: LoggerKind,
    pub seed: u64,
    /// Number of events, when known up front.
    pub count: Option<u64>,
}

impl LogHeader {
    pub fn new(dim: usize, logger: LoggerKind, seed: u64) -> Self {
        LogHeader { version: FORMAT_VERSION, dim, logger, seed, count: None }
    }

    pub fn with_count(mut self, count: u64) -> Self {
        self.count = Some(count);
        self
    }

    fn parse(line: &str) -> std::result::Result<Self, String> {
        let mut tokens = line.split_ascii_whitespace();
        if tokens.next() != Some(MAGIC) {
            return Err(format!("missing `{MAGIC}` header"));
        }
        let version = tokens
            .next()
            .and_then(|v| v.strip_prefix('v'))
            .and_then(|v| v.parse::<u32>().ok())
            .ok_or("missing format version")?;
        let (mut dim, mut logger, mut seed, mut count) = (None, None, None, None);
        for token in tokens {
            let (key, value) = token.split_once('=').ok_or_else(|| format!("bad header field `{token}`"))?;
            let bad = |_| format!("bad value for `{key}`: `{value}`");
            match key {
                "dim" => dim = Some(value.parse::<usize>().map_err(bad)?),
                "logger" => logger = Some(value.parse::<LoggerKind>()?),
                "seed" => seed = Some(value.parse::<u64>().map_err(bad)?),
                "count" if value == "-" => count = Some(None),
                "count" => count = Some(Some(value.parse::<u64>().map_err(bad)?)),
                _ => return Err(format!("unknown header field `{key}`")),
            }
        }
        Ok(LogHeader {
            version,
            dim: dim.ok_or("header lacks `dim`")?,
            logger: logger.ok_or("header lacks `logger`")?,
            seed: seed.ok_or("header lacks `seed`")?,
            count: count.unwrap_or(None),
        })
    }
}

impl fmt::Display for LogHeader {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{MAGIC} v{} dim={} logger={} seed={} count=", self.version, self.dim, self.logger, self.seed)?;
        match self.count {
            Some(n) => write!(f, "{n}"),
            None => f.write_str("-"),
        }
    }
}

/// Streaming event writer.
#[derive(Debug)]
pub struct EventWriter<W: Write> {
    out: W,
    header: LogHeader,
    written: u64,
    line: String,
}

impl<W: Write> EventWriter<W> {
    pub fn new(mut out: W, header: LogHeader) -> Result<Self> {
        writeln!(out, "{header}")?;
        Ok(EventWriter { out, header, written: 0, line: String::new() })
    }

    pub fn write<S: Scalar>(&mut self, event: &Event<S>) -> Result<()> {
        event.validate()?;
        if event.context.dim() != self.header.dim {
            return Err(Error::DimensionMismatch { expected: self.header.dim, actual: event.context.dim() });
        }
        let line = &mut self.line;
        line.clear();
        write!(line, "{}\t", self.written).unwrap();
        join(line, event.context.features());
        line.push('\t');
        join(line, &event.arms);
        writeln!(line, "\t{}\t{}\t{}", event.chosen, event.propensity, event.payoff).unwrap();
        self.out.write_all(line.as_bytes())?;
        self.written += 1;
        Ok(())
    }

    pub fn written(&self) -> u64 {
        self.written
    }

    /// Flushes and checks the header's announced count, if any.
    pub fn finish(mut self) -> Result<u64> {
        self.out.flush()?;
        if let Some(n) = self.header.count {
            if n != self.written {
                return Err(Error::InvalidEvent(format!(
                    "header announces {n} events but {} were written",
                    self.written
                )));
            }
        }
        Ok(self.written)
    }
}

fn join<T: fmt::Display>(line: &mut String, items: &[T]) {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            line.push(',');
        }
        write!(line, "{item}").unwrap();
    }
}

/// Writes `header` then every event of `events` to `path`.
pub fn write_events<S, I>(path: impl AsRef<Path>, header: LogHeader, events: I) -> Result<u64>
where
    S: Scalar,
    I: IntoIterator,
    I::Item: EventItem<S>,
{
    let file = File::create(path.as_ref())?;
    let mut writer = EventWriter::new(BufWriter::new(file), header)?;
    for item in events {
        let event = item.into_event()?;
        writer.write(std::borrow::Borrow::borrow(&event))?;
    }
    writer.finish()
}

/// Counts gathered while reading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReadSummary {
    pub events: u64,
    /// Events whose propensity is not `1/|arms|`.
    pub non_uniform: u64,
}

impl ReadSummary {
    pub fn is_uniform(&self) -> bool {
        self.non_uniform == 0
    }
}

/// Lazy single-pass event reader; memory use does not grow with the log.
///
/// Stops after the first error.
#[derive(Debug)]
pub struct EventReader<S, R> {
    input: R,
    header: LogHeader,
    path: PathBuf,
    line_no: usize,
    buf: String,
    summary: ReadSummary,
    done: bool,
    _scalar: PhantomData<S>,
}

impl<S: Scalar, R: BufRead> EventReader<S, R> {
    /// Reads and checks the header line. `origin` names the source in errors.
    pub fn new(mut input: R, origin: impl Into<PathBuf>) -> Result<Self> {
        let path = origin.into();
        let mut buf = String::new();
        input.read_line(&mut buf)?;
        let malformed = |reason: String| Error::Malformed { path: path.clone(), line: 1, reason };
        let line = buf.strip_suffix('\n').ok_or_else(|| malformed("missing or truncated header".into()))?;
        let header = LogHeader::parse(line).map_err(malformed)?;
        if header.version != FORMAT_VERSION {
            return Err(Error::Version { found: header.version, expected: FORMAT_VERSION });
        }
        Ok(EventReader {
            input,
            header,
            path,
            line_no: 1,
            buf,
            summary: ReadSummary::default(),
            done: false,
            _scalar: PhantomData,
        })
    }

    pub fn header(&self) -> &LogHeader {
        &self.header
    }

    pub fn summary(&self) -> ReadSummary {
        self.summary
    }

    fn malformed(&self, reason: impl Into<String>) -> Error {
        Error::Malformed { path: self.path.clone(), line: self.line_no, reason: reason.into() }
    }

    fn parse_line(&self, line: &str) -> Result<Event<S>> {
        let mut fields = line.split('\t');
        let mut field = |name: &str| fields.next().ok_or_else(|| self.malformed(format!("missing field `{name}`")));
        let (t, ctx, arms, chosen, propensity, payoff) = (
            field("t")?,
            field("context")?,
            field("arms")?,
            field("chosen")?,
            field("propensity")?,
            field("payoff")?,
        );
        if fields.next().is_some() {
            return Err(self.malformed("too many fields"));
        }
        let expected_t = self.summary.events;
        if t.parse::<u64>().ok() != Some(expected_t) {
            return Err(self.malformed(format!("expected trial index {expected_t}, found `{t}`")));
        }
        let real = |s: &str, what: &str| {
            s.parse::<S>().map_err(|_| self.malformed(format!("bad {what} `{s}`")))
        };
        let features = if ctx.is_empty() {
            Vec::new()
        } else {
            ctx.split(',').map(|v| real(v, "context value")).collect::<Result<Vec<S>>>()?
        };
        if features.len() != self.header.dim {
            return Err(self.malformed(format!(
                "context has {} values, header says dim={}",
                features.len(),
                self.header.dim
            )));
        }
        let arm = |s: &str| s.parse::<ArmId>().map_err(|_| self.malformed(format!("bad arm id `{s}`")));
        let arms = if arms.is_empty() {
            Vec::new()
        } else {
            arms.split(',').map(arm).collect::<Result<Vec<_>>>()?
        };
        let event = Event {
            context: Context::new(features),
            arms,
            chosen: arm(chosen)?,
            propensity: real(propensity, "propensity")?,
            payoff: real(payoff, "payoff")?,
        };
        event.validate().map_err(|e| self.malformed(e.to_string()))?;
        Ok(event)
    }

    fn read_next(&mut self) -> Option<Result<Event<S>>> {
        self.buf.clear();
        match self.input.read_line(&mut self.buf) {
            Ok(0) => {
                if let Some(n) = self.header.count {
                    if n != self.summary.events {
                        self.line_no += 1;
                        return Some(Err(self.malformed(format!(
                            "header announces {n} events, log ends after {}",
                            self.summary.events
                        ))));
                    }
                }
                return None;
            }
            Ok(_) => {}
            Err(e) => return Some(Err(e.into())),
        }
        self.line_no += 1;
        let Some(line) = self.buf.strip_suffix('\n') else {
            return Some(Err(self.malformed("truncated line (no terminating newline)")));
        };
        let parsed = self.parse_line(line);
        if let Ok(e) = &parsed {
            self.summary.events += 1;
            if !e.is_uniform() {
                self.summary.non_uniform += 1;
            }
        }
        Some(parsed)
    }
}

impl<S: Scalar, R: BufRead> Iterator for EventReader<S, R> {
    type Item = Result<Event<S>>;

    fn next(&mut self) -> Option<Result<Event<S>>> {
        if self.done {
            return None;
        }
        let item = self.read_next();
        if !matches!(item, Some(Ok(_))) {
            self.done = true;
        }
        item
    }
}

/// Opens a log for streaming.
pub fn read_events<S: Scalar>(path: impl AsRef<Path>) -> Result<EventReader<S, BufReader<File>>> {
    let path = path.as_ref();
    let file = File::open(path)?;
    EventReader::new(BufReader::new(file), path)
}
