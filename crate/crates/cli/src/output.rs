use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use bandit_replay::Result;

/// Buffered CSV sink: the given file, or standard output.
pub fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}
