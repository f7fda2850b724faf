use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use tempfile::NamedTempFile;

use crate::error::CliError;

/// Writes `contents` to `path` via a sibling temp file and a rename, so a
/// reader never sees a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| CliError::Output(path.display().to_string(), e);
    let mut tmp = NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    /// The search budget ran out before the requested tolerance was met.
    BelowThreshold,
}

/// Machine-readable record of one run. Keys serialize in a fixed order and
/// nothing depends on wall-clock time or thread count.
#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub config: Value,
    pub status: Status,
    pub result: Value,
}

impl Report {
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report values are finite JSON");
        s.push('\n');
        s
    }
}
