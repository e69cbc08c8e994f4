//! Golden fixtures: the first verified run of a report is written to disk,
//! later runs are diffed against it.

use std::path::{Path, PathBuf};

use super::{diff_reports, Discrepancy, ExperimentReport};
use crate::error::{Error, Result};

/// Overrides the fixture directory.
pub const FIXTURE_ENV: &str = "RPLUS_FIXTURES";

#[derive(Clone, Debug, PartialEq)]
pub enum GoldenOutcome {
    Frozen(PathBuf),
    Matched(PathBuf),
    Drifted(PathBuf, Vec<Discrepancy>),
}

impl GoldenOutcome {
    pub fn is_consistent(&self) -> bool {
        !matches!(self, GoldenOutcome::Drifted(..))
    }
}

/// `$RPLUS_FIXTURES` if set, else `default`.
pub fn fixture_dir(default: &Path) -> PathBuf {
    std::env::var_os(FIXTURE_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| default.to_path_buf())
}

fn io(path: &Path, e: std::io::Error) -> Error {
    Error::Config {
        field: "fixtures".into(),
        msg: format!("{}: {e}", path.display()),
    }
}

/// Compares with `<dir>/<name>.json`, freezing the report there if absent.
/// Only passing reports are frozen.
pub fn check_golden(report: &ExperimentReport, dir: &Path, name: &str) -> Result<GoldenOutcome> {
    let path = dir.join(format!("{name}.json"));
    if !path.exists() {
        if !report.passed() {
            return Err(Error::VerificationFailure(format!(
                "refusing to freeze failing report into {}",
                path.display()
            )));
        }
        std::fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
        std::fs::write(&path, report.to_json()).map_err(|e| io(&path, e))?;
        return Ok(GoldenOutcome::Frozen(path));
    }
    let text = std::fs::read_to_string(&path).map_err(|e| io(&path, e))?;
    let golden = ExperimentReport::from_json(&text)?;
    let diff = diff_reports(&golden, report)?;
    Ok(if diff.is_empty() {
        GoldenOutcome::Matched(path)
    } else {
        GoldenOutcome::Drifted(path, diff)
    })
}
