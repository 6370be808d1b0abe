//! Job files, command dispatch and report rendering for the `equirr` binary.

pub mod commands;
pub mod job;
pub mod report;

use std::collections::BTreeMap;

pub use commands::{execute, Command, Flags};
pub use job::{parse_job, parse_job_str, Job, JobOptions, RawJob};
pub use report::Report;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Consistency(_) => 3,
        }
    }
}

impl From<equirr_core::Error> for CliError {
    fn from(e: equirr_core::Error) -> Self {
        match e {
            equirr_core::Error::InternalConsistency(_) => CliError::Consistency(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

/// Parses repeated `--schur j=m` values.
pub fn parse_schur_flags(values: &[String]) -> Result<BTreeMap<usize, u64>, CliError> {
    let mut out = BTreeMap::new();
    for v in values {
        let parsed = v.split_once('=').and_then(|(j, m)| {
            let j: usize = j.trim().parse().ok()?;
            let m: u64 = m.trim().parse().ok()?;
            (j >= 1 && m >= 1).then_some((j, m))
        });
        match parsed {
            Some((j, m)) => {
                out.insert(j, m);
            }
            None => {
                return Err(CliError::Usage(format!(
                    "--schur expects j=m with orbit number j >= 1 and index m >= 1, got {v:?}"
                )))
            }
        }
    }
    Ok(out)
}
