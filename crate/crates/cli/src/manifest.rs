use std::collections::BTreeMap;

use chrono::{DateTime, SecondsFormat, Utc};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Provenance record written next to every output file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub basis_size: usize,
    pub tool_version: String,
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(command: &str, parameters: BTreeMap<String, String>, basis_size: usize) -> Result<Self, CliError> {
        Ok(RunManifest {
            command: command.to_string(),
            parameters,
            basis_size,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: timestamp()?,
        })
    }
}

/// UTC time, pinned by `SOURCE_DATE_EPOCH` when it is set.
fn timestamp() -> Result<String, CliError> {
    let when = match std::env::var("SOURCE_DATE_EPOCH") {
        Ok(raw) => {
            let secs: i64 = raw
                .trim()
                .parse()
                .map_err(|_| CliError::Config(format!("SOURCE_DATE_EPOCH `{raw}` is not an integer")))?;
            DateTime::<Utc>::from_timestamp(secs, 0)
                .ok_or_else(|| CliError::Config(format!("SOURCE_DATE_EPOCH `{raw}` is out of range")))?
        }
        Err(_) => Utc::now(),
    };
    Ok(when.to_rfc3339_opts(SecondsFormat::Secs, true))
}
