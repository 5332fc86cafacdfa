//! The JSON state file: `{"amps": [[re, im] × 8], "label": "..."}`.

use std::path::Path;

use serde::Deserialize;

use ghz_distill::{State3Q, C64};

use crate::CliError;

/// Allowed deviation of the stored norm from 1 before a warning is printed.
pub const NORM_WARN_TOL: f64 = 1e-6;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    amps: Vec<[f64; 2]>,
    #[serde(default)]
    label: Option<String>,
}

#[derive(Clone, Debug)]
pub struct StateFile {
    pub state: State3Q,
    pub label: String,
    /// Norm of the amplitudes as written in the file.
    pub stored_norm: f64,
}

impl StateFile {
    pub fn renormalized(&self) -> bool {
        (self.stored_norm - 1.0).abs() > NORM_WARN_TOL
    }
}

/// Parses a state file; `default_label` is used when the file has no label.
pub fn parse(text: &str, default_label: &str) -> Result<StateFile, CliError> {
    let raw: Raw = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("state file: {e}")))?;
    if raw.amps.len() != 8 {
        return Err(CliError::Parse(format!("expected 8 amplitudes, found {}", raw.amps.len())));
    }
    let amps: [C64; 8] = std::array::from_fn(|i| C64::new(raw.amps[i][0], raw.amps[i][1]));
    let stored_norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let state = State3Q::new(amps).map_err(|e| CliError::Parse(format!("state file: {e}")))?;
    Ok(StateFile {
        state,
        label: raw.label.unwrap_or_else(|| default_label.to_string()),
        stored_norm,
    })
}

pub fn read(path: &Path) -> Result<StateFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    parse(&text, &path.display().to_string())
}
