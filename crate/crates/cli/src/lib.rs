//! Driver for the `twistoid` command: problem loading, check suites and reports.

pub mod commands;
pub mod expr;
pub mod report;

use std::path::Path;

use twistoid::registry::preset_spec;
use twistoid::PresetSpec;

pub use commands::{Ctx, InputError, Side};
pub use report::Report;

/// Exit status for a finished report.
pub fn exit_code(report: &Report) -> i32 {
    if report.passed() {
        0
    } else {
        1
    }
}

/// Reads a JSON problem file, rejecting unknown fields.
pub fn load_config(path: &Path) -> Result<PresetSpec, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text).map_err(|e| InputError(format!("{}: {}", path.display(), e.0)))
}

pub fn parse_config(text: &str) -> Result<PresetSpec, InputError> {
    serde_json::from_str(text).map_err(|e| InputError(format!("invalid config: {e}")))
}

/// Picks the problem from `--preset` or `--config`; exactly one is required.
pub fn resolve_problem(preset: Option<&str>, config: Option<&Path>) -> Result<PresetSpec, InputError> {
    match (preset, config) {
        (Some(_), Some(_)) => Err(InputError("give either --preset or --config, not both".into())),
        (Some(name), None) => Ok(preset_spec(name)?),
        (None, Some(path)) => load_config(path),
        (None, None) => Err(InputError("no problem given; use --preset NAME or --config PATH".into())),
    }
}
