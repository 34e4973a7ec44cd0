//! Scenario runner for the `mixkin` solver: config parsing, built-in
//! scenarios, execution and output files.

pub mod config;
pub mod dump;
pub mod runner;
pub mod scenarios;

use std::path::Path;

pub use config::{ParseError, ScenarioConfig};
pub use runner::{execute, RunError};

/// Scenario text and display name for `source`, which is either a file path
/// or the name of a built-in scenario.
pub fn load(source: &str) -> std::io::Result<(String, String)> {
    let path = Path::new(source);
    if path.is_file() {
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "scenario".into());
        return Ok((std::fs::read_to_string(path)?, name));
    }
    match scenarios::find(source) {
        Some(b) => Ok((b.text.to_string(), b.name.to_string())),
        None => Err(std::io::Error::new(
            std::io::ErrorKind::NotFound,
            format!("'{source}' is neither a readable file nor a built-in scenario"),
        )),
    }
}
