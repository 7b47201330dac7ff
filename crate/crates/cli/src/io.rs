use std::path::Path;

use serde::Serialize;
use smtwb::corpus::{read_lines, write_lines};

use crate::error::{invalid, CliResult, Invalid};

pub fn require_file(path: &Path) -> CliResult {
    if path.is_file() {
        Ok(())
    } else {
        Err(invalid(format!("{} does not exist or is not a file", path.display())))
    }
}

pub fn lines(path: &Path) -> CliResult<Vec<String>> {
    require_file(path)?;
    read_lines(path).invalid(format!("reading {}", path.display()))
}

pub fn write(path: &Path, lines: &[impl AsRef<str>]) -> CliResult {
    write_lines(path, lines).map_err(|e| anyhow::Error::new(e).into())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult {
    let text = serde_json::to_string_pretty(value).map_err(anyhow::Error::new)?;
    std::fs::write(path, text + "\n")
        .map_err(|e| anyhow::Error::new(e).context(format!("writing {}", path.display())).into())
}

/// Prints either the human-readable text or the structured record.
#[derive(Debug, Clone, Copy)]
pub struct Output {
    pub json: bool,
}

impl Output {
    pub fn emit<T: Serialize>(&self, text: &str, value: &T) -> CliResult {
        if self.json {
            let s = serde_json::to_string_pretty(value).map_err(anyhow::Error::new)?;
            println!("{s}");
        } else {
            print!("{text}");
        }
        Ok(())
    }
}
