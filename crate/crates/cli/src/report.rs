//! Run reports and JSON output.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::failure::Failure;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    /// `pass`, `fail` or `skipped(<reason>)`.
    pub verdict: String,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool) -> Self {
        Check {
            name: name.into(),
            verdict: if ok { "pass" } else { "fail" }.into(),
        }
    }

    pub fn skipped(name: impl Into<String>, reason: &str) -> Self {
        Check {
            name: name.into(),
            verdict: format!("skipped({reason})"),
        }
    }

    pub fn failed(&self) -> bool {
        self.verdict == "fail"
    }
}

#[derive(Debug, Default, Serialize)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 of every input file, keyed by path as given.
    pub inputs: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub counterexamples: Vec<Value>,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u128>>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.into(),
            ..Default::default()
        }
    }

    /// Reads a file and records its digest.
    pub fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let text = read(path)?;
        self.inputs
            .insert(path.display().to_string(), format!("{:x}", Sha256::digest(text.as_bytes())));
        Ok(text)
    }

    /// Prints the report and maps a failed check to exit code 3.
    pub fn finish(self) -> Result<(), Failure> {
        let failed = self.checks.iter().any(Check::failed);
        print_json(&self);
        if failed {
            Err(Failure::mismatch())
        } else {
            Ok(())
        }
    }
}

pub fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

/// Resolves a path named inside a manifest against the manifest's directory.
pub fn beside(manifest: &Path, name: &str) -> PathBuf {
    manifest.parent().map_or_else(|| PathBuf::from(name), |d| d.join(name))
}

pub fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

/// `herg report`: every built-in verification report.
pub fn all(threads: usize) -> Result<(), Failure> {
    let threads = if threads == 0 {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    } else {
        threads
    };
    let json = herg_core::reports::reports_json_with_threads(threads).map_err(Failure::input)?;
    println!("{json}");
    Ok(())
}
