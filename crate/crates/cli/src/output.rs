use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use chrono::{DateTime, SecondsFormat, Utc};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Writes `content` to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, content).with_context(|| format!("cannot write {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(content.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

const SEED_DERIVATION: &str = "trial k uses mix64(seed ^ mix64(k + 0x9e3779b97f4a7c15)), mix64 = splitmix64 finalizer";

#[derive(Serialize)]
struct OutputDigest {
    path: String,
    sha256: String,
}

#[derive(Serialize)]
struct Manifest<'a> {
    command: &'a str,
    version: &'a str,
    /// Full command line; rerunning it reproduces every output digest.
    argv: Vec<String>,
    seed_derivation: &'a str,
    seed: Option<u64>,
    parameters: &'a Value,
    started: String,
    finished: String,
    outputs: Vec<OutputDigest>,
}

pub struct Run {
    pub command: &'static str,
    pub seed: Option<u64>,
    pub parameters: Value,
    pub started: DateTime<Utc>,
    /// Files written by the command, in order.
    pub outputs: Vec<PathBuf>,
}

impl Run {
    /// Records the run next to its outputs; `None` when nothing went to a file.
    pub fn write_manifest(&self, explicit: Option<&Path>) -> Result<Option<PathBuf>> {
        let path = match (explicit, self.outputs.first()) {
            (Some(p), _) => p.to_path_buf(),
            (None, Some(first)) => {
                let mut name = first.as_os_str().to_owned();
                name.push(".manifest.json");
                PathBuf::from(name)
            }
            (None, None) => return Ok(None),
        };
        let outputs = self
            .outputs
            .iter()
            .map(|p| {
                let bytes = fs::read(p).with_context(|| format!("cannot read {}", p.display()))?;
                Ok(OutputDigest {
                    path: p.display().to_string(),
                    sha256: sha256_hex(&bytes),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let manifest = Manifest {
            command: self.command,
            version: env!("CARGO_PKG_VERSION"),
            argv: std::env::args().collect(),
            seed_derivation: SEED_DERIVATION,
            seed: self.seed,
            parameters: &self.parameters,
            started: self.started.to_rfc3339_opts(SecondsFormat::Millis, true),
            finished: Utc::now().to_rfc3339_opts(SecondsFormat::Millis, true),
            outputs,
        };
        let text = serde_json::to_string_pretty(&manifest)? + "\n";
        fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?;
        Ok(Some(path))
    }
}
