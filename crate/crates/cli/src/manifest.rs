//! Run manifests: enough to re-run a subcommand and check that it reproduces.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::args::Command;

pub const TOOL: &str = "cliffold";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    /// Subcommand name and its fully resolved arguments.
    pub command: Command,
    /// Core configuration actually used, where the subcommand builds one.
    #[serde(default)]
    pub config: serde_json::Value,
    /// Input path as given on the command line -> sha256 of its contents.
    pub inputs: BTreeMap<String, String>,
    pub seed: Option<u64>,
    /// sha256 over the result document and every emitted file.
    pub result_digest: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn file_digest(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(sha256_hex(&bytes))
}

/// Digest of the compact result JSON followed by `name\0contents\0` for each file.
pub fn result_digest(result: &serde_json::Value, files: &[(String, String)]) -> String {
    let mut h = Sha256::new();
    h.update(serde_json::to_string(result).expect("json values serialize").as_bytes());
    for (name, contents) in files {
        h.update(name.as_bytes());
        h.update([0u8]);
        h.update(contents.as_bytes());
        h.update([0u8]);
    }
    hex::encode(h.finalize())
}

/// Accept either a bare manifest or a `{"manifest": .., "result": ..}` envelope.
pub fn load_manifest(path: &Path) -> Result<RunManifest> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let inner = match value.get("manifest") {
        Some(m) => m.clone(),
        None => value,
    };
    Ok(serde_json::from_value(inner)?)
}
