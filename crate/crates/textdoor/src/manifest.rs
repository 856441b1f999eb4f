//! Run manifests: enough provenance (config hash, input digests, seed,
//! version) to reproduce a run bit-for-bit, timestamps aside.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RunManifest {
    pub toolkit_version: String,
    pub created_unix: u64,
    pub seed: u64,
    /// SHA-256 of the canonical serialized run configuration.
    pub config_sha256: String,
    /// Input path -> SHA-256 of file contents.
    pub inputs: BTreeMap<String, String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn sha256_file(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(sha256_hex(&bytes))
}

impl RunManifest {
    pub fn new(seed: u64, config_blob: &str, input_paths: &[&Path]) -> Result<Self> {
        let mut inputs = BTreeMap::new();
        for p in input_paths {
            inputs.insert(p.display().to_string(), sha256_file(p)?);
        }
        Ok(RunManifest {
            toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
            created_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            seed,
            config_sha256: sha256_hex(config_blob.as_bytes()),
            inputs,
        })
    }

    /// Equality modulo the creation timestamp: identical manifests mean the
    /// run is a replay of the same inputs and configuration.
    pub fn same_run(&self, other: &RunManifest) -> bool {
        self.toolkit_version == other.toolkit_version
            && self.seed == other.seed
            && self.config_sha256 == other.config_sha256
            && self.inputs == other.inputs
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let json =
            serde_json::to_string_pretty(self).map_err(|e| Error::Structural(e.to_string()))?;
        std::fs::write(path, json + "\n").map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let raw = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&raw).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            line: 0,
            msg: e.to_string(),
        })
    }
}
