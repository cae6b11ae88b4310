//! The run manifest: everything needed to bit-reproduce a run, plus
//! timing. The `run_id` hashes only the reproducibility-relevant parts
//! (tool version, command, input checksum, config, master seed), so
//! reruns of the same work share it and output files can cross-reference
//! it without breaking byte-for-byte determinism.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use deltap_core::{AnalysisConfig, SyntheticSpec};

use crate::error::{CliError, Result};
use crate::ingest::hex;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairSeed {
    pub var_a: String,
    pub var_b: String,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Timing {
    pub started_unix_ms: u128,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub command: String,
    pub run_id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_sha256: Option<String>,
    pub master_seed: u64,
    pub config: AnalysisConfig,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub simulation_specs: Vec<SyntheticSpec>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub per_pair_seeds: Vec<PairSeed>,
    pub timing: Timing,
}

/// The deterministic identity of a run; its hash is the run id.
#[derive(Serialize)]
struct RunIdentity<'a> {
    tool_version: &'a str,
    command: &'a str,
    input_sha256: Option<&'a str>,
    config: &'a AnalysisConfig,
    simulation_specs: &'a [SyntheticSpec],
    master_seed: u64,
}

pub fn run_id(
    command: &str,
    input_sha256: Option<&str>,
    config: &AnalysisConfig,
    specs: &[SyntheticSpec],
) -> String {
    let identity = RunIdentity {
        tool_version: TOOL_VERSION,
        command,
        input_sha256,
        config,
        simulation_specs: specs,
        master_seed: config.seed,
    };
    let json = serde_json::to_vec(&identity).expect("identity serializes");
    let digest = Sha256::digest(&json);
    hex(&digest[..8])
}

impl RunManifest {
    pub fn write(&self, path: &Path) -> Result<()> {
        let json = serde_json::to_string_pretty(self)
            .map_err(|e| CliError::Runtime(format!("manifest serialization failed: {e}")))?;
        std::fs::write(path, json + "\n").map_err(|e| CliError::io(path, e))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Runtime(format!("manifest parse failed: {e}")))
    }
}

pub fn now_unix_ms() -> u128 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_millis())
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn run_id_is_stable_and_sensitive() {
        let config = AnalysisConfig::default();
        let a = run_id("analyze", Some("abc"), &config, &[]);
        assert_eq!(a, run_id("analyze", Some("abc"), &config, &[]));
        assert_ne!(a, run_id("analyze", Some("abd"), &config, &[]));
        let other = AnalysisConfig {
            seed: 43,
            ..config
        };
        assert_ne!(a, run_id("analyze", Some("abc"), &other, &[]));
    }

    #[test]
    fn manifest_round_trips() {
        let m = RunManifest {
            tool_version: TOOL_VERSION.to_string(),
            command: "analyze".into(),
            run_id: "deadbeef".into(),
            input_path: Some("data.csv".into()),
            input_sha256: Some("ff".into()),
            master_seed: 42,
            config: AnalysisConfig::default(),
            simulation_specs: vec![],
            per_pair_seeds: vec![PairSeed {
                var_a: "a".into(),
                var_b: "b".into(),
                seed: 7,
            }],
            timing: Timing {
                started_unix_ms: 1,
                elapsed_ms: 2,
            },
        };
        let f = tempfile::NamedTempFile::new().unwrap();
        m.write(f.path()).unwrap();
        let back = RunManifest::read(f.path()).unwrap();
        assert_eq!(back.run_id, "deadbeef");
        assert_eq!(back.per_pair_seeds.len(), 1);
    }
}
