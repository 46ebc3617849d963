use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

/// Sidecar describing how an output file was produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: String,
    pub config: serde_json::Value,
    pub timestamp: u64,
    pub version: String,
    pub outputs: Vec<FileDigest>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".run.json");
    PathBuf::from(name)
}

impl RunRecord {
    pub fn new(command: &str, config: serde_json::Value) -> Self {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        Self {
            command: command.to_string(),
            config,
            timestamp,
            version: env!("CARGO_PKG_VERSION").to_string(),
            outputs: Vec::new(),
        }
    }

    /// Recomputes every digest and reports the first file that no longer matches.
    pub fn verify(&self) -> Result<(), CliError> {
        for out in &self.outputs {
            let bytes = std::fs::read(&out.path)
                .map_err(|e| CliError::Io(out.path.clone(), e.to_string()))?;
            if sha256_hex(&bytes) != out.sha256 {
                return Err(CliError::Digest(out.path.clone()));
            }
        }
        Ok(())
    }
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))
}

/// Writes `contents` to `out` and its record to `<out>.run.json`.
pub fn write_with_record(
    out: &Path,
    contents: &str,
    mut record: RunRecord,
) -> Result<RunRecord, CliError> {
    write(out, contents.as_bytes())?;
    record.outputs.push(FileDigest {
        path: out.display().to_string(),
        sha256: sha256_hex(contents.as_bytes()),
    });
    let json =
        serde_json::to_string_pretty(&record).map_err(|e| CliError::Config(e.to_string()))?;
    write(&sidecar_path(out), json.as_bytes())?;
    Ok(record)
}
