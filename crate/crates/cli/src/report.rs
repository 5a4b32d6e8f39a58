use std::path::{Path, PathBuf};

use chrono::{DateTime, SecondsFormat, Utc};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::failure::{Failure, Result};

pub const REPORT_SCHEMA_VERSION: &str = "1.0";

/// A file read or written by a command, identified by content digest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FileDigest {
    pub role: String,
    pub path: String,
    pub sha256: String,
}

impl FileDigest {
    pub fn of(role: &str, path: &Path, bytes: &[u8]) -> Self {
        Self {
            role: role.into(),
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: String,
    pub tool_version: String,
    pub command: String,
    pub parameters: Value,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    pub results: Value,
    pub pass: bool,
    pub tolerance: f64,
    pub timestamp: String,
}

/// `SOURCE_DATE_EPOCH` when set, so reports can be made reproducible.
fn timestamp() -> String {
    let t = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.trim().parse::<i64>().ok())
        .and_then(|s| DateTime::<Utc>::from_timestamp(s, 0))
        .unwrap_or_else(Utc::now);
    t.to_rfc3339_opts(SecondsFormat::Secs, true)
}

impl RunReport {
    pub fn new(command: &str, parameters: Value, results: Value, pass: bool, tolerance: f64) -> Self {
        Self {
            schema_version: REPORT_SCHEMA_VERSION.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            parameters,
            inputs: Vec::new(),
            outputs: Vec::new(),
            results,
            pass,
            tolerance,
            timestamp: timestamp(),
        }
    }
}

pub fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|source| Failure::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|source| Failure::Io {
        path: path.to_owned(),
        source,
    })
}

/// Creates the output directory.
pub fn ensure_dir(dir: &Path) -> Result<PathBuf> {
    std::fs::create_dir_all(dir).map_err(|source| Failure::Io {
        path: dir.to_owned(),
        source,
    })?;
    Ok(dir.to_owned())
}

/// Serializes `value` to `dir/name` and returns its digest.
pub fn write_json<S: Serialize>(dir: &Path, name: &str, role: &str, value: &S) -> Result<FileDigest> {
    let path = dir.join(name);
    let text = cryptoherm::io::to_json(value)?;
    write_bytes(&path, text.as_bytes())?;
    Ok(FileDigest::of(role, &path, text.as_bytes()))
}

/// Reads and parses `path`, returning the value and its digest.
pub fn read_json<D: serde::de::DeserializeOwned>(path: &Path, role: &str) -> Result<(D, FileDigest)> {
    let bytes = read_bytes(path)?;
    let text = std::str::from_utf8(&bytes).map_err(|e| Failure::Input {
        path: path.to_owned(),
        source: cryptoherm::Error::Format {
            field: "<root>".into(),
            detail: format!("not UTF-8: {e}"),
        },
    })?;
    let value = cryptoherm::io::from_json(text).map_err(|source| Failure::Input {
        path: path.to_owned(),
        source,
    })?;
    Ok((value, FileDigest::of(role, path, &bytes)))
}
