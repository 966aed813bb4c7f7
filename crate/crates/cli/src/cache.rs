//! On-disk cache of generated sequences.
//!
//! One JSON file per (command, variable set, n, schema version), written
//! atomically (temp file + rename) with a SHA-256 checksum over the
//! documents payload. A checksum or parse mismatch is treated as
//! corruption: the caller recomputes and overwrites.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::document::{PolynomialDocument, SCHEMA_VERSION};

#[derive(Serialize, Deserialize)]
struct CacheFile {
    checksum: String,
    documents: Vec<PolynomialDocument>,
}

pub fn cache_path(dir: &Path, command: &str, vars: &str, n: u32) -> PathBuf {
    dir.join(format!("{command}-{vars}-n{n}-v{SCHEMA_VERSION}.json"))
}

fn checksum(documents: &[PolynomialDocument]) -> String {
    let payload = serde_json::to_string(documents).expect("documents serialize");
    let digest = Sha256::digest(payload.as_bytes());
    let mut out = String::with_capacity(64);
    for byte in digest {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}

/// Loads a cached sequence; `None` when the file is absent or corrupt
/// (corruption is reported on stderr).
pub fn load(path: &Path) -> Option<Vec<PolynomialDocument>> {
    let raw = fs::read_to_string(path).ok()?;
    let parsed: CacheFile = match serde_json::from_str(&raw) {
        Ok(f) => f,
        Err(err) => {
            eprintln!("cache corruption in {}: {err}; recomputing", path.display());
            return None;
        }
    };
    if checksum(&parsed.documents) != parsed.checksum {
        eprintln!("cache corruption in {}: checksum mismatch; recomputing", path.display());
        return None;
    }
    Some(parsed.documents)
}

/// Atomically stores a sequence: write to a temp file in the same
/// directory, then rename over the target.
pub fn store(path: &Path, documents: &[PolynomialDocument]) -> io::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let file = CacheFile {
        checksum: checksum(documents),
        documents: documents.to_vec(),
    };
    let body = serde_json::to_string_pretty(&file).expect("cache serializes");
    let tmp = path.with_extension(format!("tmp-{}", std::process::id()));
    fs::write(&tmp, body)?;
    fs::rename(&tmp, path)?;
    Ok(())
}
