//! Machine-readable certificates for search and verification outcomes.
//!
//! A certificate records what was searched, under which constraints and
//! reductions, how many candidates were examined, and the witness if one
//! was found. Certificates are written to a content-addressed path (hash
//! of group, part count, constraints and engine version). The stored byte
//! stream is canonical: the measured wall time is kept out of it so two
//! runs with the same configuration produce identical files.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    OmsrWitness,
    Nonexistence,
    OrrWitness,
    OrrNonexistence,
}

/// Constraints of the enumerated space, recorded for re-verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraints {
    pub require_oriented: bool,
    pub require_regular: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub valency_range: Option<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub group: String,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connection_sets: Option<Value>,
    /// Witness set as generator words, for the one-part searches.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_words: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aut_order: Option<u64>,
    pub candidates_examined: u64,
    pub reductions_used: Vec<String>,
    pub constraints: Constraints,
    pub engine_version: String,
    /// Measured duration; excluded from the canonical bytes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl Certificate {
    /// The deterministic serialization: wall time stripped, fields in
    /// declaration order, one trailing newline.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut copy = self.clone();
        copy.wall_time_ms = None;
        let mut bytes = serde_json::to_vec_pretty(&copy).expect("certificate serializes");
        bytes.push(b'\n');
        bytes
    }

    /// Hex digest of (group, m, constraints, engine version); the file
    /// name under the certificate directory.
    pub fn content_address(&self) -> String {
        let key = serde_json::json!({
            "group": self.group,
            "m": self.m,
            "constraints": self.constraints,
            "engine_version": self.engine_version,
        });
        let mut hasher = Sha256::new();
        hasher.update(serde_json::to_vec(&key).expect("key serializes"));
        let digest = hasher.finalize();
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Writes the canonical bytes atomically (temp file + rename) under
    /// `dir`, returning the final path.
    pub fn write_atomic(&self, dir: &Path) -> std::io::Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(format!("{}.json", self.content_address()));
        let tmp = dir.join(format!(".{}.tmp", self.content_address()));
        {
            let mut f = std::fs::File::create(&tmp)?;
            f.write_all(&self.canonical_bytes())?;
            f.sync_all()?;
        }
        std::fs::rename(&tmp, &path)?;
        Ok(path)
    }
}

/// Atomic write for any other artifact (connection sets, digraphs, DOT).
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    let tmp = path.with_extension("tmp-write");
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}
