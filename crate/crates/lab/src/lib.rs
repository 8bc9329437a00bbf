// SPDX-License-Identifier: Apache-2.0

//! Std companion to `spinorlab-core`: JSON/CSV reports, witness files and
//! the verification suite behind `spinorlab verify-all`.

pub mod report;
pub mod suite;
pub mod witness;

use spinorlab_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("witness: {0}")]
    Witness(String),
}

pub type LabResult<T> = std::result::Result<T, LabError>;

/// Parses `"p,q"`.
pub fn parse_signature(text: &str) -> std::result::Result<spinorlab_core::Signature, String> {
    let (p, q) = text.split_once(',').ok_or_else(|| format!("expected p,q but got {text:?}"))?;
    let p: usize = p.trim().parse().map_err(|e| format!("bad p: {e}"))?;
    let q: usize = q.trim().parse().map_err(|e| format!("bad q: {e}"))?;
    spinorlab_core::Signature::new(p, q).map_err(|e| e.to_string())
}
