//! Provenance block attached to every tool output.
//!
//! Outputs are deterministic functions of (config, inputs, tool version);
//! the block records content hashes of the inputs so identical reruns can be
//! recognized byte for byte.

use serde::Serialize;
use sha2::{Digest, Sha256};

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub tool: &'static str,
    pub version: &'static str,
    /// SHA-256 of the material database source.
    pub materials_sha256: String,
    /// SHA-256 of the model config file bytes, when a config was used.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config_sha256: Option<String>,
    /// SHA-256 of the measurement trace file bytes, when a trace was used.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace_sha256: Option<String>,
}

impl Provenance {
    pub fn new(materials_sha256: String) -> Self {
        Provenance {
            tool: "piezoharv",
            version: env!("CARGO_PKG_VERSION"),
            materials_sha256,
            config_sha256: None,
            trace_sha256: None,
        }
    }

    pub fn with_config(mut self, config_bytes: &[u8]) -> Self {
        self.config_sha256 = Some(sha256_hex(config_bytes));
        self
    }

    pub fn with_trace(mut self, trace_bytes: &[u8]) -> Self {
        self.trace_sha256 = Some(sha256_hex(trace_bytes));
        self
    }
}
