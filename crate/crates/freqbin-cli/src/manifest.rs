//! Run provenance.
//!
//! Every command that writes an output directory drops exactly one
//! `manifest.json` beside its artifacts recording what produced them.
//! The manifest carries a wall-clock timestamp, so it is the one file
//! here that is *not* byte-reproducible across runs; the data artifacts
//! themselves are.

use std::path::Path;

use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct RunManifest {
    /// Subcommand name, e.g. `"synth"`.
    pub command: String,
    /// Input files and the salient flags, as given on the command line.
    pub inputs: Vec<String>,
    /// Directory the artifacts were written to.
    pub outdir: String,
    /// Seed that governed any randomness in the run.
    pub seed: u64,
    /// Crate version that produced the artifacts.
    pub version: String,
    /// RFC 3339 UTC timestamp of the run.
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(command: &str, inputs: Vec<String>, outdir: &Path, seed: u64) -> Self {
        Self {
            command: command.to_owned(),
            inputs,
            outdir: outdir.display().to_string(),
            seed,
            version: env!("CARGO_PKG_VERSION").to_owned(),
            timestamp: chrono::Utc::now().to_rfc3339(),
        }
    }

    pub fn write(&self, dir: &Path) -> freqbin::Result<()> {
        freqbin::io::write_json_file(&dir.join("manifest.json"), self)
    }
}
