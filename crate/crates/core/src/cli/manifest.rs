use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::Command;
use crate::error::Result;

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: PathBuf,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputFile {
    /// Relative to the output directory.
    pub path: PathBuf,
    pub sha256: String,
    /// False for files holding wall-clock measurements.
    pub deterministic: bool,
}

/// Record of one run, sufficient to repeat it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub command: String,
    /// Resolved arguments, defaults filled in and input paths absolute.
    pub args: Command,
    pub seed: u64,
    pub threads: usize,
    /// `single-threaded` or `parallel`.
    pub execution: String,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<OutputFile>,
    pub started_unix_secs: u64,
    pub wall_seconds: f64,
    /// Manifest this run replayed, if any.
    pub replay_of: Option<PathBuf>,
}

impl RunManifest {
    pub fn write(&self, dir: &Path) -> Result<()> {
        let mut w = BufWriter::new(File::create(dir.join(MANIFEST_FILE))?);
        serde_json::to_writer_pretty(&mut w, self)?;
        writeln!(w)?;
        w.flush()?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<RunManifest> {
        Ok(serde_json::from_reader(BufReader::new(File::open(path)?))?)
    }

    pub fn is_single_threaded(&self) -> bool {
        self.threads == 1
    }
}

pub fn sha256_file(path: &Path) -> Result<String> {
    let mut hasher = Sha256::new();
    let mut f = BufReader::new(File::open(path)?);
    let mut buf = [0u8; 1 << 16];
    loop {
        let n = f.read(&mut buf)?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
    }
    Ok(hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect())
}
