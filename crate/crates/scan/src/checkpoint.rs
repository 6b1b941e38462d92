use std::fs::{self, File};
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use crate::report::{Counts, ExceptionRecord, ScanParams};

/// Scan state after the last fully processed Hilbert function, stored as a
/// single JSON line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub params: ScanParams,
    pub cursor: Option<String>,
    pub counts: Counts,
    pub exceptions: Vec<ExceptionRecord>,
    pub elapsed_seconds: f64,
}

impl Checkpoint {
    pub fn fresh(params: ScanParams) -> Self {
        Checkpoint { params, cursor: None, counts: Counts::default(), exceptions: Vec::new(), elapsed_seconds: 0.0 }
    }

    pub fn load(path: &Path) -> Result<Option<Self>> {
        if !path.exists() {
            return Ok(None);
        }
        let text = fs::read_to_string(path).with_context(|| format!("reading checkpoint {}", path.display()))?;
        let line = text.lines().next().unwrap_or("");
        let cp = serde_json::from_str(line).with_context(|| format!("parsing checkpoint {}", path.display()))?;
        Ok(Some(cp))
    }

    /// Writes a temporary file, syncs it and renames it over `path`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut tmp = PathBuf::from(path);
        tmp.as_mut_os_string().push(".tmp");
        let mut f = File::create(&tmp).with_context(|| format!("creating {}", tmp.display()))?;
        serde_json::to_writer(&mut f, self)?;
        f.write_all(b"\n")?;
        f.sync_all()?;
        drop(f);
        fs::rename(&tmp, path).with_context(|| format!("replacing checkpoint {}", path.display()))?;
        Ok(())
    }
}
