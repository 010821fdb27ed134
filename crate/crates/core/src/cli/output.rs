use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use serde::Serialize;

/// Column-labelled numeric table written as CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        let mut w = BufWriter::new(File::create(path)?);
        writeln!(w, "{}", self.header.join(","))?;
        for row in &self.rows {
            writeln!(w, "{}", row.join(","))?;
        }
        w.flush()
    }
}

/// Shortest round-trip representation; empty for masked cells.
pub fn num(v: f64) -> String {
    format!("{v}")
}

pub fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

/// `<dir>/<stem><suffix>.csv` next to `out`.
pub fn sibling(out: &Path, suffix: &str) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "output".into());
    out.with_file_name(format!("{stem}{suffix}.csv"))
}

/// Record of one invocation, written as `<output>.manifest.json`.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest<P: Serialize> {
    pub command: String,
    pub params: P,
    pub outputs: Vec<PathBuf>,
    pub version: String,
    pub started_at_unix_s: f64,
    pub duration_s: f64,
    pub summary: serde_json::Value,
}

impl<P: Serialize> RunManifest<P> {
    pub fn new(
        command: &str,
        params: P,
        outputs: Vec<PathBuf>,
        started: SystemTime,
        elapsed: Duration,
        summary: serde_json::Value,
    ) -> Self {
        let started_at_unix_s = started
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs_f64())
            .unwrap_or(0.0);
        Self {
            command: command.to_string(),
            params,
            outputs,
            version: env!("CARGO_PKG_VERSION").to_string(),
            started_at_unix_s,
            duration_s: elapsed.as_secs_f64(),
            summary,
        }
    }

    pub fn path_for(primary: &Path) -> PathBuf {
        let name = primary
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "output".into());
        primary.with_file_name(format!("{name}.manifest.json"))
    }

    pub fn write(&self, primary: &Path) -> std::io::Result<PathBuf> {
        let path = Self::path_for(primary);
        let text = serde_json::to_string_pretty(self).map_err(std::io::Error::other)?;
        std::fs::write(&path, text + "\n")?;
        Ok(path)
    }
}
