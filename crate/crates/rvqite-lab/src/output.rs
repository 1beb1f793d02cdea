//! CSV emission: every file starts with a `# key=value` metadata comment
//! block recording the resolved configuration, then a header row, then data.
//! Floats are written with Rust's shortest round-trip formatting, so reruns
//! with the same config and seed are byte-identical.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

pub struct CsvWriter {
    buffer: String,
    columns: usize,
}

impl CsvWriter {
    pub fn new(metadata: &[(String, String)], header: &[&str]) -> Self {
        let mut buffer = String::new();
        for (key, value) in metadata {
            let _ = writeln!(buffer, "# {key}={value}");
        }
        let _ = writeln!(buffer, "{}", header.join(","));
        Self {
            buffer,
            columns: header.len(),
        }
    }

    pub fn row(&mut self, fields: &[String]) {
        debug_assert_eq!(fields.len(), self.columns);
        let _ = writeln!(self.buffer, "{}", fields.join(","));
    }

    pub fn write_to(&self, path: &Path) -> Result<()> {
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                fs::create_dir_all(parent)
                    .with_context(|| format!("creating {}", parent.display()))?;
            }
        }
        fs::write(path, &self.buffer).with_context(|| format!("writing {}", path.display()))
    }
}

pub fn out_path(out_dir: &Path, name: &str) -> PathBuf {
    out_dir.join(name)
}

/// Shortest round-trip float formatting shared by all emitters.
pub fn fmt_f64(value: f64) -> String {
    if value.is_nan() {
        "nan".to_string()
    } else {
        format!("{value}")
    }
}
