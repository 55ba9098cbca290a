use std::env;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use crate::error::CliError;

pub const OUT_DIR_VAR: &str = "FRESNEL_OUT_DIR";

/// Where CSV output goes: `--out` (relative to `$FRESNEL_OUT_DIR` when set),
/// else `$FRESNEL_OUT_DIR/<command>.csv`, else stdout (`None`).
pub fn destination(out: Option<&Path>, command: &str) -> Option<PathBuf> {
    let dir = env::var_os(OUT_DIR_VAR).filter(|d| !d.is_empty()).map(PathBuf::from);
    match (out, dir) {
        (Some(p), Some(d)) if p.is_relative() => Some(d.join(p)),
        (Some(p), _) => Some(p.to_path_buf()),
        (None, Some(d)) => Some(d.join(format!("{command}.csv"))),
        (None, None) => None,
    }
}

pub fn write(dest: Option<&Path>, content: &str) -> Result<(), CliError> {
    match dest {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent)
                    .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", parent.display())))?;
            }
            fs::write(path, content).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(content.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

/// Shortest round-trip form, in exponent notation outside `[1e-4, 1e15)`.
pub fn num(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || !a.is_finite() || (1e-4..1e15).contains(&a) {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

/// CSV body: a column header line, then one row per record.
pub fn csv<I: IntoIterator<Item = Vec<f64>>>(columns: &[&str], rows: I) -> String {
    let mut s = columns.join(",");
    s.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&v| num(v)).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}
