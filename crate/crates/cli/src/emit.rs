//! Deterministic text emission. Floats are printed with 17 significant
//! digits so every value round-trips exactly; identical inputs therefore
//! produce byte-identical files.

use std::path::{Path, PathBuf};

/// Canonical float rendering used in both CSV and JSON output.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Minimal JSON string encoder; output keys and notes are plain ASCII.
pub fn json_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => {
                out.push_str(&format!("\\u{:04x}", c as u32));
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Quotes a CSV field only when it contains a delimiter, quote, or newline.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

/// Relative output paths are joined under `POTALG_OUT_DIR` when it is set.
pub fn resolve_out_path(p: &Path) -> PathBuf {
    if p.is_absolute() {
        return p.to_path_buf();
    }
    match std::env::var_os("POTALG_OUT_DIR") {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir).join(p),
        _ => p.to_path_buf(),
    }
}

/// Prints to stdout, or writes the file when a path was requested.
pub fn write_out(path: Option<&Path>, text: &str) -> Result<(), String> {
    match path {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(p) => {
            let target = resolve_out_path(p);
            std::fs::write(&target, text).map_err(|e| format!("{}: {e}", target.display()))
        }
    }
}
