//! Optional JSON config file layer. Flags beat the file, the file beats
//! built-in defaults; unknown keys are rejected so typos surface early.

use std::path::Path;

use serde::Deserialize;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub g: Option<f64>,
    pub beta: Option<f64>,
    pub n_max: Option<u32>,
    #[serde(rename = "N")]
    pub n_grid: Option<usize>,
    pub k: Option<usize>,
    pub n: Option<u32>,
    pub p_min: Option<f64>,
    pub p_max: Option<f64>,
    pub samples: Option<usize>,
    pub mass: Option<f64>,
    pub omega: Option<f64>,
    pub hbar: Option<f64>,
    pub c: Option<f64>,
    pub branch: Option<String>,
    pub format: Option<String>,
    pub suite: Option<Vec<String>>,
}

/// Reads and parses the config file; `None` yields an empty layer.
pub fn load(path: Option<&Path>) -> Result<FileConfig, String> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Three-layer precedence: explicit flag, then config file, then default.
pub fn pick<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}
