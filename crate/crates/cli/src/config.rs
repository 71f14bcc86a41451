//! Flat key=value config files. Lines starting with '#' are comments,
//! blank lines are skipped, every key mirrors a flag. Flags take precedence
//! over anything loaded here.

use std::collections::BTreeMap;
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfigError {
    Syntax { line: usize, message: String },
    UnknownKey { line: usize, key: String },
    Io(String),
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConfigError::Syntax { line, message } => {
                write!(f, "config syntax error on line {}: {}", line, message)
            }
            ConfigError::UnknownKey { line, key } => {
                write!(f, "unknown config key '{}' on line {}", key, line)
            }
            ConfigError::Io(message) => write!(f, "cannot read config: {}", message),
        }
    }
}

const KNOWN_KEYS: &[&str] = &[
    "command",
    "field",
    "ambient",
    "poly",
    "poly_file",
    "degrees",
    "verify",
    "smoothness",
    "probe_depth",
    "budget",
    "workers",
    "seed",
    "format",
    "out",
    "p_range",
    "d_range",
    "n_range",
];

/// Parsed config: single-valued keys plus the repeatable `poly`.
#[derive(Debug, Default, Clone)]
pub struct FileConfig {
    pub values: BTreeMap<String, String>,
    pub polys: Vec<String>,
}

impl FileConfig {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }
}

pub fn load_config(path: &Path) -> Result<FileConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(e.to_string()))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<FileConfig, ConfigError> {
    let mut config = FileConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError::Syntax {
                line: line_no,
                message: "expected key = value".into(),
            });
        };
        let key = key.trim();
        let value = value.trim();
        if !KNOWN_KEYS.contains(&key) {
            return Err(ConfigError::UnknownKey {
                line: line_no,
                key: key.to_string(),
            });
        }
        if value.is_empty() {
            return Err(ConfigError::Syntax {
                line: line_no,
                message: format!("empty value for '{}'", key),
            });
        }
        if key == "poly" {
            config.polys.push(value.to_string());
        } else {
            config.values.insert(key.to_string(), value.to_string());
        }
    }
    Ok(config)
}
