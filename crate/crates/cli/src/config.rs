//! Flat key-value config files (a TOML subset): every key sits at top level
//! and command-line flags win over file entries.

use std::path::Path;

#[derive(Default)]
pub struct Cfg {
    table: toml::Table,
}

impl Cfg {
    pub fn load(path: Option<&Path>) -> Result<Self, String> {
        let Some(path) = path else {
            return Ok(Cfg::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        let table: toml::Table = text
            .parse()
            .map_err(|e| format!("bad config {}: {e}", path.display()))?;
        for (key, value) in &table {
            if value.is_table() || value.is_array() {
                return Err(format!("config key `{key}` is not a flat value"));
            }
        }
        Ok(Cfg { table })
    }

    pub fn f64(&self, key: &str) -> Option<f64> {
        match self.table.get(key) {
            Some(toml::Value::Float(v)) => Some(*v),
            Some(toml::Value::Integer(v)) => Some(*v as f64),
            _ => None,
        }
    }

    pub fn usize(&self, key: &str) -> Option<usize> {
        match self.table.get(key) {
            Some(toml::Value::Integer(v)) if *v >= 0 => Some(*v as usize),
            _ => None,
        }
    }

    pub fn string(&self, key: &str) -> Option<String> {
        match self.table.get(key) {
            Some(toml::Value::String(v)) => Some(v.clone()),
            // Accept `c0 = 1.5` as well as `c0 = "auto"`.
            Some(toml::Value::Float(v)) => Some(v.to_string()),
            Some(toml::Value::Integer(v)) => Some(v.to_string()),
            _ => None,
        }
    }

    pub fn flag(&self, key: &str) -> bool {
        matches!(self.table.get(key), Some(toml::Value::Boolean(true)))
    }
}

pub fn pick_f64(flag: Option<f64>, cfg: &Cfg, key: &str, default: f64) -> f64 {
    flag.or_else(|| cfg.f64(key)).unwrap_or(default)
}

pub fn pick_usize(flag: Option<usize>, cfg: &Cfg, key: &str, default: usize) -> usize {
    flag.or_else(|| cfg.usize(key)).unwrap_or(default)
}

pub fn pick_string(flag: Option<String>, cfg: &Cfg, key: &str, default: &str) -> String {
    flag.or_else(|| cfg.string(key))
        .unwrap_or_else(|| default.to_string())
}
