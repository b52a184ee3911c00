//! Versioned JSON cache of the catalog and first type families.
//!
//! The file lives in `$COXTET_CACHE_DIR`. A different schema version or an unreadable
//! file is reported as a warning and the state is recomputed; different settings are
//! a plain miss.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use coxtet::catalog::Catalog;
use coxtet::decomp::Family;

pub const CACHE_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "COXTET_CACHE_DIR";
const FILE_NAME: &str = "coxtet-cache.json";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheState {
    pub schema_version: u32,
    /// Settings the content was computed with; see [`settings_key`].
    pub settings: String,
    pub catalog: Option<Catalog>,
    /// First type families keyed by the canonical key of the fundamental.
    pub families: BTreeMap<String, Family>,
}

impl CacheState {
    pub fn empty(settings: &str) -> Self {
        CacheState { schema_version: CACHE_VERSION, settings: settings.to_string(), catalog: None, families: BTreeMap::new() }
    }
}

pub fn settings_key(max_label: u32, tol_signature: f64, max_tiles: usize, tol_volume: f64) -> String {
    format!("max_label={max_label};tol_signature={tol_signature:e};max_tiles={max_tiles};tol_volume={tol_volume:e}")
}

#[derive(Debug)]
pub enum Loaded {
    Hit(CacheState),
    Missing,
    /// Computed with other settings.
    Mismatch,
    Stale(u32),
    Corrupt(String),
}

pub fn cache_file(dir: &Path) -> PathBuf {
    dir.join(FILE_NAME)
}

pub fn load(dir: &Path, settings: &str) -> Loaded {
    let text = match fs::read_to_string(cache_file(dir)) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Loaded::Missing,
        Err(e) => return Loaded::Corrupt(e.to_string()),
    };
    let value: serde_json::Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => return Loaded::Corrupt(e.to_string()),
    };
    match value.get("schema_version").and_then(|v| v.as_u64()) {
        Some(v) if v == CACHE_VERSION as u64 => {}
        Some(v) => return Loaded::Stale(v as u32),
        None => return Loaded::Corrupt("no schema_version".into()),
    }
    match serde_json::from_value::<CacheState>(value) {
        Ok(s) if s.settings == settings => Loaded::Hit(s),
        Ok(_) => Loaded::Mismatch,
        Err(e) => Loaded::Corrupt(e.to_string()),
    }
}

/// Writes through a temporary file so a crash never leaves a half-written cache.
pub fn save(dir: &Path, state: &CacheState) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!("{FILE_NAME}.tmp"));
    fs::write(&tmp, serde_json::to_vec(state).map_err(io::Error::other)?)?;
    fs::rename(tmp, cache_file(dir))
}
