//! On-disk cache of mirror tables, one versioned JSON file per `(N, k, d_max)`.

use std::fs;
use std::path::{Path, PathBuf};

use gwconics_core::vsc::{Hypersurface, VscTable};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Bumped whenever the table format or the recursion changes.
pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
pub struct CacheEntry {
    pub version: u32,
    pub key: String,
    pub table: VscTable,
}

pub fn cache_key(surface: Hypersurface, d_max: u32) -> String {
    format!("{}:{}:{}", surface.n, surface.k, d_max)
}

fn entry_bytes(surface: Hypersurface, table: &VscTable, d_max: u32) -> Result<Vec<u8>, CliError> {
    let entry = CacheEntry { version: CACHE_VERSION, key: cache_key(surface, d_max), table: table.clone() };
    let mut bytes = serde_json::to_vec(&entry)?;
    bytes.push(b'\n');
    Ok(bytes)
}

#[derive(Clone, Debug)]
pub struct TableCache {
    dir: Option<PathBuf>,
    verify: bool,
}

/// How a table request was served.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CacheStatus {
    Disabled,
    Hit,
    Miss,
    Verified,
}

impl TableCache {
    pub fn new(dir: Option<PathBuf>, verify: bool) -> Self {
        TableCache { dir, verify }
    }

    fn path(dir: &Path, surface: Hypersurface, d_max: u32) -> PathBuf {
        dir.join(format!("vsc-{}-{}-{}.json", surface.n, surface.k, d_max))
    }

    /// Loads a table or builds and stores it. Stale or unreadable entries are
    /// rebuilt. With verification on, a hit is recomputed and must match byte for byte.
    pub fn table(&self, surface: Hypersurface, d_max: u32) -> Result<(VscTable, CacheStatus), CliError> {
        let Some(dir) = &self.dir else {
            return Ok((VscTable::build(surface, d_max)?, CacheStatus::Disabled));
        };
        let path = Self::path(dir, surface, d_max);
        if let Ok(bytes) = fs::read(&path) {
            if let Ok(entry) = serde_json::from_slice::<CacheEntry>(&bytes) {
                if entry.version == CACHE_VERSION && entry.key == cache_key(surface, d_max) {
                    if !self.verify {
                        return Ok((entry.table, CacheStatus::Hit));
                    }
                    let fresh = VscTable::build(surface, d_max)?;
                    if entry_bytes(surface, &fresh, d_max)? != bytes {
                        return Err(CliError::Contract(format!(
                            "cache entry {} differs from recomputation",
                            path.display()
                        )));
                    }
                    return Ok((fresh, CacheStatus::Verified));
                }
            }
        }
        let table = VscTable::build(surface, d_max)?;
        fs::create_dir_all(dir)?;
        // write then rename so concurrent readers never see a partial file
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, entry_bytes(surface, &table, d_max)?)?;
        fs::rename(&tmp, &path)?;
        Ok((table, CacheStatus::Miss))
    }
}
