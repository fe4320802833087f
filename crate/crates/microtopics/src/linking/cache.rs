//! File-backed response cache for remote API calls.

use std::fs;
use std::path::PathBuf;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Caches remote responses verbatim, one file per request digest.
///
/// Responses are JSON documents; a cached entry that no longer parses
/// (truncation, partial write) is treated as absent and refetched.
/// Writes go through a temp file and rename, so concurrent writers for
/// the same key are last-write-wins — harmless because responses for a
/// key are identical.
#[derive(Debug, Clone)]
pub struct ResponseCache {
    dir: PathBuf,
}

impl ResponseCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
        Ok(ResponseCache { dir })
    }

    /// Path of the entry for `key`.
    pub fn entry_path(&self, key: &str) -> PathBuf {
        let digest = Sha256::digest(key.as_bytes());
        self.dir.join(format!("{}.json", hex::encode(digest)))
    }

    /// Returns the cached response for `key`, fetching and storing it on
    /// a miss. Identical keys after the first call never hit the network.
    pub fn lookup_or_fetch(
        &self,
        key: &str,
        fetch: impl FnOnce() -> Result<Vec<u8>>,
    ) -> Result<Vec<u8>> {
        let path = self.entry_path(key);
        if let Ok(bytes) = fs::read(&path) {
            if serde_json::from_slice::<serde_json::Value>(&bytes).is_ok() {
                return Ok(bytes);
            }
            log::warn!("discarding corrupt cache entry {}", path.display());
        }
        let bytes = fetch()?;
        let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
        fs::write(&tmp, &bytes).map_err(|e| Error::io(&tmp, e))?;
        fs::rename(&tmp, &path).map_err(|e| Error::io(&path, e))?;
        Ok(bytes)
    }
}
