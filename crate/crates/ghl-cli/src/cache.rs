//! Content-addressed result cache. Each entry is one computed degree, keyed
//! by a SHA-256 digest over the engine version, theory, full group
//! multiplication table, module presentation and action, and degree — so a
//! hit is only possible when the same engine build would recompute the very
//! same value. Entries are JSON files written atomically (temp file in the
//! cache directory, then rename).

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use ghl_core::coeffmod::{GModule, ModuleDto};
use ghl_core::groups::FiniteGroup;
use ghl_core::ENGINE_VERSION;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::records::ComputeRecord;

/// Handle on a cache directory; `enabled: false` turns every operation into
/// a no-op so `--no-cache` needs no branching at call sites.
#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
    enabled: bool,
}

#[derive(Serialize)]
struct KeyMaterial<'a> {
    engine: &'a str,
    theory: &'a str,
    group: &'a FiniteGroup,
    module: &'a ModuleDto,
    degree: usize,
}

impl Cache {
    /// Cache under `$GHL_CACHE_DIR`, defaulting to `.ghl-cache` in the
    /// working directory.
    pub fn from_env() -> Cache {
        let dir = std::env::var_os("GHL_CACHE_DIR")
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(".ghl-cache"));
        Cache { dir, enabled: true }
    }

    /// Cache rooted at an explicit directory (used by tests to avoid
    /// environment races).
    pub fn at_dir(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: dir.into(), enabled: true }
    }

    /// A cache that never stores or returns anything.
    pub fn disabled() -> Cache {
        Cache { dir: PathBuf::new(), enabled: false }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Content key for one (theory, group, module, degree) computation under
    /// the current engine version.
    pub fn key(
        theory: &str,
        group: &Arc<FiniteGroup>,
        module: &GModule,
        degree: usize,
    ) -> String {
        let material = KeyMaterial {
            engine: ENGINE_VERSION,
            theory,
            group: group.as_ref(),
            module: &ModuleDto::from_module(module),
            degree,
        };
        let bytes = serde_json::to_vec(&material).expect("key material serializes");
        let mut hasher = Sha256::new();
        hasher.update(&bytes);
        hex(&hasher.finalize())
    }

    /// Fetches a stored record; `None` on miss, disabled cache, or any
    /// unreadable/corrupt entry (corrupt entries are treated as misses, never
    /// as errors).
    pub fn get(&self, key: &str) -> Option<ComputeRecord> {
        if !self.enabled {
            return None;
        }
        let text = fs::read_to_string(self.entry_path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// Stores a record atomically. I/O failures are swallowed: the cache is
    /// an accelerator, never a correctness dependency.
    pub fn put(&self, key: &str, record: &ComputeRecord) {
        if !self.enabled {
            return;
        }
        if fs::create_dir_all(&self.dir).is_err() {
            return;
        }
        let tmp = self.dir.join(format!(".{key}.tmp"));
        let Ok(body) = serde_json::to_vec_pretty(record) else {
            return;
        };
        if fs::write(&tmp, body).is_err() {
            return;
        }
        let _ = fs::rename(&tmp, self.entry_path(key));
    }

    /// Number of entries and total bytes on disk.
    pub fn stats(&self) -> (usize, u64) {
        let mut count = 0usize;
        let mut bytes = 0u64;
        if let Ok(entries) = fs::read_dir(&self.dir) {
            for entry in entries.flatten() {
                let path = entry.path();
                if path.extension().is_some_and(|e| e == "json") {
                    count += 1;
                    if let Ok(meta) = entry.metadata() {
                        bytes += meta.len();
                    }
                }
            }
        }
        (count, bytes)
    }

    /// Removes every entry (and any stranded temp file). Returns the number
    /// of entries removed.
    pub fn gc(&self) -> std::io::Result<usize> {
        let mut removed = 0usize;
        let entries = match fs::read_dir(&self.dir) {
            Ok(e) => e,
            Err(err) if err.kind() == std::io::ErrorKind::NotFound => return Ok(0),
            Err(err) => return Err(err),
        };
        for entry in entries.flatten() {
            let path = entry.path();
            let is_entry = path.extension().is_some_and(|e| e == "json");
            let is_tmp = path.extension().is_some_and(|e| e == "tmp");
            if is_entry || is_tmp {
                fs::remove_file(&path)?;
                if is_entry {
                    removed += 1;
                }
            }
        }
        Ok(removed)
    }

    fn entry_path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }
}

fn hex(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        s.push_str(&format!("{b:02x}"));
    }
    s
}
