//! Disk-backed module store keyed by a content hash of (label, format version).

use std::fs;
use std::path::{Path, PathBuf};
use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use fusion_core::store::{decode_module, encode_module, ModuleSource, FORMAT_VERSION};
use fusion_core::{Composition, FusionError, FusionModule, Result};
use sha2::{Digest, Sha256};

pub fn cache_key(a: &Composition) -> String {
    let mut h = Sha256::new();
    h.update(format!("fusion-module v{FORMAT_VERSION} a={a}").as_bytes());
    format!("{:x}", h.finalize())
}

#[derive(Default)]
pub struct CacheStats {
    pub hits: AtomicUsize,
    pub builds: AtomicUsize,
    /// Files present but unreadable, stale or for another label.
    pub rejected: AtomicUsize,
}

type Slot = Arc<Mutex<Option<Arc<FusionModule>>>>;

pub struct DiskStore {
    dir: Option<PathBuf>,
    /// One slot per label, so concurrent requests for it build once.
    slots: Mutex<HashMap<Composition, Slot>>,
    temp_counter: AtomicUsize,
    pub stats: CacheStats,
}

impl DiskStore {
    /// A store without a directory only memoizes in memory.
    pub fn new(dir: Option<PathBuf>) -> std::io::Result<Self> {
        if let Some(d) = &dir {
            fs::create_dir_all(d)?;
        }
        Ok(DiskStore {
            dir,
            slots: Mutex::new(HashMap::new()),
            temp_counter: AtomicUsize::new(0),
            stats: CacheStats::default(),
        })
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn path_for(&self, a: &Composition) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.fm", cache_key(a))))
    }

    fn load(&self, a: &Composition) -> Option<FusionModule> {
        let text = fs::read_to_string(self.path_for(a)?).ok()?;
        match decode_module(&text) {
            Ok(m) if m.composition() == a => Some(m),
            _ => {
                self.stats.rejected.fetch_add(1, Ordering::Relaxed);
                None
            }
        }
    }

    fn save(&self, m: &FusionModule) -> Result<()> {
        let Some(path) = self.path_for(m.composition()) else {
            return Ok(());
        };
        // Write then rename, so readers never see a partial file.
        let unique = self.temp_counter.fetch_add(1, Ordering::Relaxed);
        let tmp = path.with_extension(format!("tmp.{}.{unique}", std::process::id()));
        fs::write(&tmp, encode_module(m))
            .and_then(|_| fs::rename(&tmp, &path))
            .map_err(|e| FusionError::Cache(format!("{}: {e}", path.display())))
    }

    /// Build from scratch, bypassing both layers.
    pub fn fresh(&self, a: &Composition) -> Result<FusionModule> {
        FusionModule::build(a)
    }
}

impl ModuleSource for DiskStore {
    fn module(&self, a: &Composition) -> Result<Arc<FusionModule>> {
        let slot = self.slots.lock().unwrap().entry(a.clone()).or_default().clone();
        let mut held = slot.lock().unwrap();
        if let Some(m) = held.as_ref() {
            return Ok(m.clone());
        }
        let m = match self.load(a) {
            Some(m) => {
                self.stats.hits.fetch_add(1, Ordering::Relaxed);
                m
            }
            None => {
                let m = FusionModule::build(a)?;
                self.stats.builds.fetch_add(1, Ordering::Relaxed);
                self.save(&m)?;
                m
            }
        };
        let m = Arc::new(m);
        *held = Some(m.clone());
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fusion_core::GradedModule;

    #[test]
    fn warm_and_stale_entries() {
        let dir = tempfile::tempdir().unwrap();
        let a: Composition = "2,3".parse().unwrap();
        let cold = DiskStore::new(Some(dir.path().to_path_buf())).unwrap();
        let m1 = cold.module(&a).unwrap();
        assert_eq!(cold.stats.builds.load(Ordering::Relaxed), 1);
        let warm = DiskStore::new(Some(dir.path().to_path_buf())).unwrap();
        let m2 = warm.module(&a).unwrap();
        assert_eq!(warm.stats.hits.load(Ordering::Relaxed), 1);
        assert_eq!(m1.character(), m2.character());

        let path = warm.path_for(&a).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, text.replacen("fusion-module 1", "fusion-module 99", 1)).unwrap();
        let stale = DiskStore::new(Some(dir.path().to_path_buf())).unwrap();
        stale.module(&a).unwrap();
        assert_eq!(stale.stats.rejected.load(Ordering::Relaxed), 1);
        assert_eq!(stale.stats.builds.load(Ordering::Relaxed), 1);
    }
}
