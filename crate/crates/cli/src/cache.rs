use std::fs::{self, File, OpenOptions};
use std::path::{Path, PathBuf};

use symsq::wdvv::{initial_data_fingerprint, CacheError, InvariantStore};

use crate::CliError;

pub const ENV_VAR: &str = "SYMSQ_CACHE";
pub const DEFAULT_PATH: &str = ".symsq/invariants.cache";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoadStatus {
    Missing,
    Loaded { values: usize },
    Rejected(String),
}

impl std::fmt::Display for LoadStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadStatus::Missing => write!(f, "no cache file, starting empty"),
            LoadStatus::Loaded { values } => write!(f, "loaded {values} invariants"),
            LoadStatus::Rejected(why) => write!(f, "rejected ({why}), recomputing"),
        }
    }
}

/// An open cache: the file is locked (through a sibling `.lock` file, since
/// saving replaces the data file) until this value is dropped.
pub struct Cache {
    path: PathBuf,
    _lock: File,
    pub store: InvariantStore,
    pub status: LoadStatus,
}

impl Cache {
    pub fn open(path: &Path) -> Result<Self, CliError> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(|e| CliError::Compute(format!("cache directory {}: {e}", dir.display())))?;
        }
        let mut lock_name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
        lock_name.push(".lock");
        let lock_path = path.with_file_name(lock_name);
        let lock = OpenOptions::new()
            .create(true)
            .truncate(false)
            .write(true)
            .open(&lock_path)
            .map_err(|e| CliError::Compute(format!("cache lock {}: {e}", lock_path.display())))?;
        lock.lock().map_err(|e| CliError::Compute(format!("cache lock {}: {e}", lock_path.display())))?;

        let fp = initial_data_fingerprint();
        let existed = path.exists();
        let (store, status) = match InvariantStore::load(path, fp) {
            Ok(s) if !existed => (s, LoadStatus::Missing),
            Ok(s) => {
                let values = s.len();
                (s, LoadStatus::Loaded { values })
            }
            Err(e @ (CacheError::Stale { .. } | CacheError::Corrupt(_))) => (InvariantStore::new(), LoadStatus::Rejected(e.to_string())),
            Err(CacheError::Io(e)) => return Err(CliError::Compute(format!("reading cache {}: {e}", path.display()))),
        };
        Ok(Cache {
            path: path.to_path_buf(),
            _lock: lock,
            store,
            status,
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn save(&self, store: &InvariantStore) -> Result<(), CliError> {
        store
            .save(&self.path, initial_data_fingerprint())
            .map_err(|e| CliError::Compute(format!("writing cache {}: {e}", self.path.display())))
    }
}
