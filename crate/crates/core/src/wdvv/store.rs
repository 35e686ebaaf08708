use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::arith::{parse_rational, Rational};
use crate::gw::InvariantKey;

use super::relation::Known;
use super::Level;

const MAGIC: &str = "# symsq invariant cache v1";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache i/o: {0}")]
    Io(#[from] io::Error),
    #[error("cache was built from different initial data (fingerprint {found}, expected {expected})")]
    Stale { found: String, expected: String },
    #[error("cache is corrupt: {0}")]
    Corrupt(String),
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Reconstructed invariants plus the levels whose systems have been solved.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvariantStore {
    values: BTreeMap<InvariantKey, Rational>,
    solved: BTreeSet<Level>,
}

impl Known for InvariantStore {
    fn known(&self, key: &InvariantKey) -> Option<&Rational> {
        self.values.get(key)
    }
}

impl InvariantStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, key: &InvariantKey) -> Option<&Rational> {
        self.values.get(key)
    }

    pub fn values(&self) -> &BTreeMap<InvariantKey, Rational> {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_solved(&self, level: Level) -> bool {
        self.solved.contains(&level)
    }

    pub fn solved_levels(&self) -> impl Iterator<Item = &Level> {
        self.solved.iter()
    }

    /// Values are final: inserting a different value for a stored key panics.
    pub fn insert(&mut self, key: InvariantKey, value: Rational) {
        if let Some(old) = self.values.get(&key) {
            assert_eq!(old, &value, "stored invariant {key} revised");
            return;
        }
        self.values.insert(key, value);
    }

    pub fn mark_solved(&mut self, level: Level) {
        self.solved.insert(level);
    }

    /// Keys whose values differ between the two stores.
    pub fn conflicts(&self, other: &InvariantStore) -> Vec<(InvariantKey, Rational, Rational)> {
        other
            .values
            .iter()
            .filter_map(|(k, v)| match self.values.get(k) {
                Some(old) if old != v => Some((*k, old.clone(), v.clone())),
                _ => None,
            })
            .collect()
    }

    /// Union of values and solved levels. Call `conflicts` first: a differing
    /// value panics like `insert`.
    pub fn merge(&mut self, other: &InvariantStore) {
        for (k, v) in &other.values {
            self.insert(*k, v.clone());
        }
        self.solved.extend(other.solved.iter().copied());
    }

    fn body(&self) -> String {
        let mut s = String::new();
        for (d, n) in &self.solved {
            s.push_str(&format!("level {d},{n}\n"));
        }
        for (k, v) in &self.values {
            s.push_str(&format!("{k} = {v}\n"));
        }
        s
    }

    /// Full file contents: header with fingerprint and body checksum, then records.
    pub fn serialize(&self, fingerprint: &str) -> String {
        let body = self.body();
        format!(
            "{MAGIC}\n# fingerprint {fingerprint}\n# checksum {}\n{body}",
            sha256_hex(body.as_bytes())
        )
    }

    pub fn deserialize(text: &str, fingerprint: &str) -> Result<Self, CacheError> {
        let corrupt = |m: &str| CacheError::Corrupt(m.to_string());
        let mut lines = text.split_inclusive('\n');
        if lines.next().map(str::trim_end) != Some(MAGIC) {
            return Err(corrupt("missing header"));
        }
        let found = lines
            .next()
            .and_then(|l| l.trim_end().strip_prefix("# fingerprint "))
            .ok_or_else(|| corrupt("missing fingerprint"))?;
        if found != fingerprint {
            return Err(CacheError::Stale {
                found: found.to_string(),
                expected: fingerprint.to_string(),
            });
        }
        let checksum = lines
            .next()
            .and_then(|l| l.trim_end().strip_prefix("# checksum "))
            .ok_or_else(|| corrupt("missing checksum"))?
            .to_string();
        let body: String = lines.collect();
        if sha256_hex(body.as_bytes()) != checksum {
            return Err(corrupt("checksum mismatch"));
        }
        let mut store = Self::new();
        for line in body.lines() {
            if let Some(level) = line.strip_prefix("level ") {
                let (d, n) = level.split_once(',').ok_or_else(|| corrupt(line))?;
                let d = d.parse().map_err(|_| corrupt(line))?;
                let n = n.parse().map_err(|_| corrupt(line))?;
                store.solved.insert((d, n));
            } else {
                let (k, v) = line.split_once(" = ").ok_or_else(|| corrupt(line))?;
                let key: InvariantKey = k.parse().map_err(|_| corrupt(line))?;
                let value = parse_rational(v).map_err(|_| corrupt(line))?;
                store.values.insert(key, value);
            }
        }
        Ok(store)
    }

    /// Missing file gives an empty store.
    pub fn load(path: &Path, fingerprint: &str) -> Result<Self, CacheError> {
        match fs::read_to_string(path) {
            Ok(text) => Self::deserialize(&text, fingerprint),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(Self::new()),
            Err(e) => Err(e.into()),
        }
    }

    /// Writes a sibling temp file and renames it over `path`.
    pub fn save(&self, path: &Path, fingerprint: &str) -> Result<(), CacheError> {
        let mut tmp_name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
        tmp_name.push(".tmp");
        let tmp = path.with_file_name(tmp_name);
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(self.serialize(fingerprint).as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }
}
