//! On-disk tables of counts, one JSON file per instance.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::ambient::Instance;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    BruteForce,
    ClosedForm,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CountEntry {
    pub key: Vec<String>,
    pub value: String,
    pub provenance: Provenance,
}

impl CountEntry {
    pub fn new(key: &[&str], value: impl ToString, provenance: Provenance) -> Self {
        CountEntry { key: key.iter().map(|s| s.to_string()).collect(), value: value.to_string(), provenance }
    }
}

/// Counts for one instance, kept sorted by key and provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTable {
    pub instance: Instance,
    pub entries: Vec<CountEntry>,
}

impl CountTable {
    pub fn new(instance: Instance) -> Self {
        CountTable { instance, entries: Vec::new() }
    }

    pub fn file_name(instance: &Instance) -> String {
        match instance {
            Instance::Sets { n } => format!("sets-n{n}.json"),
            Instance::ChainRing { p, k, n } => format!("chain-ring-p{p}-k{k}-n{n}.json"),
        }
    }

    pub fn path(dir: &Path, instance: &Instance) -> PathBuf {
        dir.join(Self::file_name(instance))
    }

    /// The stored table, or an empty one if there is no file yet.
    pub fn load(dir: &Path, instance: &Instance) -> Result<Self> {
        let path = Self::path(dir, instance);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Self::new(instance.clone())),
            Err(e) => return Err(e.into()),
        };
        let table: CountTable =
            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        if &table.instance != instance {
            return Err(Error::CacheConflict(format!("{} holds counts for {}", path.display(), table.instance)));
        }
        let mut checked = Self::new(instance.clone());
        for e in table.entries {
            checked.insert(e)?;
        }
        Ok(checked)
    }

    pub fn get(&self, key: &[String], provenance: Provenance) -> Option<&CountEntry> {
        self.entries.iter().find(|e| e.key == key && e.provenance == provenance)
    }

    /// Adds an entry; any stored entry for the same key must carry the same value.
    pub fn insert(&mut self, entry: CountEntry) -> Result<()> {
        if let Some(other) = self.entries.iter().find(|e| e.key == entry.key && e.value != entry.value) {
            return Err(Error::CacheConflict(format!(
                "{:?}: {} ({:?}) vs {} ({:?})",
                entry.key, other.value, other.provenance, entry.value, entry.provenance
            )));
        }
        if let Err(pos) = self.entries.binary_search_by(|e| (&e.key, e.provenance).cmp(&(&entry.key, entry.provenance)))
        {
            self.entries.insert(pos, entry);
        }
        Ok(())
    }

    /// Writes the table by atomic replacement of its file.
    pub fn save(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        let text = serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))?;
        tmp.write_all(text.as_bytes())?;
        tmp.write_all(b"\n")?;
        tmp.persist(Self::path(dir, &self.instance)).map_err(|e| Error::Io(e.to_string()))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_conflicts() {
        let dir = tempfile::tempdir().unwrap();
        let inst = Instance::chain_ring(2, 2, 2);
        let mut t = CountTable::load(dir.path(), &inst).unwrap();
        assert!(t.entries.is_empty());
        t.insert(CountEntry::new(&["count_sub", "(2,1)", "(1)"], 3, Provenance::BruteForce)).unwrap();
        t.insert(CountEntry::new(&["count_sub", "(2,1)", "(1)"], 3, Provenance::BruteForce)).unwrap();
        assert_eq!(t.entries.len(), 1);
        assert!(t.insert(CountEntry::new(&["count_sub", "(2,1)", "(1)"], 4, Provenance::ClosedForm)).is_err());
        t.save(dir.path()).unwrap();
        assert_eq!(CountTable::load(dir.path(), &inst).unwrap(), t);
        assert!(CountTable::load(dir.path(), &Instance::sets(3)).unwrap().entries.is_empty());
        let key: Vec<String> = ["count_sub", "(2,1)", "(1)"].iter().map(|s| s.to_string()).collect();
        assert_eq!(t.get(&key, Provenance::BruteForce).unwrap().value, "3");
    }
}
