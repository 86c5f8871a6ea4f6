//! Append-only journal of solved values, one JSON record per line.
//!
//! Loading folds the journal into the tightest known facts per `N`: an exact
//! value replaces any bound, lower bounds only rise and upper bounds only
//! fall.

use super::{SolverResult, Status};
use crate::sets::{is_square_difference_free, IndicatorSet};
use crate::Result;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

/// Environment variable overriding the default journal path.
pub const CACHE_ENV: &str = "SQDIFF_CACHE";
const DEFAULT_PATH: &str = "sqdiff-cache.jsonl";

/// Journal path: the flag if given, else the environment, else the default.
pub fn cache_path(flag: Option<&Path>) -> PathBuf {
    flag.map(Path::to_path_buf)
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_PATH))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub n: u64,
    pub value: u64,
    pub status: Status,
    /// Compact set encoding; absent for upper bounds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub version: String,
    pub ms: u64,
}

impl CacheRecord {
    pub fn from_result(result: &SolverResult, ms: u64) -> Self {
        let witness = match result.status {
            Status::UpperBound => None,
            _ => result.witness.as_ref().map(IndicatorSet::to_compact),
        };
        Self {
            n: result.n,
            value: result.value,
            status: result.status,
            witness,
            version: env!("CARGO_PKG_VERSION").to_string(),
            ms,
        }
    }

    pub fn witness_set(&self) -> Option<IndicatorSet> {
        self.witness
            .as_deref()
            .and_then(|w| IndicatorSet::from_compact(w).ok())
    }

    /// Checks the record against its own witness.
    pub fn validate(&self) -> std::result::Result<(), String> {
        match self.status {
            Status::UpperBound => Ok(()),
            Status::Exact | Status::LowerBound => {
                let text = self.witness.as_deref().ok_or("missing witness")?;
                let set = IndicatorSet::from_compact(text).map_err(|e| e.to_string())?;
                if set.capacity() != self.n {
                    return Err(format!(
                        "witness capacity {} != n {}",
                        set.capacity(),
                        self.n
                    ));
                }
                if set.len() != self.value {
                    return Err(format!(
                        "witness size {} != value {}",
                        set.len(),
                        self.value
                    ));
                }
                if !is_square_difference_free(&set) {
                    return Err("witness has a square difference".into());
                }
                Ok(())
            }
        }
    }
}

/// Tightest known records per `N`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SolverCache {
    entries: BTreeMap<(u64, Status), CacheRecord>,
}

impl SolverCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reads a journal; a missing file is an empty cache. Malformed or
    /// inconsistent lines are logged and skipped.
    pub fn load(path: &Path) -> Result<Self> {
        let mut cache = Self::new();
        let file = match File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e.into()),
        };
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<CacheRecord>(&line) {
                Ok(record) => {
                    if let Err(why) = record.validate() {
                        log::warn!("{}:{}: skipping record: {why}", path.display(), i + 1);
                    } else {
                        cache.merge(record);
                    }
                }
                Err(e) => log::warn!("{}:{}: skipping line: {e}", path.display(), i + 1),
            }
        }
        Ok(cache)
    }

    /// Folds one record in; returns whether anything tightened.
    pub fn merge(&mut self, record: CacheRecord) -> bool {
        let n = record.n;
        if self.entries.contains_key(&(n, Status::Exact)) {
            return false;
        }
        let key = (n, record.status);
        let better = match (record.status, self.entries.get(&key)) {
            (_, None) => true,
            (Status::LowerBound, Some(old)) => record.value > old.value,
            (Status::UpperBound, Some(old)) => record.value < old.value,
            (Status::Exact, Some(_)) => false,
        };
        if !better {
            return false;
        }
        if record.status == Status::Exact {
            self.entries.remove(&(n, Status::LowerBound));
            self.entries.remove(&(n, Status::UpperBound));
        }
        self.entries.insert(key, record);
        true
    }

    /// Appends a record to the journal file.
    pub fn append(path: &Path, record: &CacheRecord) -> Result<()> {
        let mut file = OpenOptions::new().create(true).append(true).open(path)?;
        writeln!(file, "{}", serde_json::to_string(record)?)?;
        Ok(())
    }

    pub fn get(&self, n: u64, status: Status) -> Option<&CacheRecord> {
        self.entries.get(&(n, status))
    }

    pub fn exact(&self, n: u64) -> Option<&CacheRecord> {
        self.get(n, Status::Exact)
    }

    /// Best witness on record for `n`: exact first, then lower bound.
    pub fn best_witness(&self, n: u64) -> Option<IndicatorSet> {
        self.exact(n)
            .or_else(|| self.get(n, Status::LowerBound))
            .and_then(CacheRecord::witness_set)
    }

    pub fn records(&self) -> impl Iterator<Item = &CacheRecord> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Writes the merged contents as a fresh journal.
    pub fn write(&self, path: &Path) -> Result<()> {
        let mut file = File::create(path)?;
        for record in self.records() {
            writeln!(file, "{}", serde_json::to_string(record)?)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{solve_exact_d, Budget};

    fn record(n: u64, value: u64, status: Status) -> CacheRecord {
        let witness = match status {
            Status::UpperBound => None,
            _ => {
                let set = crate::solver::greedy_square(n).unwrap();
                let set =
                    IndicatorSet::from_members(n, set.members().take(value as usize)).unwrap();
                Some(set.to_compact())
            }
        };
        CacheRecord {
            n,
            value,
            status,
            witness,
            version: "test".into(),
            ms: 0,
        }
    }

    #[test]
    fn merge_only_tightens() {
        let mut c = SolverCache::new();
        assert!(c.merge(record(50, 5, Status::LowerBound)));
        assert!(!c.merge(record(50, 4, Status::LowerBound)));
        assert!(c.merge(record(50, 6, Status::LowerBound)));
        assert!(c.merge(record(50, 20, Status::UpperBound)));
        assert!(!c.merge(record(50, 25, Status::UpperBound)));
        assert!(c.merge(record(50, 7, Status::Exact)));
        assert_eq!(c.len(), 1);
        assert!(!c.merge(record(50, 8, Status::LowerBound)));
    }

    #[test]
    fn journal_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        let r = solve_exact_d(30, Budget::unlimited()).unwrap();
        SolverCache::append(&path, &CacheRecord::from_result(&r, 3)).unwrap();
        SolverCache::append(&path, &record(40, 9, Status::UpperBound)).unwrap();
        std::fs::OpenOptions::new()
            .append(true)
            .open(&path)
            .unwrap()
            .write_all(b"not json\n")
            .unwrap();
        let mut bad = record(40, 3, Status::LowerBound);
        bad.value = 99;
        SolverCache::append(&path, &bad).unwrap();
        let cache = SolverCache::load(&path).unwrap();
        assert_eq!(cache.len(), 2);
        assert_eq!(cache.exact(30).unwrap().value, r.value);
        assert_eq!(cache.best_witness(30), r.witness);
        let line = std::fs::read_to_string(&path).unwrap();
        assert!(!line.lines().nth(1).unwrap().contains("witness"));
    }

    #[test]
    fn missing_file_is_empty() {
        let dir = tempfile::tempdir().unwrap();
        assert!(SolverCache::load(&dir.path().join("none"))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn path_resolution_prefers_flag() {
        assert_eq!(
            cache_path(Some(Path::new("x.jsonl"))),
            PathBuf::from("x.jsonl")
        );
    }
}
