//! Line-delimited JSON store of minimum-distance results keyed by
//! `(q, n, generator string)`.
//!
//! Lookups only return exact entries. Cache problems never abort a run: a
//! corrupt line is skipped and an unwritable file turns the cache into an
//! in-memory one, both with a warning.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use log::warn;
use serde::{Deserialize, Serialize};

use crate::cyclic::{DistanceLookup, DistanceResult, Method, MuRecord};

pub const CACHE_FILE: &str = "distances.jsonl";
pub const CACHE_ENV: &str = "UPLAB_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub q: u64,
    pub n: usize,
    pub gen: String,
    pub dim: usize,
    pub d_lower: usize,
    pub d_upper: usize,
    pub exact: bool,
    pub method: Method,
    pub work: u64,
    pub version: String,
    pub ts: u64,
}

impl CacheEntry {
    pub fn new(q: u64, n: usize, gen: &str, dim: usize, d: &DistanceResult) -> CacheEntry {
        CacheEntry {
            q,
            n,
            gen: gen.to_string(),
            dim,
            d_lower: d.lower,
            d_upper: d.upper,
            exact: d.exact,
            method: d.method,
            work: d.work,
            version: env!("CARGO_PKG_VERSION").to_string(),
            ts: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |t| t.as_secs()),
        }
    }

    pub fn distance(&self) -> DistanceResult {
        DistanceResult {
            lower: self.d_lower,
            upper: self.d_upper,
            exact: self.exact,
            method: self.method,
            work: self.work,
        }
    }
}

type Key = (u64, usize, String);

#[derive(Debug, Default)]
pub struct DistanceCache {
    path: Option<PathBuf>,
    entries: HashMap<Key, CacheEntry>,
}

impl DistanceCache {
    pub fn in_memory() -> DistanceCache {
        DistanceCache::default()
    }

    /// Loads `path`; a missing file is an empty cache.
    pub fn open(path: &Path) -> DistanceCache {
        let mut cache = DistanceCache {
            path: Some(path.to_path_buf()),
            entries: HashMap::new(),
        };
        let file = match File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return cache,
            Err(e) => {
                warn!("cannot read cache {}: {e}; continuing without it", path.display());
                cache.path = None;
                return cache;
            }
        };
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = match line {
                Ok(l) => l,
                Err(e) => {
                    warn!("{}:{}: {e}; stopping read", path.display(), i + 1);
                    break;
                }
            };
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<CacheEntry>(&line) {
                Ok(e) => cache.insert(e),
                Err(e) => warn!("{}:{}: skipping corrupt cache line ({e})", path.display(), i + 1),
            }
        }
        cache
    }

    /// The file under `dir` named [`CACHE_FILE`].
    pub fn in_dir(dir: &Path) -> DistanceCache {
        DistanceCache::open(&dir.join(CACHE_FILE))
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    // Whether `e` would add nothing to what is stored.
    fn redundant(&self, e: &CacheEntry) -> bool {
        self.get(e.q, e.n, &e.gen)
            .is_some_and(|old| old.exact || (!e.exact && old.d_upper - old.d_lower <= e.d_upper - e.d_lower))
    }

    fn insert(&mut self, e: CacheEntry) {
        if !self.redundant(&e) {
            self.entries.insert((e.q, e.n, e.gen.clone()), e);
        }
    }

    pub fn get(&self, q: u64, n: usize, gen: &str) -> Option<&CacheEntry> {
        self.entries.get(&(q, n, gen.to_string()))
    }

    /// Stores `e` unless an entry at least as good is present.
    pub fn put(&mut self, e: CacheEntry) {
        if self.redundant(&e) {
            return;
        }
        if let Some(path) = self.path.clone() {
            let written = serde_json::to_string(&e)
                .map_err(std::io::Error::other)
                .and_then(|line| {
                    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                        std::fs::create_dir_all(dir)?;
                    }
                    let mut f = OpenOptions::new().create(true).append(true).open(&path)?;
                    writeln!(f, "{line}")
                });
            if let Err(err) = written {
                warn!("cannot write cache {}: {err}; continuing without it", path.display());
                self.path = None;
            }
        }
        self.insert(e);
    }

    /// Stores every freshly computed distance of a `mu` run.
    pub fn record_mu(&mut self, rec: &MuRecord) {
        for d in &rec.per_divisor {
            if !d.cached && d.distance.method != Method::BchOnly {
                self.put(CacheEntry::new(rec.q, rec.n, &d.gen, d.dim, &d.distance));
            }
        }
    }
}

impl DistanceLookup for DistanceCache {
    fn lookup(&self, q: u64, n: usize, gen: &str) -> Option<DistanceResult> {
        self.get(q, n, gen).filter(|e| e.exact).map(CacheEntry::distance)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::{mu, DistanceOptions};

    fn entry(gen: &str, lower: usize, upper: usize) -> CacheEntry {
        let d = DistanceResult {
            lower,
            upper,
            exact: lower == upper,
            method: Method::Exhaustive,
            work: 10,
        };
        CacheEntry::new(2, 7, gen, 4, &d)
    }

    #[test]
    fn put_then_get() {
        let dir = tempfile::tempdir().unwrap();
        let mut c = DistanceCache::in_dir(dir.path());
        let e = entry("1101", 3, 3);
        c.put(e.clone());
        c.put(e.clone());
        assert_eq!(c.get(2, 7, "1101"), Some(&e));
        let reread = DistanceCache::in_dir(dir.path());
        assert_eq!(reread.get(2, 7, "1101"), Some(&e));
        let text = std::fs::read_to_string(dir.path().join(CACHE_FILE)).unwrap();
        assert_eq!(text.lines().count(), 1);
    }

    #[test]
    fn brackets_are_replaced_by_better_entries() {
        let mut c = DistanceCache::in_memory();
        c.put(entry("1101", 2, 5));
        assert!(c.lookup(2, 7, "1101").is_none());
        c.put(entry("1101", 3, 4));
        assert_eq!(c.get(2, 7, "1101").unwrap().d_lower, 3);
        c.put(entry("1101", 3, 3));
        assert_eq!(c.lookup(2, 7, "1101").unwrap().lower, 3);
        c.put(entry("1101", 2, 5));
        assert!(c.get(2, 7, "1101").unwrap().exact);
    }

    #[test]
    fn corrupt_lines_are_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let good = serde_json::to_string(&entry("1011", 3, 3)).unwrap();
        std::fs::write(&path, format!("{{not json\n{good}\n\n{{\"q\":2}}\n")).unwrap();
        let c = DistanceCache::open(&path);
        assert_eq!(c.len(), 1);
        assert!(c.get(2, 7, "1011").is_some());
    }

    #[test]
    fn unwritable_path_degrades_to_memory() {
        let dir = tempfile::tempdir().unwrap();
        let blocker = dir.path().join("file");
        std::fs::write(&blocker, "x").unwrap();
        let mut c = DistanceCache::open(&blocker.join("sub").join("c.jsonl"));
        c.put(entry("1101", 3, 3));
        assert!(c.path().is_none());
        assert!(c.get(2, 7, "1101").is_some());
    }

    #[test]
    fn mu_reuses_cached_distances() {
        let dir = tempfile::tempdir().unwrap();
        let opts = DistanceOptions::default();
        let mut c = DistanceCache::in_dir(dir.path());
        let first = mu(17, 2, &opts, Some(&c)).unwrap();
        c.record_mu(&first);
        let c = DistanceCache::in_dir(dir.path());
        let second = mu(17, 2, &opts, Some(&c)).unwrap();
        assert_eq!((first.mu, first.witness.clone()), (second.mu, second.witness.clone()));
        let hits: Vec<_> = second.per_divisor.iter().filter(|d| d.cached).collect();
        assert!(!hits.is_empty());
        assert!(hits.iter().all(|d| d.distance.work == 0));
    }
}
