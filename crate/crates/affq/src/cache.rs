//! Persistent Hall-polynomial cache: one JSON record per line.
//!
//! Records are only ever added. A flush takes a sibling lock file, re-reads the
//! cache, merges, writes a temporary sibling and renames it over the original.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::thread;
use std::time::{Duration, SystemTime};

use affq_core::hall::{HallEngine, HallKey, HallRecord};
use affq_core::{HallPolynomial, Multisegment};
use serde::{Deserialize, Serialize};

pub const CACHE_VERSION: u32 = 1;
const TOOL: &str = concat!("affq ", env!("CARGO_PKG_VERSION"));
const LOCK_POLL: Duration = Duration::from_millis(10);
const LOCK_STALE_AFTER: Duration = Duration::from_secs(30);

#[derive(Debug, Serialize, Deserialize)]
struct Line {
    v: u32,
    n: usize,
    #[serde(rename = "W")]
    w: String,
    sub: String,
    quot: String,
    coeffs: Vec<i64>,
    q_samples: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tool: Option<String>,
}

impl Line {
    fn from_entry(key: &HallKey, record: &HallRecord) -> Self {
        Self {
            v: CACHE_VERSION,
            n: key.rank(),
            w: key.w.to_string(),
            sub: key.sub.to_string(),
            quot: key.quot.to_string(),
            coeffs: record.poly.coeffs().to_vec(),
            q_samples: record.samples.clone(),
            tool: Some(TOOL.to_string()),
        }
    }

    fn into_entry(self) -> Result<(HallKey, HallRecord), String> {
        let parse = |s: &str| Multisegment::parse(self.n, s).map_err(|e| e.to_string());
        let key = HallKey::new(parse(&self.w)?, parse(&self.sub)?, parse(&self.quot)?).map_err(|e| e.to_string())?;
        Ok((key, HallRecord { poly: HallPolynomial::from_coeffs(self.coeffs), samples: self.q_samples }))
    }
}

#[derive(Debug, Default)]
pub struct LoadStats {
    pub loaded: usize,
    pub stale: usize,
    pub corrupt: usize,
}

/// Cache contents plus the backing path, if any.
#[derive(Debug, Default)]
pub struct HallCache {
    path: Option<PathBuf>,
    entries: BTreeMap<HallKey, HallRecord>,
    dirty: bool,
}

impl HallCache {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Opens (or prepares to create) a cache file. Corrupt lines are reported to
    /// `warn` and skipped.
    pub fn open(path: impl Into<PathBuf>, warn: &mut dyn Write) -> io::Result<(Self, LoadStats)> {
        let path = path.into();
        let (entries, stats) = read_file(&path, warn)?;
        Ok((Self { path: Some(path), entries, dirty: false }, stats))
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

    pub fn get(&self, key: &HallKey) -> Option<&HallRecord> {
        self.entries.get(key)
    }

    pub fn entries(&self) -> &BTreeMap<HallKey, HallRecord> {
        &self.entries
    }

    pub fn put(&mut self, key: HallKey, record: HallRecord) -> &HallRecord {
        if self.entries.get(&key) != Some(&record) {
            self.entries.insert(key.clone(), record);
            self.dirty = true;
        }
        &self.entries[&key]
    }

    /// Offers every cached polynomial to the engine (verified there on first use).
    pub fn preload_into(&self, engine: &mut HallEngine) {
        for (k, r) in &self.entries {
            engine.preload(k.clone(), r.clone());
        }
    }

    /// Takes over everything the engine established.
    pub fn absorb(&mut self, engine: &HallEngine) {
        for (k, r) in engine.records() {
            self.put(k.clone(), r.clone());
        }
    }

    /// Writes the merged cache back. A no-op for in-memory caches.
    pub fn flush(&mut self, warn: &mut dyn Write) -> io::Result<()> {
        let Some(path) = self.path.clone() else {
            return Ok(());
        };
        if !self.dirty {
            return Ok(());
        }
        let _lock = FileLock::acquire(&path)?;
        let (mut merged, _) = read_file(&path, warn)?;
        // our records were verified or computed in this process, so they win
        for (k, r) in &self.entries {
            merged.insert(k.clone(), r.clone());
        }
        write_atomically(&path, &merged)?;
        self.entries = merged;
        self.dirty = false;
        Ok(())
    }
}

struct FileLock(PathBuf);

impl FileLock {
    fn acquire(path: &Path) -> io::Result<Self> {
        let mut name = path.as_os_str().to_owned();
        name.push(".lock");
        let lock = PathBuf::from(name);
        loop {
            match fs::OpenOptions::new().write(true).create_new(true).open(&lock) {
                Ok(_) => return Ok(Self(lock)),
                Err(e) if e.kind() == io::ErrorKind::AlreadyExists => {
                    // a crashed writer leaves its lock behind
                    let age = fs::metadata(&lock)
                        .and_then(|m| m.modified())
                        .ok()
                        .and_then(|t| SystemTime::now().duration_since(t).ok());
                    if age.is_some_and(|a| a > LOCK_STALE_AFTER) {
                        let _ = fs::remove_file(&lock);
                    } else {
                        thread::sleep(LOCK_POLL);
                    }
                }
                Err(e) => return Err(e),
            }
        }
    }
}

impl Drop for FileLock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

fn read_file(path: &Path, warn: &mut dyn Write) -> io::Result<(BTreeMap<HallKey, HallRecord>, LoadStats)> {
    let mut entries = BTreeMap::new();
    let mut stats = LoadStats::default();
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok((entries, stats)),
        Err(e) => return Err(e),
    };
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        // peek at the version before insisting on the full schema
        let version = serde_json::from_str::<serde_json::Value>(line).ok().and_then(|v| v.get("v").and_then(|x| x.as_u64()));
        if version.is_some() && version != Some(u64::from(CACHE_VERSION)) {
            stats.stale += 1;
            continue;
        }
        match serde_json::from_str::<Line>(line).map_err(|e| e.to_string()).and_then(Line::into_entry) {
            Ok((k, r)) => {
                entries.insert(k, r);
                stats.loaded += 1;
            }
            Err(e) => {
                stats.corrupt += 1;
                writeln!(warn, "warning: {}:{}: skipping corrupt cache line ({e})", path.display(), lineno + 1)?;
            }
        }
    }
    Ok((entries, stats))
}

fn write_atomically(path: &Path, entries: &BTreeMap<HallKey, HallRecord>) -> io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "cache".into());
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = io::BufWriter::new(fs::File::create(&tmp)?);
        for (k, r) in entries {
            let line = serde_json::to_string(&Line::from_entry(k, r)).map_err(io::Error::other)?;
            writeln!(f, "{line}")?;
        }
        f.into_inner().map_err(|e| e.into_error())?.sync_all()?;
    }
    fs::rename(&tmp, path)
}
