use std::collections::{BTreeMap, HashMap};
use std::fs::{self, File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use wflag_core::{KlTable, PolyZ, WeylElement, WeylGroup};

pub const CACHE_VERSION: u32 = 1;

/// On-disk KL memo. Keys are `"<u-word>|<w-word>"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheFile {
    pub version: u32,
    pub group: String,
    pub entries: BTreeMap<String, PolyZ>,
}

impl CacheFile {
    pub fn empty(group: &str) -> Self {
        CacheFile {
            version: CACHE_VERSION,
            group: group.to_string(),
            entries: BTreeMap::new(),
        }
    }
}

/// Exclusive handle on a cache path; the lock file is removed on drop.
pub struct CacheHandle {
    path: PathBuf,
    lock: PathBuf,
    group: String,
}

impl CacheHandle {
    /// Fails fast when another writer holds `<path>.lock`.
    pub fn acquire(path: &Path, group: &str) -> io::Result<Self> {
        let mut lock = path.as_os_str().to_owned();
        lock.push(".lock");
        let lock = PathBuf::from(lock);
        let mut f = OpenOptions::new().write(true).create_new(true).open(&lock).map_err(|e| {
            if e.kind() == io::ErrorKind::AlreadyExists {
                io::Error::new(e.kind(), format!("cache {} is locked by another process", path.display()))
            } else {
                e
            }
        })?;
        writeln!(f, "{}", std::process::id())?;
        Ok(CacheHandle {
            path: path.to_path_buf(),
            lock,
            group: group.to_string(),
        })
    }

    /// Missing, unreadable, stale-version or other-group files load as empty.
    pub fn load(&self) -> CacheFile {
        fs::read_to_string(&self.path)
            .ok()
            .and_then(|s| serde_json::from_str::<CacheFile>(&s).ok())
            .filter(|c| c.version == CACHE_VERSION && c.group == self.group)
            .unwrap_or_else(|| CacheFile::empty(&self.group))
    }

    pub fn save(&self, cache: &CacheFile) -> io::Result<()> {
        let mut tmp = self.path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        {
            let mut f = File::create(&tmp)?;
            serde_json::to_writer_pretty(&mut f, cache)?;
            f.write_all(b"\n")?;
        }
        fs::rename(tmp, &self.path)
    }
}

impl Drop for CacheHandle {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.lock);
    }
}

/// Install every cached column; entries that fail to parse are skipped.
pub fn seed_table(table: &KlTable, cache: &CacheFile) {
    let g = table.group();
    let mut columns: HashMap<WeylElement, HashMap<WeylElement, PolyZ>> = HashMap::new();
    for (key, p) in &cache.entries {
        let Some((u, w)) = key.split_once('|') else { continue };
        let (Ok(u), Ok(w)) = (g.parse(u), g.parse(w)) else { continue };
        columns.entry(w).or_default().insert(u, p.clone());
    }
    for (w, col) in columns {
        table.install_column(&w, col);
    }
}

pub fn collect_table(group: &WeylGroup, table: &KlTable, cache: &mut CacheFile) {
    for (u, w, p) in table.computed_pairs() {
        let key = format!("{}|{}", group.word_string(&u), group.word_string(&w));
        cache.entries.insert(key, p);
    }
}
