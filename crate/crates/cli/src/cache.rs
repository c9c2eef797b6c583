use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use gengraph::Caps;
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;
use sha2::{Digest, Sha256};

use crate::ops::{Output, Request};

pub const ENV_VAR: &str = "GENGRAPH_CACHE_DIR";

/// Bumped whenever an algorithm change could alter a cached value.
pub const CODE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+r1");

#[derive(Debug, thiserror::Error)]
#[error("{path}: {source}")]
pub struct IoError {
    pub path: PathBuf,
    pub source: std::io::Error,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> IoError + '_ {
    move |source| IoError {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub request: Request,
    /// Caps that can change a result; `threads` is zeroed.
    pub caps: Caps,
    pub version: String,
}

impl CacheKey {
    pub fn new(request: &Request, caps: &Caps) -> CacheKey {
        CacheKey {
            request: request.clone(),
            caps: Caps {
                threads: 0,
                ..*caps
            },
            version: CODE_VERSION.to_string(),
        }
    }

    fn canonical(&self) -> String {
        serde_json::to_string(self).expect("keys serialize")
    }

    pub fn digest(&self) -> String {
        let hash = Sha256::digest(self.canonical().as_bytes());
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Deserialize)]
struct StoredEntry<'a> {
    key: CacheKey,
    #[allow(dead_code)]
    created_at: u64,
    #[serde(borrow)]
    value: &'a RawValue,
}

pub struct Cache {
    dir: PathBuf,
}

#[derive(Debug, Serialize)]
pub struct Stats {
    pub dir: PathBuf,
    pub entries: usize,
    pub bytes: u64,
}

#[derive(Debug, Serialize)]
pub struct AuditRow {
    pub file: String,
    pub op: String,
    pub matches: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Audit {
    pub checked: usize,
    pub mismatched: usize,
    pub rows: Vec<AuditRow>,
}

pub fn default_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(ENV_VAR) {
        return PathBuf::from(dir);
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(dir).join("gengraph");
    }
    if let Some(home) = std::env::var_os("HOME") {
        let home = PathBuf::from(home);
        if cfg!(target_os = "macos") {
            return home.join("Library/Caches/gengraph");
        }
        return home.join(".cache/gengraph");
    }
    if let Some(local) = std::env::var_os("LOCALAPPDATA") {
        return PathBuf::from(local).join("gengraph");
    }
    std::env::temp_dir().join("gengraph-cache")
}

fn serialize_value(output: &Output) -> String {
    serde_json::to_string(output).expect("outputs serialize")
}

impl Cache {
    pub fn new(dir: PathBuf) -> Cache {
        Cache { dir }
    }

    fn path_for(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.json", key.digest()))
    }

    fn entry_files(&self) -> Result<Vec<PathBuf>, IoError> {
        if !self.dir.exists() {
            return Ok(Vec::new());
        }
        let mut files = Vec::new();
        for entry in fs::read_dir(&self.dir).map_err(io_err(&self.dir))? {
            let path = entry.map_err(io_err(&self.dir))?.path();
            if path.extension().is_some_and(|e| e == "json") {
                files.push(path);
            }
        }
        files.sort();
        Ok(files)
    }

    /// `None` on a miss or an unreadable entry; corrupt entries are recomputed.
    pub fn get(&self, key: &CacheKey) -> Option<Output> {
        let text = fs::read_to_string(self.path_for(key)).ok()?;
        let entry: StoredEntry = serde_json::from_str(&text).ok()?;
        if entry.key != *key {
            return None;
        }
        serde_json::from_str(entry.value.get()).ok()
    }

    pub fn put(&self, key: &CacheKey, output: &Output) -> Result<(), IoError> {
        fs::create_dir_all(&self.dir).map_err(io_err(&self.dir))?;
        let created_at = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let body = format!(
            "{{\"key\":{},\"created_at\":{},\"value\":{}}}",
            key.canonical(),
            created_at,
            serialize_value(output)
        );
        let path = self.path_for(key);
        let tmp = self
            .dir
            .join(format!(".{}.{}.tmp", key.digest(), std::process::id()));
        let mut file = fs::File::create(&tmp).map_err(io_err(&tmp))?;
        file.write_all(body.as_bytes()).map_err(io_err(&tmp))?;
        file.sync_all().map_err(io_err(&tmp))?;
        fs::rename(&tmp, &path).map_err(io_err(&path))
    }

    pub fn stats(&self) -> Result<Stats, IoError> {
        let files = self.entry_files()?;
        let mut bytes = 0;
        for path in &files {
            bytes += fs::metadata(path).map_err(io_err(path))?.len();
        }
        Ok(Stats {
            dir: self.dir.clone(),
            entries: files.len(),
            bytes,
        })
    }

    pub fn clear(&self) -> Result<usize, IoError> {
        let files = self.entry_files()?;
        for path in &files {
            fs::remove_file(path).map_err(io_err(path))?;
        }
        Ok(files.len())
    }

    /// Recomputes up to `sample` entries (all when `None`) and compares the
    /// stored value byte for byte.
    pub fn audit(&self, sample: Option<usize>) -> Result<Audit, IoError> {
        let files = self.entry_files()?;
        let take = sample.unwrap_or(files.len());
        let mut rows = Vec::new();
        for path in files.iter().take(take) {
            let file = path
                .file_name()
                .map(|f| f.to_string_lossy().into_owned())
                .unwrap_or_default();
            let text = fs::read_to_string(path).map_err(io_err(path))?;
            let row = match serde_json::from_str::<StoredEntry>(&text) {
                Err(e) => AuditRow {
                    file,
                    op: String::new(),
                    matches: false,
                    detail: Some(format!("unreadable entry: {e}")),
                },
                Ok(entry) => {
                    let op = entry.key.request.op().to_string();
                    match entry.key.request.compute(&entry.key.caps) {
                        Ok(output) => {
                            let matches = serialize_value(&output) == entry.value.get();
                            AuditRow {
                                file,
                                op,
                                matches,
                                detail: (!matches).then(|| "value differs".to_string()),
                            }
                        }
                        Err(e) => AuditRow {
                            file,
                            op,
                            matches: false,
                            detail: Some(format!("recomputation failed: {e}")),
                        },
                    }
                }
            };
            rows.push(row);
        }
        Ok(Audit {
            checked: rows.len(),
            mismatched: rows.iter().filter(|r| !r.matches).count(),
            rows,
        })
    }
}
