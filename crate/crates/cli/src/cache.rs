use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "QTODA_CACHE_DIR";

/// Content-addressed JSON store; the file name is the SHA-256 of the key.
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn open(enabled: bool) -> Self {
        Self {
            dir: enabled.then(default_dir).flatten(),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn path(&self, key: &Value) -> Option<(PathBuf, String)> {
        let dir = self.dir.as_ref()?;
        let digest = hex::encode(Sha256::digest(key.to_string().as_bytes()));
        Some((dir.join(format!("{digest}.json")), digest))
    }

    /// `None` on a miss; corrupt or mismatched entries are removed.
    pub fn get(&self, key: &Value) -> Option<Value> {
        let (path, digest) = self.path(key)?;
        let text = fs::read_to_string(&path).ok()?;
        match serde_json::from_str::<Value>(&text) {
            Ok(entry) if entry.get("key") == Some(key) && entry.get("value").is_some() => {
                eprintln!("cache hit: {digest}");
                entry.get("value").cloned()
            }
            _ => {
                self.evict(&path);
                None
            }
        }
    }

    /// The decoder rejected a stored value.
    pub fn reject(&self, key: &Value) {
        if let Some((path, _)) = self.path(key) {
            self.evict(&path);
        }
    }

    fn evict(&self, path: &Path) {
        eprintln!("warning: evicting corrupt cache entry {}", path.display());
        let _ = fs::remove_file(path);
    }

    pub fn put(&self, key: &Value, value: &Value) -> Result<()> {
        let Some((path, _)) = self.path(key) else {
            return Ok(());
        };
        let dir = path.parent().expect("cache entries live in a directory");
        fs::create_dir_all(dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, json!({"key": key, "value": value}).to_string())?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    pub fn entries(&self) -> Result<Vec<PathBuf>> {
        let Some(dir) = &self.dir else {
            return Ok(Vec::new());
        };
        if !dir.exists() {
            return Ok(Vec::new());
        }
        let mut out: Vec<PathBuf> = fs::read_dir(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        out.sort();
        Ok(out)
    }

    /// Look up `key`, otherwise compute, store and return.
    pub fn get_or_compute<T>(
        &self,
        key: &Value,
        decode: impl Fn(&Value) -> Option<T>,
        encode: impl Fn(&T) -> Value,
        compute: impl FnOnce() -> Result<T>,
    ) -> Result<T> {
        if let Some(v) = self.get(key) {
            if let Some(x) = decode(&v) {
                return Ok(x);
            }
            self.reject(key);
        }
        let x = compute()?;
        if let Err(e) = self.put(key, &encode(&x)) {
            eprintln!("warning: could not write cache entry: {e:#}");
        }
        Ok(x)
    }
}

fn default_dir() -> Option<PathBuf> {
    if let Some(d) = std::env::var_os(CACHE_ENV) {
        return Some(PathBuf::from(d));
    }
    if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
        return Some(PathBuf::from(d).join("qtoda"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("qtoda"))
}
