//! On-disk results, stamped with the engine version.
//!
//! `A_{g,r}(z)` is stored per `(g, r)`, extracted results per `(g, r, d mod r)`.
//! Unreadable or stale entries are treated as misses and overwritten.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use census_core::{FactoredRat, KacResult};
use serde_json::{json, Value};

use crate::json::{factored_from_json, factored_to_json, kac_from_json, kac_to_json, to_pretty};
use crate::ENGINE_VERSION;

pub struct Cache {
    dir: PathBuf,
    lock: Mutex<()>,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into(), lock: Mutex::new(()) }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn rational_path(&self, g: usize, r: u32) -> PathBuf {
        self.dir.join(format!("kac-g{g}-r{r}.json"))
    }

    fn result_path(&self, g: usize, r: u32, class: u32) -> PathBuf {
        self.dir.join(format!("kac-g{g}-r{r}-d{class}.json"))
    }

    fn read(&self, path: &Path) -> Option<Value> {
        let _guard = self.lock.lock().unwrap_or_else(|e| e.into_inner());
        let text = fs::read_to_string(path).ok()?;
        let v: Value = serde_json::from_str(&text).ok()?;
        if v.get("engine").and_then(Value::as_str) != Some(ENGINE_VERSION) {
            log::info!("stale cache entry {}", path.display());
            return None;
        }
        v.get("payload").cloned()
    }

    /// Writes through a temporary file so readers never see half an entry.
    fn write(&self, path: &Path, payload: Value) -> std::io::Result<()> {
        let _guard = self.lock.lock().unwrap_or_else(|e| e.into_inner());
        fs::create_dir_all(&self.dir)?;
        let tmp = path.with_extension("json.tmp");
        let mut f = fs::File::create(&tmp)?;
        f.write_all(to_pretty(&json!({ "engine": ENGINE_VERSION, "payload": payload })).as_bytes())?;
        f.sync_all()?;
        fs::rename(tmp, path)
    }

    pub fn load_rational(&self, g: usize, r: u32) -> Option<FactoredRat> {
        factored_from_json(&self.read(&self.rational_path(g, r))?).ok()
    }

    pub fn store_rational(&self, g: usize, r: u32, f: &FactoredRat) -> std::io::Result<()> {
        self.write(&self.rational_path(g, r), factored_to_json(f))
    }

    pub fn load_result(&self, g: usize, r: u32, class: u32) -> Option<KacResult> {
        let k = kac_from_json(&self.read(&self.result_path(g, r, class))?).ok()?;
        (k.genus == g && k.rank == r && k.degree_class == class).then_some(k)
    }

    pub fn store_result(&self, k: &KacResult) -> std::io::Result<()> {
        self.write(&self.result_path(k.genus, k.rank, k.degree_class), kac_to_json(k))
    }
}
