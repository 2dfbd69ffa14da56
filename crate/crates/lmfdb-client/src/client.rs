use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use crate::remote;
use crate::{CurveRecord, LmfdbError, Source};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "IWDEFECT_LMFDB_CACHE";
pub const DEFAULT_BASE_URL: &str = "https://www.lmfdb.org";
/// Minimum spacing between two remote requests.
pub const MIN_REQUEST_INTERVAL: Duration = Duration::from_millis(1000);

#[derive(Debug, Clone)]
pub struct ClientConfig {
    pub cache_dir: PathBuf,
    /// Read-only directories of fixture records, searched after the cache.
    pub fixture_dirs: Vec<PathBuf>,
    pub base_url: String,
    pub offline: bool,
    pub min_interval: Duration,
    pub timeout: Duration,
}

impl ClientConfig {
    /// Cache directory from [`CACHE_ENV`], else `$XDG_CACHE_HOME/iwdefect/lmfdb`,
    /// else `$HOME/.cache/iwdefect/lmfdb`.
    pub fn from_env(offline: bool) -> Self {
        let cache_dir = std::env::var_os(CACHE_ENV)
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("XDG_CACHE_HOME").map(|d| PathBuf::from(d).join("iwdefect/lmfdb")))
            .or_else(|| std::env::var_os("HOME").map(|d| PathBuf::from(d).join(".cache/iwdefect/lmfdb")))
            .unwrap_or_else(|| PathBuf::from(".iwdefect-cache"));
        Self {
            cache_dir,
            fixture_dirs: Vec::new(),
            base_url: DEFAULT_BASE_URL.to_string(),
            offline,
            min_interval: MIN_REQUEST_INTERVAL,
            timeout: Duration::from_secs(30),
        }
    }
}

/// Cache-first client. Remote requests are serialized and spaced by
/// `min_interval`; cache writes are exclusive.
pub struct Client {
    config: ClientConfig,
    last_request: Mutex<Option<Instant>>,
    write_lock: Mutex<()>,
}

fn check_label(label: &str) -> Result<(), LmfdbError> {
    let ok = !label.is_empty()
        && label.len() <= 40
        && label.chars().all(|c| c.is_ascii_alphanumeric() || c == '.' || c == '-')
        && !label.starts_with('.');
    if ok {
        Ok(())
    } else {
        Err(LmfdbError::MalformedLabel(label.to_string()))
    }
}

impl Client {
    pub fn new(config: ClientConfig) -> Self {
        Self { config, last_request: Mutex::new(None), write_lock: Mutex::new(()) }
    }

    pub fn config(&self) -> &ClientConfig {
        &self.config
    }

    pub fn is_offline(&self) -> bool {
        self.config.offline
    }

    fn read(path: &Path, source: Source) -> Result<Option<CurveRecord>, LmfdbError> {
        match std::fs::read_to_string(path) {
            Ok(text) => {
                let mut rec: CurveRecord = serde_json::from_str(&text)
                    .map_err(|e| LmfdbError::Cache(format!("{}: {e}", path.display())))?;
                rec.source = source;
                Ok(Some(rec))
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(LmfdbError::Cache(format!("{}: {e}", path.display()))),
        }
    }

    /// Cached or fixture record, without touching the network.
    pub fn lookup_local(&self, label: &str) -> Result<Option<CurveRecord>, LmfdbError> {
        check_label(label)?;
        let file = format!("{label}.json");
        if let Some(r) = Self::read(&self.config.cache_dir.join(&file), Source::Cache)? {
            return Ok(Some(r));
        }
        for dir in &self.config.fixture_dirs {
            if let Some(r) = Self::read(&dir.join(&file), Source::Fixture)? {
                return Ok(Some(r));
            }
        }
        Ok(None)
    }

    /// Record for `label`: cache, then fixtures, then the remote API (the
    /// result is cached). Offline clients fail on a miss.
    pub fn fetch_by_label(&self, label: &str) -> Result<CurveRecord, LmfdbError> {
        if let Some(r) = self.lookup_local(label)? {
            return Ok(r);
        }
        if self.config.offline {
            return Err(LmfdbError::Offline(label.to_string()));
        }
        let mut rec = {
            let mut last = self.last_request.lock().unwrap();
            if let Some(t) = *last {
                let wait = self.config.min_interval.saturating_sub(t.elapsed());
                std::thread::sleep(wait);
            }
            let agent = ureq::AgentBuilder::new().timeout(self.config.timeout).build();
            let out = remote::fetch(&agent, &self.config.base_url, label);
            *last = Some(Instant::now());
            out?
        };
        rec.retrieved_at = Some(chrono::Utc::now().to_rfc3339());
        self.store(&rec)?;
        rec.source = Source::Remote;
        Ok(rec)
    }

    /// Writes a record into the cache.
    pub fn store(&self, rec: &CurveRecord) -> Result<(), LmfdbError> {
        check_label(&rec.label)?;
        let _guard = self.write_lock.lock().unwrap();
        let err = |e: std::io::Error| LmfdbError::Cache(e.to_string());
        std::fs::create_dir_all(&self.config.cache_dir).map_err(err)?;
        let mut stored = rec.clone();
        stored.source = Source::Cache;
        let text = serde_json::to_string_pretty(&stored).map_err(|e| LmfdbError::Cache(e.to_string()))?;
        let path = self.config.cache_dir.join(format!("{}.json", rec.label));
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, text).map_err(err)?;
        std::fs::rename(&tmp, &path).map_err(err)
    }
}
