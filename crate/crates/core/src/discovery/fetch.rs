use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;
use url::Url;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FetchResponse {
    pub url: Url,
    pub status: u16,
    pub content_type: Option<String>,
    pub body: Vec<u8>,
}

impl FetchResponse {
    pub fn is_ok(&self) -> bool {
        (200..300).contains(&self.status)
    }

    pub fn not_found(url: &Url) -> Self {
        FetchResponse {
            url: url.clone(),
            status: 404,
            content_type: None,
            body: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FetchError {
    /// The page could not be retrieved; the crawl goes on.
    #[error("fetch {url} failed: {reason}")]
    Failed { url: String, reason: String },
    /// The fetcher itself is unusable; the crawl stops.
    #[error("fetcher unavailable: {0}")]
    Unavailable(String),
}

pub trait PageFetcher: Send + Sync {
    fn fetch(&self, url: &Url) -> Result<FetchResponse, FetchError>;
}

#[derive(Debug, Deserialize)]
struct IndexEntry {
    url: String,
    #[serde(default = "ok")]
    status: u16,
    file: Option<String>,
    content_type: Option<String>,
}

fn ok() -> u16 {
    200
}

/// Serves recorded responses. `index.json` in the fixture directory lists
/// `{url, status, file, content_type}` entries; `file` is relative to the
/// directory. URLs not listed answer 404.
#[derive(Debug)]
pub struct FixtureFetcher {
    dir: PathBuf,
    pages: HashMap<String, (u16, Option<String>, Option<String>)>,
}

impl FixtureFetcher {
    pub fn load(dir: &Path) -> Result<Self, FetchError> {
        let index = dir.join("index.json");
        let text = fs::read_to_string(&index)
            .map_err(|e| FetchError::Unavailable(format!("{}: {e}", index.display())))?;
        let entries: Vec<IndexEntry> = serde_json::from_str(&text)
            .map_err(|e| FetchError::Unavailable(format!("{}: {e}", index.display())))?;
        let mut pages = HashMap::new();
        for e in entries {
            let url = Url::parse(&e.url)
                .map_err(|err| FetchError::Unavailable(format!("{}: {err}", e.url)))?;
            pages.insert(url.to_string(), (e.status, e.file, e.content_type));
        }
        Ok(FixtureFetcher {
            dir: dir.to_owned(),
            pages,
        })
    }
}

impl PageFetcher for FixtureFetcher {
    fn fetch(&self, url: &Url) -> Result<FetchResponse, FetchError> {
        let Some((status, file, content_type)) = self.pages.get(url.as_str()) else {
            return Ok(FetchResponse::not_found(url));
        };
        let body = match file {
            Some(f) => fs::read(self.dir.join(f)).map_err(|e| FetchError::Failed {
                url: url.to_string(),
                reason: e.to_string(),
            })?,
            None => Vec::new(),
        };
        Ok(FetchResponse {
            url: url.clone(),
            status: *status,
            content_type: content_type.clone(),
            body,
        })
    }
}

/// Plain HTTP(S) GET.
#[cfg(feature = "live")]
pub struct HttpFetcher {
    agent: ureq::Agent,
    max_body: u64,
}

#[cfg(feature = "live")]
impl HttpFetcher {
    pub fn new(user_agent: &str, timeout: std::time::Duration) -> Self {
        let agent = ureq::Agent::config_builder()
            .timeout_global(Some(timeout))
            .user_agent(user_agent)
            .http_status_as_error(false)
            .build()
            .into();
        HttpFetcher {
            agent,
            max_body: 8 * 1024 * 1024,
        }
    }
}

#[cfg(feature = "live")]
impl PageFetcher for HttpFetcher {
    fn fetch(&self, url: &Url) -> Result<FetchResponse, FetchError> {
        let failed = |reason: String| FetchError::Failed {
            url: url.to_string(),
            reason,
        };
        let mut resp = self
            .agent
            .get(url.as_str())
            .call()
            .map_err(|e| failed(e.to_string()))?;
        let status = resp.status().as_u16();
        let content_type = resp
            .headers()
            .get("content-type")
            .and_then(|v| v.to_str().ok())
            .map(str::to_owned);
        let body = resp
            .body_mut()
            .with_config()
            .limit(self.max_body)
            .read_to_vec()
            .map_err(|e| failed(e.to_string()))?;
        Ok(FetchResponse {
            url: url.clone(),
            status,
            content_type,
            body,
        })
    }
}
