//! Generic HTTP/JSON adapters for live search and impact services.
//!
//! Nothing here knows a particular vendor. A backend file names endpoints,
//! where to put the API key and which JSON pointers hold the figures:
//!
//! ```toml
//! [backend.search-api]
//! requests_per_second = 1.0
//!
//! [backend.search-api.search]
//! endpoint = "https://api.example.com/v1/search?q={query}&key={api_key}"
//! api_key_env = "SEARCH_API_KEY"
//! count_pointer = "/searchInformation/totalResults"
//! rounded = true
//!
//! [backend.search-api.impact]
//! endpoint = "https://metrics.example.com/v2/{host}"
//! api_key_env = "METRICS_KEY"
//! api_key_header = "X-Api-Key"
//! page_count_pointer = "/pages"
//! authority_pointer = "/domain_authority"
//! ```

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Duration;

use serde::Deserialize;
use serde_json::Value;

use super::{
    BackendError, HitObservation, ImpactObservation, ImpactSource, ImpactValues, SearchSource,
};
use crate::domain::Host;

#[derive(Debug, Clone, Deserialize)]
pub struct BackendFile {
    #[serde(default)]
    pub backend: BTreeMap<String, LiveBackendConfig>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct LiveBackendConfig {
    #[serde(default = "one")]
    pub requests_per_second: f64,
    #[serde(default = "default_timeout")]
    pub timeout_secs: u64,
    #[serde(default = "default_agent")]
    pub user_agent: String,
    pub search: Option<EndpointConfig>,
    pub impact: Option<EndpointConfig>,
}

fn one() -> f64 {
    1.0
}

fn default_timeout() -> u64 {
    30
}

fn default_agent() -> String {
    concat!("domainscope/", env!("CARGO_PKG_VERSION")).to_owned()
}

#[derive(Debug, Clone, Deserialize)]
pub struct EndpointConfig {
    /// URL template with `{query}` or `{host}`, and optionally `{api_key}`.
    pub endpoint: String,
    pub api_key_env: Option<String>,
    /// Send the key in this header instead of the URL.
    pub api_key_header: Option<String>,
    pub count_pointer: Option<String>,
    #[serde(default)]
    pub rounded: bool,
    #[serde(default = "default_query_len")]
    pub max_query_len: usize,
    pub page_count_pointer: Option<String>,
    pub sites_linking_in_pointer: Option<String>,
    pub root_domains_linking_pointer: Option<String>,
    pub authority_pointer: Option<String>,
}

fn default_query_len() -> usize {
    2048
}

impl BackendFile {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}

struct Endpoint {
    id: String,
    cfg: EndpointConfig,
    agent: ureq::Agent,
    calls: AtomicU64,
}

impl Endpoint {
    fn new(id: &str, cfg: EndpointConfig, backend: &LiveBackendConfig) -> Self {
        let agent = ureq::Agent::config_builder()
            .timeout_global(Some(Duration::from_secs(backend.timeout_secs)))
            .user_agent(backend.user_agent.as_str())
            .build()
            .into();
        Endpoint {
            id: id.to_owned(),
            cfg,
            agent,
            calls: AtomicU64::new(0),
        }
    }

    fn unavailable(&self, reason: impl Into<String>) -> BackendError {
        BackendError::Unavailable {
            backend: self.id.clone(),
            reason: reason.into(),
        }
    }

    fn get_json(&self, placeholder: &str, value: &str) -> Result<Value, BackendError> {
        let key = match &self.cfg.api_key_env {
            Some(var) => std::env::var(var)
                .map_err(|_| self.unavailable(format!("environment variable {var} is not set")))?,
            None => String::new(),
        };
        let enc = |s: &str| url::form_urlencoded::byte_serialize(s.as_bytes()).collect::<String>();
        let mut url = self.cfg.endpoint.replace(placeholder, &enc(value));
        if self.cfg.api_key_header.is_none() {
            url = url.replace("{api_key}", &enc(&key));
        }
        let mut req = self.agent.get(&url);
        if let Some(h) = &self.cfg.api_key_header {
            req = req.header(h.as_str(), key.as_str());
        }
        self.calls.fetch_add(1, Ordering::Relaxed);
        match req.call() {
            Ok(mut resp) => resp
                .body_mut()
                .read_to_string()
                .map_err(|e| e.to_string())
                .and_then(|body| serde_json::from_str::<Value>(&body).map_err(|e| e.to_string()))
                .map_err(|reason| BackendError::InvalidResponse {
                    backend: self.id.clone(),
                    reason,
                }),
            Err(ureq::Error::StatusCode(429)) => Err(BackendError::QuotaExhausted {
                backend: self.id.clone(),
            }),
            Err(ureq::Error::StatusCode(code)) if (400..500).contains(&code) => {
                Err(BackendError::QueryRejected {
                    backend: self.id.clone(),
                    query: value.to_owned(),
                    reason: format!("HTTP {code}"),
                })
            }
            Err(e) => Err(self.unavailable(e.to_string())),
        }
    }

    fn count_at(&self, doc: &Value, pointer: Option<&str>) -> Result<Option<f64>, BackendError> {
        let Some(p) = pointer else { return Ok(None) };
        let bad = |v: &Value| BackendError::InvalidResponse {
            backend: self.id.clone(),
            reason: format!("{p} holds {v}"),
        };
        match doc.pointer(p) {
            None | Some(Value::Null) => Ok(None),
            Some(Value::Number(n)) => n
                .as_f64()
                .map(Some)
                .ok_or_else(|| bad(&Value::Number(n.clone()))),
            // Some services send counts as strings, sometimes with separators.
            Some(Value::String(s)) => {
                let digits: String = s
                    .chars()
                    .filter(|c| !matches!(c, ',' | '_' | ' '))
                    .collect();
                digits
                    .parse::<f64>()
                    .map(Some)
                    .map_err(|_| bad(&Value::String(s.clone())))
            }
            Some(v) => Err(bad(v)),
        }
    }
}

fn as_count(x: Option<f64>) -> Option<u64> {
    x.filter(|v| *v >= 0.0).map(|v| v.round() as u64)
}

pub struct HttpSearch(Endpoint);

pub struct HttpImpact(Endpoint);

impl HttpSearch {
    pub fn new(name: &str, backend: &LiveBackendConfig) -> Option<Self> {
        backend
            .search
            .clone()
            .map(|cfg| HttpSearch(Endpoint::new(&format!("live:{name}"), cfg, backend)))
    }
}

impl HttpImpact {
    pub fn new(name: &str, backend: &LiveBackendConfig) -> Option<Self> {
        backend
            .impact
            .clone()
            .map(|cfg| HttpImpact(Endpoint::new(&format!("live:{name}"), cfg, backend)))
    }
}

impl SearchSource for HttpSearch {
    fn backend_id(&self) -> &str {
        &self.0.id
    }

    fn max_query_len(&self) -> usize {
        self.0.cfg.max_query_len
    }

    fn hit_count(&self, query: &str) -> Result<HitObservation, BackendError> {
        let doc = self.0.get_json("{query}", query)?;
        Ok(HitObservation {
            count: as_count(self.0.count_at(&doc, self.0.cfg.count_pointer.as_deref())?),
            rounded: self.0.cfg.rounded,
            captured_at: None,
        })
    }

    fn calls(&self) -> u64 {
        self.0.calls.load(Ordering::Relaxed)
    }
}

impl ImpactSource for HttpImpact {
    fn backend_id(&self) -> &str {
        &self.0.id
    }

    fn impact(&self, host: &Host) -> Result<ImpactObservation, BackendError> {
        let doc = self.0.get_json("{host}", host.as_str())?;
        let c = &self.0.cfg;
        let values = ImpactValues {
            page_count: as_count(self.0.count_at(&doc, c.page_count_pointer.as_deref())?),
            sites_linking_in: as_count(
                self.0
                    .count_at(&doc, c.sites_linking_in_pointer.as_deref())?,
            ),
            root_domains_linking: as_count(
                self.0
                    .count_at(&doc, c.root_domains_linking_pointer.as_deref())?,
            ),
            authority: self.0.count_at(&doc, c.authority_pointer.as_deref())?,
        };
        Ok(ImpactObservation {
            values,
            captured_at: None,
        })
    }

    fn calls(&self) -> u64 {
        self.0.calls.load(Ordering::Relaxed)
    }
}
