//! Candidate web domains harvested from an organization's own sites.
//!
//! Each registered domain is crawled breadth-first from its home page, its
//! sitemaps and the same-domain links found on the way. Every foreign
//! registrable domain seen is a candidate for human review; nothing is
//! registered automatically.

mod fetch;
mod html;
mod sitemap;

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::time::Duration;

use chrono::{DateTime, Utc};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use texting_robots::Robot;
use thiserror::Error;
use url::Url;

use crate::clock::{Clock, RateLimiter};
use crate::domain::{
    normalize_host, suggest_category, CategoryHints, Host, OrganizationRecord, Suggestion,
};

#[cfg(feature = "live")]
pub use fetch::HttpFetcher;
pub use fetch::{FetchError, FetchResponse, FixtureFetcher, PageFetcher};
pub use html::{decode_page, extract_outlink_hosts, DecodeError, Outlinks};
pub use sitemap::{parse_sitemap, Sitemap};

pub const DEFAULT_USER_AGENT: &str = concat!("domainscope/", env!("CARGO_PKG_VERSION"));

/// Nested sitemap indexes are followed this many levels down.
const SITEMAP_NESTING: usize = 2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrawlPolicy {
    /// Every request to a domain counts, robots.txt and sitemaps included.
    pub max_pages_per_domain: usize,
    /// Link hops from the home page; sitemap entries sit at depth 1.
    pub max_depth: usize,
    pub fetch_timeout_secs: u64,
    pub obey_robots: bool,
    pub include_sitemaps: bool,
    /// Minimum gap between two requests to the same domain.
    pub min_delay_ms: u64,
    pub user_agent: String,
}

impl Default for CrawlPolicy {
    fn default() -> Self {
        CrawlPolicy {
            max_pages_per_domain: 200,
            max_depth: 2,
            fetch_timeout_secs: 30,
            obey_robots: true,
            include_sitemaps: true,
            min_delay_ms: 1000,
            user_agent: DEFAULT_USER_AGENT.to_owned(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolicyError {
    #[error("max_pages_per_domain must be at least 1")]
    ZeroBudget,
    #[error("fetch_timeout_secs must be at least 1")]
    ZeroTimeout,
    #[error("user agent must not be empty")]
    EmptyUserAgent,
}

impl CrawlPolicy {
    pub fn validate(&self) -> Result<(), PolicyError> {
        if self.max_pages_per_domain == 0 {
            return Err(PolicyError::ZeroBudget);
        }
        if self.fetch_timeout_secs == 0 {
            return Err(PolicyError::ZeroTimeout);
        }
        if self.user_agent.trim().is_empty() {
            return Err(PolicyError::EmptyUserAgent);
        }
        Ok(())
    }

    pub fn min_delay(&self) -> Duration {
        Duration::from_millis(self.min_delay_ms)
    }

    pub fn fetch_timeout(&self) -> Duration {
        Duration::from_secs(self.fetch_timeout_secs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Evidence {
    pub source_page: String,
    /// Empty for `<link>` targets and sitemap entries.
    pub anchor_text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateDomain {
    pub host: Host,
    /// In discovery order.
    pub evidence: Vec<Evidence>,
    pub first_seen: DateTime<Utc>,
    pub suggestion: Suggestion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagnosticKind {
    FetchFailed,
    HttpStatus,
    Undecodable,
    RobotsDisallowed,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrawlDiagnostic {
    pub url: String,
    pub kind: DiagnosticKind,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrawlReport {
    pub org_id: String,
    /// Sorted by host.
    pub candidates: Vec<CandidateDomain>,
    pub diagnostics: Vec<CrawlDiagnostic>,
    /// Requests issued per registered domain.
    pub fetches: BTreeMap<Host, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("page fetcher unavailable while crawling {org_id}: {reason}")]
pub struct FetcherUnavailable {
    pub org_id: String,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Resource {
    Page,
    Sitemap { nesting: usize },
}

/// What one seed domain produced.
struct SeedCrawl {
    /// Host, its evidence and the fetch index of the first sighting.
    found: Vec<(Host, Evidence, usize)>,
    diagnostics: Vec<CrawlDiagnostic>,
    fetches: usize,
}

struct SeedCrawler<'a> {
    seed: &'a Host,
    policy: &'a CrawlPolicy,
    fetcher: &'a dyn PageFetcher,
    clock: &'a dyn Clock,
    limiter: RateLimiter,
    robot: Option<Robot>,
    out: SeedCrawl,
}

impl SeedCrawler<'_> {
    /// Issues a request if the domain budget allows.
    fn fetch(&mut self, url: &Url) -> Result<Option<FetchResponse>, String> {
        if self.out.fetches >= self.policy.max_pages_per_domain {
            self.diagnose(url, DiagnosticKind::BudgetExhausted, "page budget spent");
            return Ok(None);
        }
        self.limiter.acquire(self.clock);
        self.out.fetches += 1;
        match self.fetcher.fetch(url) {
            Ok(r) if r.is_ok() => Ok(Some(r)),
            Ok(r) => {
                self.diagnose(url, DiagnosticKind::HttpStatus, &r.status.to_string());
                Ok(None)
            }
            Err(FetchError::Failed { reason, .. }) => {
                self.diagnose(url, DiagnosticKind::FetchFailed, &reason);
                Ok(None)
            }
            Err(FetchError::Unavailable(reason)) => Err(reason),
        }
    }

    fn diagnose(&mut self, url: &Url, kind: DiagnosticKind, detail: &str) {
        self.out.diagnostics.push(CrawlDiagnostic {
            url: url.to_string(),
            kind,
            detail: detail.to_owned(),
        });
    }

    fn allowed(&mut self, url: &Url) -> bool {
        let ok = self.robot.as_ref().is_none_or(|r| r.allowed(url.as_str()));
        if !ok {
            self.diagnose(
                url,
                DiagnosticKind::RobotsDisallowed,
                "disallowed by robots.txt",
            );
        }
        ok
    }

    fn same_domain(&self, url: &Url) -> bool {
        url.host_str()
            .and_then(|h| normalize_host(h).ok())
            .is_some_and(|n| &n.host == self.seed)
    }

    fn run(mut self) -> Result<SeedCrawl, String> {
        let home = Url::parse(&format!("https://{}/", self.seed)).map_err(|e| e.to_string())?;
        let mut queue: VecDeque<(Url, usize, Resource)> = VecDeque::new();
        let mut seen: HashSet<Url> = HashSet::new();
        seen.insert(home.clone());
        queue.push_back((home.clone(), 0, Resource::Page));

        if self.policy.obey_robots || self.policy.include_sitemaps {
            let robots_url = home.join("/robots.txt").expect("static path");
            let mut sitemaps = Vec::new();
            if let Some(r) = self.fetch(&robots_url)? {
                if let Ok(robot) = Robot::new(&self.policy.user_agent, &r.body) {
                    if let Some(d) = robot.delay.filter(|d| d.is_finite() && *d > 0.0) {
                        let gap = self
                            .policy
                            .min_delay()
                            .max(Duration::from_secs_f32(d.min(60.0)));
                        self.limiter = RateLimiter::with_interval(gap);
                    }
                    sitemaps = robot.sitemaps.clone();
                    if self.policy.obey_robots {
                        self.robot = Some(robot);
                    }
                }
            }
            if self.policy.include_sitemaps && self.policy.max_depth >= 1 {
                if sitemaps.is_empty() {
                    sitemaps.push(home.join("/sitemap.xml").expect("static path").to_string());
                }
                for s in sitemaps {
                    if let Ok(u) = Url::parse(&s) {
                        if seen.insert(u.clone()) {
                            queue.push_back((u, 1, Resource::Sitemap { nesting: 0 }));
                        }
                    }
                }
            }
        }

        while let Some((url, depth, kind)) = queue.pop_front() {
            if !self.allowed(&url) {
                continue;
            }
            let Some(resp) = self.fetch(&url)? else {
                continue;
            };
            let fetch_index = self.out.fetches - 1;
            match kind {
                Resource::Page => {
                    let links =
                        match extract_outlink_hosts(&resp.body, &url, resp.content_type.as_deref())
                        {
                            Ok(l) => l,
                            Err(e) => {
                                self.diagnose(&url, DiagnosticKind::Undecodable, &e.to_string());
                                continue;
                            }
                        };
                    for (host, anchors) in links.external {
                        for anchor_text in anchors {
                            let ev = Evidence {
                                source_page: url.to_string(),
                                anchor_text,
                            };
                            self.out.found.push((host.clone(), ev, fetch_index));
                        }
                    }
                    if depth < self.policy.max_depth {
                        for next in links.frontier {
                            if seen.insert(next.clone()) {
                                queue.push_back((next, depth + 1, Resource::Page));
                            }
                        }
                    }
                }
                Resource::Sitemap { nesting } => {
                    let text = match decode_page(&resp.body, resp.content_type.as_deref()) {
                        Ok(t) => t,
                        Err(e) => {
                            self.diagnose(&url, DiagnosticKind::Undecodable, &e.to_string());
                            continue;
                        }
                    };
                    let map = parse_sitemap(&text);
                    if nesting < SITEMAP_NESTING {
                        for child in map.children.iter().filter_map(|c| Url::parse(c).ok()) {
                            if seen.insert(child.clone()) {
                                queue.push_back((
                                    child,
                                    1,
                                    Resource::Sitemap {
                                        nesting: nesting + 1,
                                    },
                                ));
                            }
                        }
                    }
                    for mut loc in map.pages.iter().filter_map(|p| Url::parse(p).ok()) {
                        if !matches!(loc.scheme(), "http" | "https") {
                            continue;
                        }
                        loc.set_fragment(None);
                        if self.same_domain(&loc) {
                            if seen.insert(loc.clone()) {
                                queue.push_back((loc, 1, Resource::Page));
                            }
                        } else if let Some(n) = loc.host_str().and_then(|h| normalize_host(h).ok())
                        {
                            let ev = Evidence {
                                source_page: url.to_string(),
                                anchor_text: String::new(),
                            };
                            self.out.found.push((n.host, ev, fetch_index));
                        }
                    }
                }
            }
        }
        Ok(self.out)
    }
}

/// Crawls every registered domain of `org` and returns the foreign domains
/// they point at.
///
/// Domains are crawled in parallel; requests to one domain are sequential and
/// spaced by `policy.min_delay_ms`. A sighting's timestamp is the crawl start
/// plus its request index times the minimum delay, so reruns over the same
/// fixtures give identical output whatever the thread interleaving.
pub fn crawl_organization(
    org: &OrganizationRecord,
    policy: &CrawlPolicy,
    fetcher: &dyn PageFetcher,
    clock: &dyn Clock,
) -> Result<CrawlReport, FetcherUnavailable> {
    crawl_organization_from(org, policy, fetcher, clock, clock.now())
}

/// [`crawl_organization`] with sighting times counted from `started`.
pub fn crawl_organization_from(
    org: &OrganizationRecord,
    policy: &CrawlPolicy,
    fetcher: &dyn PageFetcher,
    clock: &dyn Clock,
    started: DateTime<Utc>,
) -> Result<CrawlReport, FetcherUnavailable> {
    let step = chrono::Duration::from_std(policy.min_delay()).unwrap_or_default();
    let seeds: Vec<&Host> = org.hosts().collect();
    let runs: Vec<Result<SeedCrawl, String>> = seeds
        .par_iter()
        .map(|seed| {
            SeedCrawler {
                seed,
                policy,
                fetcher,
                clock,
                limiter: RateLimiter::with_interval(policy.min_delay()),
                robot: None,
                out: SeedCrawl {
                    found: Vec::new(),
                    diagnostics: Vec::new(),
                    fetches: 0,
                },
            }
            .run()
        })
        .collect();

    let mut merged: BTreeMap<Host, (Vec<Evidence>, DateTime<Utc>)> = BTreeMap::new();
    let mut diagnostics = Vec::new();
    let mut fetches = BTreeMap::new();
    for (seed, run) in seeds.iter().zip(runs) {
        let run = run.map_err(|reason| FetcherUnavailable {
            org_id: org.id.clone(),
            reason,
        })?;
        fetches.insert((*seed).clone(), run.fetches);
        diagnostics.extend(run.diagnostics);
        for (host, ev, idx) in run.found {
            if org.contains(&host) {
                continue;
            }
            let at = started + step * idx as i32;
            let entry = merged.entry(host).or_insert_with(|| (Vec::new(), at));
            entry.1 = entry.1.min(at);
            if !entry.0.contains(&ev) {
                entry.0.push(ev);
            }
        }
    }
    let hints = CategoryHints::default();
    let candidates = merged
        .into_iter()
        .map(|(host, (evidence, first_seen))| {
            let suggestion = suggest_category(&host, org.corporate_hosts(), &hints);
            CandidateDomain {
                host,
                evidence,
                first_seen,
                suggestion,
            }
        })
        .collect();
    Ok(CrawlReport {
        org_id: org.id.clone(),
        candidates,
        diagnostics,
        fetches,
    })
}
