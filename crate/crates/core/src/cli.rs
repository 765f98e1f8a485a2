//! Command-line front end over a persistent output workspace.
//!
//! Each subcommand reads the state files earlier stages left in
//! `<out>/state/`, does its part and writes its own state back. Every run
//! writes `<out>/manifest.json`. Exit status is 0 on success, 1 for invalid
//! input or configuration and 2 when a backend or the cache fails; errors go
//! to standard error as one JSON line.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use chrono::{DateTime, Utc};
use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::backends::{
    resolve_cache_path, BackendError, Cache, CacheError, FixtureBackend, ImpactSource, SearchSource,
};
#[cfg(feature = "live")]
use crate::backends::{RetryPolicy, Throttled};
use crate::clock::{Clock, SystemClock, VirtualClock};
use crate::discovery::{CrawlPolicy, FixtureFetcher, PageFetcher};
use crate::domain::{suffix_list_version, Registry};
use crate::pipeline::{
    indicator_matrix, run_discover, run_graph, run_measure, run_mentions, run_stats,
    AnalysisSettings, DiscoverState, GraphState, MeasureState, MentionsState, StatsState,
};
use crate::report::{render_report, write_report, ReportInput};

/// Cache entries older than this raise a warning.
const STALE_AFTER_DAYS: i64 = 30;

#[derive(Debug, Parser)]
#[command(
    name = "domainscope",
    version,
    about = "Discover, measure and map an organization's web domains"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
enum Command {
    /// Crawl registered domains and queue candidate domains for review
    Discover,
    /// Collect impact snapshots for every registered domain
    Measure,
    /// Build query plans and measure corrected URL-mention counts
    Mentions,
    /// Compute network metrics and export graph files
    Graph,
    /// Spearman correlations and PCA with varimax rotation
    Stats,
    /// Render every table, graph file and summary
    Report,
    /// Run every stage in order
    Pipeline,
}

#[derive(Debug, Clone, Args, Serialize)]
struct Opts {
    /// Organization registry (TOML or JSON)
    #[arg(long, global = true)]
    registry: Option<PathBuf>,
    /// Cache file; overrides DOMAINSCOPE_CACHE. Default: <out>/cache.jsonl
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// `fixture` or `live:<name>`
    #[arg(long, global = true, default_value = "fixture")]
    backend: String,
    /// TOML file describing live backends
    #[arg(long, global = true)]
    backend_config: Option<PathBuf>,
    /// Recorded backend answers. Default: <registry dir>/backend
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,
    /// Recorded pages for discovery. Default: <registry dir>/pages with the
    /// fixture backend, live HTTP otherwise
    #[arg(long, global = true)]
    pages: Option<PathBuf>,
    /// Organizations with fewer domains get no mention network
    #[arg(long, global = true, default_value_t = crate::mentions::DEFAULT_MIN_DOMAINS)]
    min_domains: usize,
    /// Worker threads; 0 picks one per core
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Output workspace
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Two-tailed significance level for correlations
    #[arg(long, global = true, default_value_t = 0.01)]
    alpha: f64,
    /// Principal components kept for rotation
    #[arg(long, global = true, default_value_t = 2)]
    components: usize,
    /// |in - out| degree beyond which a node counts as authority or hub
    #[arg(long, global = true, default_value_t = 10)]
    asymmetry_threshold: i64,
    /// Requests per registered domain during discovery
    #[arg(long, global = true, default_value_t = 200)]
    max_pages: usize,
    /// Link hops from each home page during discovery
    #[arg(long, global = true, default_value_t = 2)]
    max_depth: usize,
    /// Minimum gap between requests to one domain, in milliseconds
    #[arg(long, global = true, default_value_t = 1000)]
    min_delay_ms: u64,
    /// Page fetch timeout in seconds
    #[arg(long, global = true, default_value_t = 30)]
    fetch_timeout: u64,
    /// Crawl paths robots.txt disallows
    #[arg(long, global = true)]
    ignore_robots: bool,
    /// Do not read sitemaps
    #[arg(long, global = true)]
    no_sitemaps: bool,
    /// User agent for crawling
    #[arg(long, global = true)]
    user_agent: Option<String>,
    /// Seed for retry jitter
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

/// Everything a run depends on, resolved.
#[derive(Debug, Clone, Serialize)]
pub struct WorkspaceConfig {
    pub registry: PathBuf,
    pub cache: PathBuf,
    pub backend: String,
    pub backend_config: Option<PathBuf>,
    pub fixtures: PathBuf,
    pub pages: Option<PathBuf>,
    pub out: PathBuf,
    pub settings: AnalysisSettings,
    pub policy: CrawlPolicy,
    pub seed: u64,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Invalid(String),
    Backend(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Invalid(_) => 1,
            CliError::Backend(_) => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Invalid(_) => "invalid",
            CliError::Backend(_) => "backend",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Invalid(m) | CliError::Backend(m) => m,
        }
    }
}

impl From<BackendError> for CliError {
    fn from(e: BackendError) -> Self {
        CliError::Backend(e.to_string())
    }
}

impl From<CacheError> for CliError {
    fn from(e: CacheError) -> Self {
        CliError::Backend(e.to_string())
    }
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

#[derive(Debug, Default, Serialize)]
struct Manifest {
    tool_version: String,
    command: String,
    config_sha256: String,
    registry_sha256: Option<String>,
    suffix_list_version: String,
    backend_ids: Vec<String>,
    started_at: Option<DateTime<Utc>>,
    finished_at: Option<DateTime<Utc>>,
    stages: Vec<String>,
    backend_calls: u64,
    page_fetches: usize,
    cache: Option<CacheSummary>,
    warnings: Vec<String>,
    exit_code: i32,
    error: Option<String>,
}

#[derive(Debug, Serialize)]
struct CacheSummary {
    path: PathBuf,
    entries: usize,
    hits: u64,
    misses: u64,
    stale: usize,
}

enum Backends {
    Fixture(FixtureBackend),
    #[cfg(feature = "live")]
    Live {
        id: String,
        impact: Option<Throttled<crate::backends::live::HttpImpact>>,
        search: Option<Throttled<crate::backends::live::HttpSearch>>,
    },
}

impl Backends {
    fn impact(&self) -> Result<&dyn ImpactSource, CliError> {
        match self {
            Backends::Fixture(f) => Ok(f),
            #[cfg(feature = "live")]
            Backends::Live { id, impact, .. } => impact
                .as_ref()
                .map(|s| s as &dyn ImpactSource)
                .ok_or_else(|| CliError::Invalid(format!("backend {id} has no impact endpoint"))),
        }
    }

    fn search(&self) -> Result<&dyn SearchSource, CliError> {
        match self {
            Backends::Fixture(f) => Ok(f),
            #[cfg(feature = "live")]
            Backends::Live { id, search, .. } => search
                .as_ref()
                .map(|s| s as &dyn SearchSource)
                .ok_or_else(|| CliError::Invalid(format!("backend {id} has no search endpoint"))),
        }
    }

    fn ids(&self) -> Vec<String> {
        match self {
            Backends::Fixture(_) => vec![crate::backends::FIXTURE_BACKEND_ID.to_owned()],
            #[cfg(feature = "live")]
            Backends::Live { id, .. } => vec![id.clone()],
        }
    }

    fn calls(&self) -> u64 {
        match self {
            Backends::Fixture(f) => f.calls(),
            #[cfg(feature = "live")]
            Backends::Live { impact, search, .. } => {
                impact.as_ref().map_or(0, |s| ImpactSource::calls(s))
                    + search.as_ref().map_or(0, |s| SearchSource::calls(s))
            }
        }
    }
}

struct Session {
    config: WorkspaceConfig,
    registry: Registry,
    clock: Arc<dyn Clock>,
    live: bool,
    cache: Option<Cache>,
    backends: Option<Backends>,
    manifest: Manifest,
}

impl Session {
    fn state_path(&self, name: &str) -> PathBuf {
        self.config.out.join("state").join(format!("{name}.json"))
    }

    fn save<T: Serialize>(&self, name: &str, value: &T) -> Result<(), CliError> {
        let path = self.state_path(name);
        fs::create_dir_all(path.parent().expect("state dir"))
            .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        let mut text = serde_json::to_string_pretty(value).expect("state serializes");
        text.push('\n');
        fs::write(&path, text).map_err(|e| invalid(format!("{}: {e}", path.display())))
    }

    fn load<T: DeserializeOwned>(&self, name: &str, producer: &str) -> Result<T, CliError> {
        let path = self.state_path(name);
        let text = fs::read_to_string(&path).map_err(|_| {
            CliError::Invalid(format!(
                "{} missing; run `{producer}` first",
                path.display()
            ))
        })?;
        serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
    }

    fn cache(&mut self) -> Result<&Cache, CliError> {
        if self.cache.is_none() {
            let cache = Cache::open(&self.config.cache)?;
            let stale =
                cache.stale_count(self.clock.now(), chrono::Duration::days(STALE_AFTER_DAYS));
            if stale > 0 {
                self.warn(format!(
                    "{stale} cache entries are older than {STALE_AFTER_DAYS} days"
                ));
            }
            self.cache = Some(cache);
        }
        Ok(self.cache.as_ref().expect("just opened"))
    }

    fn backends(&mut self) -> Result<&Backends, CliError> {
        if self.backends.is_none() {
            let b = open_backends(&self.config)?;
            self.manifest.backend_ids = b.ids();
            self.backends = Some(b);
        }
        Ok(self.backends.as_ref().expect("just opened"))
    }

    fn warn(&mut self, w: String) {
        eprintln!("warning: {w}");
        self.manifest.warnings.push(w);
    }

    fn fetcher(&self) -> Result<Option<Box<dyn PageFetcher>>, CliError> {
        if let Some(dir) = &self.config.pages {
            if dir.join("index.json").exists() {
                return Ok(Some(Box::new(FixtureFetcher::load(dir).map_err(invalid)?)));
            }
            if !self.live {
                return Ok(None);
            }
            return Err(CliError::Invalid(format!(
                "{}: no index.json",
                dir.display()
            )));
        }
        #[cfg(feature = "live")]
        if self.live {
            let p = &self.config.policy;
            return Ok(Some(Box::new(crate::discovery::HttpFetcher::new(
                &p.user_agent,
                p.fetch_timeout(),
            ))));
        }
        Ok(None)
    }

    fn discover(&mut self) -> Result<(), CliError> {
        let Some(fetcher) = self.fetcher()? else {
            self.warn("discovery skipped: no page fixtures and no live fetcher".into());
            return Ok(());
        };
        // Crawl delays must not move the clock the backends stamp with.
        let crawl_clock: Box<dyn Clock> = if self.live {
            Box::new(SystemClock)
        } else {
            Box::new(VirtualClock::starting_at(self.clock.now()))
        };
        let state = run_discover(
            &self.registry,
            &self.config.policy,
            fetcher.as_ref(),
            crawl_clock.as_ref(),
        )
        .map_err(|e| CliError::Backend(e.to_string()))?;
        self.manifest.page_fetches += state
            .reports
            .iter()
            .flat_map(|r| r.fetches.values())
            .sum::<usize>();
        self.save("discover", &state)?;
        self.manifest.stages.push("discover".into());
        Ok(())
    }

    fn measure(&mut self) -> Result<(), CliError> {
        self.cache()?;
        self.backends()?;
        let source = self.backends.as_ref().expect("opened").impact()?;
        let state = run_measure(
            &self.registry,
            source,
            self.cache.as_ref().expect("opened"),
            self.clock.as_ref(),
        )?;
        self.save("measure", &state)?;
        self.manifest.stages.push("measure".into());
        Ok(())
    }

    fn mentions(&mut self) -> Result<(), CliError> {
        self.cache()?;
        self.backends()?;
        let search = self.backends.as_ref().expect("opened").search()?;
        let state = run_mentions(
            &self.registry,
            self.config.settings.min_domains,
            search,
            self.cache.as_ref().expect("opened"),
            self.clock.as_ref(),
        )?;
        self.save("mentions", &state)?;
        self.manifest.stages.push("mentions".into());
        Ok(())
    }

    fn graph(&mut self) -> Result<(), CliError> {
        let mentions: MentionsState = self.load("mentions", "mentions")?;
        let state = run_graph(
            &self.registry,
            &mentions,
            self.config.settings.asymmetry_threshold,
        )
        .map_err(invalid)?;
        let dir = self.config.out.join("report").join("graphs");
        fs::create_dir_all(&dir).map_err(|e| invalid(format!("{}: {e}", dir.display())))?;
        for n in &state.networks {
            for (ext, body) in [
                ("net", crate::mentions::to_net(&n.graph)),
                ("gexf", crate::mentions::to_gexf(&n.graph)),
            ] {
                let p = dir.join(format!("{}.{ext}", n.org_id));
                fs::write(&p, body).map_err(|e| invalid(format!("{}: {e}", p.display())))?;
            }
        }
        for (id, domains) in &state.skipped {
            eprintln!(
                "{id}: Skipped ({domains} domains < {})",
                self.config.settings.min_domains
            );
        }
        self.save("graph", &state)?;
        self.manifest.stages.push("graph".into());
        Ok(())
    }

    fn stats(&mut self) -> Result<(), CliError> {
        let measure: MeasureState = self.load("measure", "measure")?;
        let graph: GraphState = self.load("graph", "graph")?;
        let matrix = indicator_matrix(&self.registry, &measure, &graph);
        let state = run_stats(
            matrix,
            self.config.settings.alpha,
            self.config.settings.components,
        );
        if let Some(e) = &state.pca_error {
            self.warn(format!("PCA not computed: {e}"));
        }
        self.save("stats", &state)?;
        self.manifest.stages.push("stats".into());
        Ok(())
    }

    fn report(&mut self) -> Result<(), CliError> {
        let discover: Option<DiscoverState> = self.load("discover", "discover").ok();
        let measure: MeasureState = self.load("measure", "measure")?;
        let mentions: MentionsState = self.load("mentions", "mentions")?;
        let graph: GraphState = self.load("graph", "graph")?;
        let stats: StatsState = self.load("stats", "stats")?;
        let files = render_report(&ReportInput {
            registry: &self.registry,
            settings: &self.config.settings,
            discover: discover.as_ref(),
            measure: &measure,
            mentions: &mentions,
            graph: &graph,
            stats: &stats,
        })
        .map_err(invalid)?;
        write_report(&self.config.out, &files).map_err(invalid)?;
        self.manifest.stages.push("report".into());
        Ok(())
    }

    fn run(&mut self, cmd: Command) -> Result<(), CliError> {
        match cmd {
            Command::Discover => self.discover(),
            Command::Measure => self.measure(),
            Command::Mentions => self.mentions(),
            Command::Graph => self.graph(),
            Command::Stats => self.stats(),
            Command::Report => self.report(),
            Command::Pipeline => {
                self.discover()?;
                self.measure()?;
                self.mentions()?;
                self.graph()?;
                self.stats()?;
                self.report()
            }
        }
    }

    fn finish(&mut self, result: &Result<(), CliError>) {
        self.manifest.finished_at = Some(self.clock.now());
        self.manifest.backend_calls = self.backends.as_ref().map_or(0, Backends::calls);
        if let Some(c) = &self.cache {
            self.manifest.cache = Some(CacheSummary {
                path: self.config.cache.clone(),
                entries: c.len(),
                hits: c.hits(),
                misses: c.misses(),
                stale: c.stale_count(self.clock.now(), chrono::Duration::days(STALE_AFTER_DAYS)),
            });
        }
        if let Err(e) = result {
            self.manifest.exit_code = e.exit_code();
            self.manifest.error = Some(e.message().to_owned());
        }
        let path = self.config.out.join("manifest.json");
        let mut text = serde_json::to_string_pretty(&self.manifest).expect("manifest serializes");
        text.push('\n');
        if let Err(e) = fs::create_dir_all(&self.config.out).and_then(|_| fs::write(&path, text)) {
            eprintln!("warning: cannot write {}: {e}", path.display());
        }
    }
}

fn open_backends(config: &WorkspaceConfig) -> Result<Backends, CliError> {
    if config.backend == "fixture" {
        if !config.fixtures.is_dir() {
            return Err(CliError::Invalid(format!(
                "fixture directory {} not found",
                config.fixtures.display()
            )));
        }
        return Ok(Backends::Fixture(FixtureBackend::load_dir(
            &config.fixtures,
        )?));
    }
    let Some(name) = config
        .backend
        .strip_prefix("live:")
        .filter(|n| !n.is_empty())
    else {
        return Err(CliError::Usage(format!(
            "unknown backend {:?}; expected `fixture` or `live:<name>`",
            config.backend
        )));
    };
    open_live(name, config)
}

#[cfg(feature = "live")]
fn open_live(name: &str, config: &WorkspaceConfig) -> Result<Backends, CliError> {
    use crate::backends::live::{BackendFile, HttpImpact, HttpSearch};
    let path = config
        .backend_config
        .as_ref()
        .ok_or_else(|| CliError::Invalid("live backends need --backend-config".into()))?;
    let file = BackendFile::load(path).map_err(CliError::Invalid)?;
    let cfg = file
        .backend
        .get(name)
        .ok_or_else(|| CliError::Invalid(format!("{}: no backend named {name}", path.display())))?;
    if !(cfg.requests_per_second > 0.0 && cfg.requests_per_second.is_finite()) {
        return Err(CliError::Invalid(format!(
            "backend {name}: requests_per_second must be positive"
        )));
    }
    let clock: Arc<dyn Clock> = Arc::new(SystemClock);
    let retry = RetryPolicy {
        seed: config.seed,
        ..RetryPolicy::default()
    };
    Ok(Backends::Live {
        id: format!("live:{name}"),
        impact: HttpImpact::new(name, cfg)
            .map(|s| Throttled::new(s, cfg.requests_per_second, retry, clock.clone())),
        search: HttpSearch::new(name, cfg)
            .map(|s| Throttled::new(s, cfg.requests_per_second, retry, clock.clone())),
    })
}

#[cfg(not(feature = "live"))]
fn open_live(_name: &str, _config: &WorkspaceConfig) -> Result<Backends, CliError> {
    Err(CliError::Invalid("built without the `live` feature".into()))
}

fn resolve(opts: &Opts) -> Result<WorkspaceConfig, CliError> {
    let registry = opts
        .registry
        .clone()
        .ok_or_else(|| CliError::Usage("--registry is required".into()))?;
    if opts.min_domains < 2 {
        return Err(CliError::Invalid("--min-domains must be at least 2".into()));
    }
    if !(opts.alpha > 0.0 && opts.alpha < 1.0) {
        return Err(CliError::Invalid("--alpha must lie in (0, 1)".into()));
    }
    if opts.components == 0 {
        return Err(CliError::Invalid("--components must be at least 1".into()));
    }
    if opts.asymmetry_threshold < 0 {
        return Err(CliError::Invalid(
            "--asymmetry-threshold must not be negative".into(),
        ));
    }
    let base = registry.parent().map(Path::to_owned).unwrap_or_default();
    let live = opts.backend != "fixture";
    let policy = CrawlPolicy {
        max_pages_per_domain: opts.max_pages,
        max_depth: opts.max_depth,
        fetch_timeout_secs: opts.fetch_timeout,
        obey_robots: !opts.ignore_robots,
        include_sitemaps: !opts.no_sitemaps,
        min_delay_ms: opts.min_delay_ms,
        user_agent: opts
            .user_agent
            .clone()
            .unwrap_or_else(|| crate::discovery::DEFAULT_USER_AGENT.to_owned()),
    };
    policy.validate().map_err(invalid)?;
    Ok(WorkspaceConfig {
        cache: resolve_cache_path(opts.cache.as_deref(), &opts.out.join("cache.jsonl")),
        backend: opts.backend.clone(),
        backend_config: opts.backend_config.clone(),
        fixtures: opts
            .fixtures
            .clone()
            .unwrap_or_else(|| base.join("backend")),
        pages: opts
            .pages
            .clone()
            .or_else(|| (!live).then(|| base.join("pages"))),
        out: opts.out.clone(),
        settings: AnalysisSettings {
            min_domains: opts.min_domains,
            asymmetry_threshold: opts.asymmetry_threshold,
            alpha: opts.alpha,
            components: opts.components,
        },
        policy,
        seed: opts.seed,
        registry,
    })
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn error_line(e: &CliError) -> String {
    let mut m = BTreeMap::new();
    m.insert("error", serde_json::Value::from(e.kind()));
    m.insert("message", serde_json::Value::from(e.message()));
    m.insert("exit_code", serde_json::Value::from(e.exit_code()));
    serde_json::to_string(&m).expect("plain map")
}

/// Runs the command line `argv` (program name first) and returns the exit
/// status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            eprint!("{}", e.render());
            let err = CliError::Usage(e.kind().to_string());
            eprintln!("{}", error_line(&err));
            return err.exit_code();
        }
    };
    let config = match resolve(&cli.opts) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{}", error_line(&e));
            return e.exit_code();
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if cli.opts.jobs > 0 {
        pool = pool.num_threads(cli.opts.jobs);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            let e = invalid(e);
            eprintln!("{}", error_line(&e));
            return e.exit_code();
        }
    };
    pool.install(|| execute(cli.command, config))
}

fn execute(command: Command, config: WorkspaceConfig) -> i32 {
    let live = config.backend != "fixture";
    let clock: Arc<dyn Clock> = if live {
        Arc::new(SystemClock)
    } else {
        Arc::new(VirtualClock::fixture_epoch())
    };
    let config_json = serde_json::to_string(&config).expect("config serializes");
    let manifest = Manifest {
        tool_version: env!("CARGO_PKG_VERSION").to_owned(),
        command: serde_json::to_value(command)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default(),
        config_sha256: sha256_hex(config_json.as_bytes()),
        suffix_list_version: suffix_list_version().to_owned(),
        started_at: Some(clock.now()),
        ..Manifest::default()
    };
    let registry_bytes = fs::read(&config.registry);
    let registry = registry_bytes
        .as_ref()
        .map_err(|e| invalid(format!("{}: {e}", config.registry.display())))
        .and_then(|_| Registry::load(&config.registry).map_err(invalid));
    let mut session = Session {
        registry: Registry::default(),
        clock,
        live,
        cache: None,
        backends: None,
        manifest,
        config,
    };
    let result = registry.and_then(|r| {
        session.registry = r;
        session.manifest.registry_sha256 = registry_bytes.as_ref().ok().map(|b| sha256_hex(b));
        session.run(command)
    });
    session.finish(&result);
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", error_line(&e));
            e.exit_code()
        }
    }
}
