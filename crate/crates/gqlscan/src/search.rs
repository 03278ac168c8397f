//! Code-search clients that feed the corpus funnel: a replay client over a
//! local fixture tree for reproducible runs, a live HTTPS client, and the
//! size-partitioning planner that keeps each search query under result
//! caps.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};
use thiserror::Error;

/// Default per-query result cap enforced by code-search services.
pub const DEFAULT_RESULT_CAP: u64 = 1000;

/// Environment variable holding the live search token.
pub const SEARCH_TOKEN_VAR: &str = "GQLA_SEARCH_TOKEN";

/// One candidate file returned by a search.
#[derive(Clone, Debug, Deserialize, Eq, PartialEq, Serialize)]
pub struct SearchHit {
    pub url: String,
    pub path: String,
    pub repository: String,
    pub content: String,
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum SearchError {
    #[error("search I/O error: {0}")]
    Io(String),
    #[error("network error: {0}")]
    Network(String),
    #[error("search endpoint returned HTTP {status}")]
    Http { status: u16 },
    #[error("malformed search response: {0}")]
    MalformedResponse(String),
    #[error("missing search token: set {SEARCH_TOKEN_VAR}")]
    MissingToken,
}

pub trait SearchProvider {
    /// Runs one query restricted to files whose byte size falls in the
    /// inclusive range. Replay implementations must be deterministic.
    fn search(&self, query: &str, size_range: (u64, u64)) -> Result<Vec<SearchHit>, SearchError>;
}

/// Optional replay manifest entry. When a fixture tree carries a
/// `manifest.json`, hits come from it verbatim — including repeated URLs,
/// which a plain directory cannot express.
#[derive(Clone, Debug, Deserialize, Serialize)]
struct ManifestEntry {
    url: String,
    repository: String,
    path: String,
    /// File location relative to the fixture root; defaults to
    /// `<repository>/<path>`.
    #[serde(default)]
    file: Option<String>,
}

/// Deterministic search over a local fixture tree laid out as
/// `<root>/<owner>/<name>/<path…>`, or driven by a `manifest.json` at the
/// root.
pub struct ReplaySearchClient {
    root: PathBuf,
}

impl ReplaySearchClient {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        ReplaySearchClient { root: root.into() }
    }

    fn manifest_hits(&self, manifest: &Path) -> Result<Vec<SearchHit>, SearchError> {
        let text = std::fs::read_to_string(manifest)
            .map_err(|e| SearchError::Io(format!("{}: {e}", manifest.display())))?;
        let entries: Vec<ManifestEntry> = serde_json::from_str(&text)
            .map_err(|e| SearchError::MalformedResponse(format!("manifest: {e}")))?;
        entries
            .into_iter()
            .map(|entry| {
                let file = entry
                    .file
                    .clone()
                    .unwrap_or_else(|| format!("{}/{}", entry.repository, entry.path));
                let content = std::fs::read_to_string(self.root.join(&file))
                    .map_err(|e| SearchError::Io(format!("{file}: {e}")))?;
                Ok(SearchHit {
                    url: entry.url,
                    path: entry.path,
                    repository: entry.repository,
                    content,
                })
            })
            .collect()
    }

    fn tree_hits(&self) -> Result<Vec<SearchHit>, SearchError> {
        let mut hits = Vec::new();
        for entry in walkdir::WalkDir::new(&self.root)
            .sort_by_file_name()
            .into_iter()
        {
            let entry = entry.map_err(|e| SearchError::Io(e.to_string()))?;
            if !entry.file_type().is_file() {
                continue;
            }
            let relative = entry
                .path()
                .strip_prefix(&self.root)
                .expect("walkdir yields paths under its root");
            let components: Vec<String> = relative
                .components()
                .map(|c| c.as_os_str().to_string_lossy().into_owned())
                .collect();
            // Layout is <owner>/<name>/<path…>; anything shallower is not
            // a repository file.
            if components.len() < 3 {
                continue;
            }
            let repository = format!("{}/{}", components[0], components[1]);
            let path = components[2..].join("/");
            let content = std::fs::read_to_string(entry.path())
                .map_err(|e| SearchError::Io(format!("{}: {e}", entry.path().display())))?;
            hits.push(SearchHit {
                url: format!("replay://{repository}/{path}"),
                path,
                repository,
                content,
            });
        }
        Ok(hits)
    }
}

impl SearchProvider for ReplaySearchClient {
    fn search(&self, _query: &str, size_range: (u64, u64)) -> Result<Vec<SearchHit>, SearchError> {
        let manifest = self.root.join("manifest.json");
        let hits = if manifest.is_file() {
            self.manifest_hits(&manifest)?
        } else {
            self.tree_hits()?
        };
        Ok(hits
            .into_iter()
            .filter(|hit| {
                let size = hit.content.len() as u64;
                size >= size_range.0 && size <= size_range.1
            })
            .collect())
    }
}

/// Live client against an HTTPS JSON code-search endpoint. The endpoint is
/// expected to answer `GET <base>?q=<query>` with
/// `{"items": [{"url", "path", "repository", "content"}]}`.
pub struct LiveSearchClient {
    base_url: String,
    token: String,
    min_interval: Duration,
    client: reqwest::blocking::Client,
    last_request: std::sync::Mutex<Option<Instant>>,
}

impl LiveSearchClient {
    /// Reads the auth token from the environment; fails fast when unset so
    /// a misconfigured pipeline cannot burn its rate allowance first.
    pub fn new(base_url: impl Into<String>) -> Result<Self, SearchError> {
        let token = std::env::var(SEARCH_TOKEN_VAR).map_err(|_| SearchError::MissingToken)?;
        Ok(LiveSearchClient {
            base_url: base_url.into(),
            token,
            min_interval: Duration::from_secs(2),
            client: reqwest::blocking::Client::builder()
                .timeout(Duration::from_secs(30))
                .build()
                .map_err(|e| SearchError::Network(e.to_string()))?,
            last_request: std::sync::Mutex::new(None),
        })
    }

    pub fn with_min_interval(mut self, interval: Duration) -> Self {
        self.min_interval = interval;
        self
    }

    fn throttle(&self) {
        let mut last = self.last_request.lock().unwrap();
        if let Some(at) = *last {
            let elapsed = at.elapsed();
            if elapsed < self.min_interval {
                std::thread::sleep(self.min_interval - elapsed);
            }
        }
        *last = Some(Instant::now());
    }
}

#[derive(Deserialize)]
struct SearchResponse {
    items: Vec<SearchHit>,
}

impl SearchProvider for LiveSearchClient {
    fn search(&self, query: &str, _size_range: (u64, u64)) -> Result<Vec<SearchHit>, SearchError> {
        // The size restriction is already encoded in the query text by
        // `partition_search_queries`.
        self.throttle();
        let response = self
            .client
            .get(&self.base_url)
            .query(&[("q", query)])
            .bearer_auth(&self.token)
            .send()
            .map_err(|e| SearchError::Network(e.to_string()))?;
        let status = response.status();
        if !status.is_success() {
            return Err(SearchError::Http {
                status: status.as_u16(),
            });
        }
        let body: SearchResponse = response
            .json()
            .map_err(|e| SearchError::MalformedResponse(e.to_string()))?;
        Ok(body.items)
    }
}

/// One planned query covering an inclusive byte-size range.
#[derive(Clone, Debug, Eq, PartialEq, Serialize)]
pub struct SizeRangeQuery {
    pub min_size: u64,
    pub max_size: u64,
    pub query: String,
    /// Result count expected from the observations used for planning.
    pub expected_results: u64,
}

#[derive(Clone, Debug, Default, Eq, PartialEq, Serialize)]
pub struct SearchPlan {
    pub queries: Vec<SizeRangeQuery>,
    /// Ranges that cannot be split further yet still exceed the cap.
    pub warnings: Vec<String>,
}

pub fn search_query_text(min_size: u64, max_size: u64) -> String {
    format!("type extension:graphql extension:gql size:{min_size}..{max_size} fork:false")
}

/// Bisects [min_size, max_size] until every emitted range's observed count
/// fits under `cap`. `observed_counts` maps exact byte size to result
/// count; sizes absent from the map count zero.
pub fn partition_search_queries(
    min_size: u64,
    max_size: u64,
    cap: u64,
    observed_counts: &BTreeMap<u64, u64>,
) -> SearchPlan {
    assert!(min_size <= max_size, "size range must be ordered");
    let mut plan = SearchPlan::default();
    bisect(min_size, max_size, cap, observed_counts, &mut plan);
    plan
}

fn bisect(min: u64, max: u64, cap: u64, counts: &BTreeMap<u64, u64>, plan: &mut SearchPlan) {
    let total: u64 = counts.range(min..=max).map(|(_, c)| c).sum();
    if total > cap && min < max {
        let mid = min + (max - min) / 2;
        bisect(min, mid, cap, counts, plan);
        bisect(mid + 1, max, cap, counts, plan);
        return;
    }
    if total > cap {
        plan.warnings.push(format!(
            "size {min} alone has {total} results, over the cap of {cap}; results beyond the cap will be missed"
        ));
    }
    plan.queries.push(SizeRangeQuery {
        min_size: min,
        max_size: max,
        query: search_query_text(min, max),
        expected_results: total,
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    #[test]
    fn query_text_matches_the_search_syntax() {
        assert_eq!(
            search_query_text(0, 1024),
            "type extension:graphql extension:gql size:0..1024 fork:false"
        );
    }

    #[test]
    fn under_cap_range_is_a_single_query() {
        let counts = BTreeMap::from([(10, 500), (20, 400)]);
        let plan = partition_search_queries(0, 100, 1000, &counts);
        assert_eq!(plan.queries.len(), 1);
        assert_eq!(plan.queries[0].expected_results, 900);
        assert!(plan.warnings.is_empty());
    }

    #[test]
    fn over_cap_range_bisects_into_compliant_halves() {
        let counts = BTreeMap::from([(25, 1000), (75, 1000)]);
        let plan = partition_search_queries(0, 100, 1000, &counts);
        assert_eq!(
            plan.queries
                .iter()
                .map(|q| (q.min_size, q.max_size, q.expected_results))
                .collect::<Vec<_>>(),
            [(0, 50, 1000), (51, 100, 1000)]
        );
        assert!(plan.warnings.is_empty());
    }

    #[test]
    fn degenerate_over_cap_size_warns_and_keeps_the_range() {
        let counts = BTreeMap::from([(7, 1500)]);
        let plan = partition_search_queries(7, 7, 1000, &counts);
        assert_eq!(plan.queries.len(), 1);
        assert_eq!(plan.queries[0].min_size, 7);
        assert_eq!(plan.warnings.len(), 1);
        assert!(plan.warnings[0].contains("size 7"));
    }

    #[test]
    fn deep_bisection_covers_the_full_range_without_overlap() {
        let counts: BTreeMap<u64, u64> = (0..=64).map(|s| (s, 100)).collect();
        let plan = partition_search_queries(0, 64, 300, &counts);
        let mut next = 0;
        for q in &plan.queries {
            assert_eq!(q.min_size, next, "ranges must tile the interval");
            assert!(q.expected_results <= 300);
            next = q.max_size + 1;
        }
        assert_eq!(next, 65);
    }

    #[test]
    fn replay_tree_synthesizes_urls_and_filters_by_size() {
        let dir = tempfile::tempdir().unwrap();
        fs::create_dir_all(dir.path().join("acme/api/schema")).unwrap();
        fs::write(
            dir.path().join("acme/api/schema/main.graphql"),
            "type Query { a: Int }",
        )
        .unwrap();
        fs::write(dir.path().join("acme/api/tiny.gql"), "scalar X").unwrap();
        let client = ReplaySearchClient::new(dir.path());
        let all = client.search("ignored", (0, u64::MAX)).unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(all[0].repository, "acme/api");
        assert_eq!(all[0].path, "schema/main.graphql");
        assert_eq!(all[0].url, "replay://acme/api/schema/main.graphql");

        let small = client.search("ignored", (0, 10)).unwrap();
        assert_eq!(small.len(), 1);
        assert_eq!(small[0].path, "tiny.gql");
    }

    #[test]
    fn replay_manifest_overrides_the_tree_and_can_repeat_urls() {
        let dir = tempfile::tempdir().unwrap();
        fs::create_dir_all(dir.path().join("acme/api")).unwrap();
        fs::write(dir.path().join("acme/api/one.graphql"), "type Query { a: Int }").unwrap();
        let manifest = serde_json::json!([
            {"url": "https://host/acme/api/one.graphql", "repository": "acme/api", "path": "one.graphql"},
            {"url": "https://host/acme/api/one.graphql", "repository": "acme/api", "path": "one.graphql"},
        ]);
        fs::write(dir.path().join("manifest.json"), manifest.to_string()).unwrap();
        let client = ReplaySearchClient::new(dir.path());
        let hits = client.search("ignored", (0, u64::MAX)).unwrap();
        assert_eq!(hits.len(), 2);
        assert_eq!(hits[0].url, hits[1].url);
    }

    #[test]
    fn live_client_requires_the_token_variable() {
        // The variable is absent in the test environment.
        std::env::remove_var(SEARCH_TOKEN_VAR);
        assert_eq!(
            LiveSearchClient::new("https://example.invalid/search")
                .err()
                .map(|e| e.to_string()),
            Some(format!("missing search token: set {SEARCH_TOKEN_VAR}"))
        );
    }
}
