//! Lookup of integer sequences in the OEIS.
//!
//! Lookups go through an [`OeisClient`], which owns a [`Transport`], an
//! optional cache directory and a rate limiter. Network failures are never
//! returned as errors: they surface as [`LookupStatus::Unavailable`].

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::thread;
use std::time::{Duration, Instant, SystemTime, UNIX_EPOCH};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub const SEARCH_URL: &str = "https://oeis.org/search";
pub const CACHE_ENV: &str = "LDS4_OEIS_CACHE";
pub const MIN_TERMS: usize = 4;
pub const MIN_INTERVAL: Duration = Duration::from_secs(2);

#[derive(Debug, Error)]
pub enum OeisError {
    #[error("at least {MIN_TERMS} terms are required, got {0}")]
    TooFewTerms(usize),
    #[error("malformed response: {message}")]
    Malformed { message: String, raw: String },
    #[error("invalid sequence id {0:?}")]
    InvalidId(String),
    #[error("cache i/o: {0}")]
    Cache(#[from] io::Error),
}

#[derive(Debug, Error)]
#[error("{0}")]
pub struct TransportError(pub String);

/// Fetches a URL and returns the response body.
pub trait Transport: Send + Sync {
    fn get(&self, url: &str) -> Result<String, TransportError>;
}

/// HTTPS transport over `reqwest`.
pub struct HttpTransport {
    client: reqwest::blocking::Client,
}

impl HttpTransport {
    pub fn new(timeout: Duration) -> Result<Self, TransportError> {
        let client = reqwest::blocking::Client::builder()
            .timeout(timeout)
            .user_agent(concat!("lds4/", env!("CARGO_PKG_VERSION")))
            .build()
            .map_err(|e| TransportError(e.to_string()))?;
        Ok(HttpTransport { client })
    }
}

impl Transport for HttpTransport {
    fn get(&self, url: &str) -> Result<String, TransportError> {
        let resp = self
            .client
            .get(url)
            .send()
            .and_then(|r| r.error_for_status())
            .map_err(|e| TransportError(e.to_string()))?;
        resp.text().map_err(|e| TransportError(e.to_string()))
    }
}

/// A-number such as `A000045`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SequenceId(String);

impl SequenceId {
    pub fn parse(s: &str) -> Result<Self, OeisError> {
        let digits = s.strip_prefix('A').unwrap_or("");
        if (6..=7).contains(&digits.len()) && digits.bytes().all(|b| b.is_ascii_digit()) {
            Ok(SequenceId(s.to_string()))
        } else {
            Err(OeisError::InvalidId(s.to_string()))
        }
    }

    pub fn from_number(n: u64) -> Result<Self, OeisError> {
        Self::parse(&format!("A{n:06}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OeisMatch {
    pub sequence_id: SequenceId,
    pub name: String,
    /// Longest prefix of the query found as a contiguous run in the
    /// listed terms.
    pub matched_prefix_length: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LookupSource {
    Live,
    Cache,
    Fixture,
}

impl LookupSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            LookupSource::Live => "live",
            LookupSource::Cache => "cache",
            LookupSource::Fixture => "fixture",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SourcePolicy {
    /// Cache, then the live service; live results are written to the cache.
    #[default]
    CacheFirst,
    CacheOnly,
    /// Skip the cache read but still store the result.
    LiveOnly,
    /// Pinned responses bundled with the crate; never touches the network.
    Fixture,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LookupStatus {
    Found,
    NoMatches,
    Unavailable(String),
}

impl LookupStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            LookupStatus::Found => "found",
            LookupStatus::NoMatches => "no_matches",
            LookupStatus::Unavailable(_) => "unavailable",
        }
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            LookupStatus::Unavailable(r) => Some(r),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LookupOutcome {
    pub query: String,
    pub status: LookupStatus,
    pub source: Option<LookupSource>,
    pub matches: Vec<OeisMatch>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub query: String,
    /// Seconds since the Unix epoch.
    pub fetched_at: u64,
    pub body: String,
}

pub fn query_string(terms: &[BigInt]) -> String {
    terms.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",")
}

pub fn query_hash(query: &str) -> String {
    hex::encode(Sha256::digest(query.as_bytes()))
}

pub fn search_url(query: &str) -> String {
    format!("{SEARCH_URL}?q={query}&fmt=json")
}

fn fixtures() -> HashMap<&'static str, &'static str> {
    HashMap::from([("0,1,1,2,3,5,8,13", include_str!("../fixtures/fibonacci.json"))])
}

#[derive(Deserialize)]
struct RawResult {
    number: u64,
    #[serde(default)]
    name: String,
    #[serde(default)]
    data: String,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawBody {
    /// Current format: a bare array, or `null` for no hits.
    List(Option<Vec<RawResult>>),
    /// Older format with a `results` field.
    Wrapped { results: Option<Vec<RawResult>> },
}

fn matched_prefix(query: &[String], data: &[&str]) -> usize {
    (1..=query.len())
        .rev()
        .find(|&len| data.windows(len).any(|w| w.iter().zip(&query[..len]).all(|(a, b)| *a == b)))
        .unwrap_or(0)
}

/// Parses either response format into matches, in service order.
pub fn parse_response(query: &str, body: &str) -> Result<Vec<OeisMatch>, OeisError> {
    let malformed = |message: String| OeisError::Malformed {
        message,
        raw: body.to_string(),
    };
    let parsed: RawBody = serde_json::from_str(body).map_err(|e| malformed(e.to_string()))?;
    let results = match parsed {
        RawBody::List(r) | RawBody::Wrapped { results: r } => r.unwrap_or_default(),
    };
    let q: Vec<String> = query.split(',').map(str::to_string).collect();
    results
        .into_iter()
        .map(|r| {
            let data: Vec<&str> = r.data.split(',').map(str::trim).collect();
            Ok(OeisMatch {
                sequence_id: SequenceId::from_number(r.number).map_err(|e| malformed(e.to_string()))?,
                name: r.name,
                matched_prefix_length: matched_prefix(&q, &data),
            })
        })
        .collect()
}

pub struct OeisClient {
    transport: Box<dyn Transport>,
    cache_dir: Option<PathBuf>,
    min_interval: Duration,
    last_request: Mutex<Option<Instant>>,
}

impl OeisClient {
    pub fn new(transport: Box<dyn Transport>, cache_dir: Option<PathBuf>) -> Self {
        OeisClient {
            transport,
            cache_dir,
            min_interval: MIN_INTERVAL,
            last_request: Mutex::new(None),
        }
    }

    /// HTTPS client; cache directory from the argument or `LDS4_OEIS_CACHE`.
    pub fn live(cache_dir: Option<PathBuf>) -> Result<Self, TransportError> {
        let dir = cache_dir.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
        Ok(Self::new(Box::new(HttpTransport::new(Duration::from_secs(20))?), dir))
    }

    pub fn with_min_interval(mut self, interval: Duration) -> Self {
        self.min_interval = interval;
        self
    }

    pub fn cache_dir(&self) -> Option<&Path> {
        self.cache_dir.as_deref()
    }

    fn cache_path(&self, query: &str) -> Option<PathBuf> {
        self.cache_dir.as_ref().map(|d| d.join(format!("{}.json", query_hash(query))))
    }

    pub fn read_cache(&self, query: &str) -> Result<Option<CacheEntry>, OeisError> {
        let Some(path) = self.cache_path(query) else {
            return Ok(None);
        };
        match fs::read_to_string(&path) {
            Ok(text) => serde_json::from_str(&text).map(Some).map_err(|e| OeisError::Malformed {
                message: format!("cache file {}: {e}", path.display()),
                raw: text,
            }),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    fn write_cache(&self, query: &str, body: &str) -> Result<(), OeisError> {
        let Some(path) = self.cache_path(query) else {
            return Ok(());
        };
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        let fetched_at = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let entry = CacheEntry {
            query: query.to_string(),
            fetched_at,
            body: body.to_string(),
        };
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string_pretty(&entry).expect("serializable"))?;
        fs::rename(tmp, path)?;
        Ok(())
    }

    /// Serialized, rate-limited request.
    fn fetch(&self, query: &str) -> Result<String, TransportError> {
        let mut last = self.last_request.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(prev) = *last {
            let wait = self.min_interval.saturating_sub(prev.elapsed());
            if !wait.is_zero() {
                thread::sleep(wait);
            }
        }
        let result = self.transport.get(&search_url(query));
        *last = Some(Instant::now());
        result
    }

    pub fn lookup(&self, terms: &[BigInt], policy: SourcePolicy) -> Result<LookupOutcome, OeisError> {
        if terms.len() < MIN_TERMS {
            return Err(OeisError::TooFewTerms(terms.len()));
        }
        let query = query_string(terms);
        let outcome = |source, matches: Vec<OeisMatch>| LookupOutcome {
            query: query.clone(),
            status: if matches.is_empty() {
                LookupStatus::NoMatches
            } else {
                LookupStatus::Found
            },
            source: Some(source),
            matches,
        };
        let unavailable = |reason: String| LookupOutcome {
            query: query.clone(),
            status: LookupStatus::Unavailable(reason),
            source: None,
            matches: Vec::new(),
        };

        if policy == SourcePolicy::Fixture {
            return match fixtures().get(query.as_str()) {
                Some(body) => Ok(outcome(LookupSource::Fixture, parse_response(&query, body)?)),
                None => Ok(unavailable("no fixture recorded for this query".into())),
            };
        }
        if matches!(policy, SourcePolicy::CacheFirst | SourcePolicy::CacheOnly) {
            if let Some(entry) = self.read_cache(&query)? {
                return Ok(outcome(LookupSource::Cache, parse_response(&query, &entry.body)?));
            }
            if policy == SourcePolicy::CacheOnly {
                return Ok(unavailable("query not in cache".into()));
            }
        }
        match self.fetch(&query) {
            Ok(body) => {
                let matches = parse_response(&query, &body)?;
                self.write_cache(&query, &body)?;
                Ok(outcome(LookupSource::Live, matches))
            }
            Err(e) => Ok(unavailable(e.0)),
        }
    }
}

/// Lookup with a default live client (cache from `LDS4_OEIS_CACHE`).
pub fn lookup(terms: &[BigInt], policy: SourcePolicy) -> Result<LookupOutcome, OeisError> {
    match OeisClient::live(None) {
        Ok(client) => client.lookup(terms, policy),
        Err(e) if terms.len() >= MIN_TERMS => Ok(LookupOutcome {
            query: query_string(terms),
            status: LookupStatus::Unavailable(e.0),
            source: None,
            matches: Vec::new(),
        }),
        Err(_) => Err(OeisError::TooFewTerms(terms.len())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn id_validation() {
        assert!(SequenceId::parse("A000045").is_ok());
        assert!(SequenceId::parse("A1234567").is_ok());
        assert!(SequenceId::parse("A12345").is_err());
        assert!(SequenceId::parse("B000045").is_err());
        assert!(SequenceId::parse("A00004x").is_err());
        assert_eq!(SequenceId::from_number(45).unwrap().as_str(), "A000045");
    }

    #[test]
    fn parses_both_formats() {
        let new = r#"[{"number": 45, "name": "Fibonacci", "data": "0,1,1,2,3,5,8,13,21"}]"#;
        let old = r#"{"greeting": "hi", "results": [{"number": 45, "name": "Fibonacci", "data": "1,1,2,3,5"}]}"#;
        let a = parse_response("0,1,1,2,3,5,8,13", new).unwrap();
        assert_eq!(a[0].matched_prefix_length, 8);
        let b = parse_response("0,1,1,2,3,5,8,13", old).unwrap();
        assert_eq!(b[0].sequence_id.as_str(), "A000045");
        assert_eq!(b[0].matched_prefix_length, 0);
        assert!(parse_response("1,2,3,4", "null").unwrap().is_empty());
        assert!(parse_response("1,2,3,4", r#"{"results": null}"#).unwrap().is_empty());
    }

    #[test]
    fn malformed_keeps_payload() {
        match parse_response("1,2,3,4", "<html>busy</html>") {
            Err(OeisError::Malformed { raw, .. }) => assert_eq!(raw, "<html>busy</html>"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn hash_is_stable() {
        assert_eq!(query_hash("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
