use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use lds4_oeis::{
    query_hash, LookupSource, LookupStatus, OeisClient, OeisError, SourcePolicy, Transport, TransportError,
};
use num_bigint::BigInt;

struct Canned {
    body: Result<String, String>,
    calls: Arc<AtomicUsize>,
}

impl Transport for Canned {
    fn get(&self, url: &str) -> Result<String, TransportError> {
        assert!(url.starts_with("https://oeis.org/search?q="));
        assert!(url.ends_with("&fmt=json"));
        self.calls.fetch_add(1, Ordering::SeqCst);
        self.body.clone().map_err(TransportError)
    }
}

fn client(body: Result<&str, &str>, cache: Option<&std::path::Path>) -> (OeisClient, Arc<AtomicUsize>) {
    let calls = Arc::new(AtomicUsize::new(0));
    let t = Canned {
        body: body.map(str::to_string).map_err(str::to_string),
        calls: calls.clone(),
    };
    let c = OeisClient::new(Box::new(t), cache.map(|p| p.to_path_buf())).with_min_interval(Duration::ZERO);
    (c, calls)
}

fn terms(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

const FIB: [i64; 8] = [0, 1, 1, 2, 3, 5, 8, 13];
const BODY: &str = r#"[{"number": 45, "name": "Fibonacci numbers", "data": "0,1,1,2,3,5,8,13,21,34"}, {"number": 6355, "name": "other", "data": "1,0,2,2,4"}]"#;

#[test]
fn fixture_finds_fibonacci() {
    let (c, calls) = client(Err("offline"), None);
    let out = c.lookup(&terms(&FIB), SourcePolicy::Fixture).unwrap();
    assert_eq!(out.status, LookupStatus::Found);
    assert_eq!(out.source, Some(LookupSource::Fixture));
    assert!(out.matches.iter().any(|m| m.sequence_id.as_str() == "A000045"));
    assert_eq!(out.matches[0].matched_prefix_length, 8);
    assert_eq!(out, c.lookup(&terms(&FIB), SourcePolicy::Fixture).unwrap());
    assert_eq!(calls.load(Ordering::SeqCst), 0);
}

#[test]
fn fixture_without_recording_is_unavailable() {
    let (c, _) = client(Err("offline"), None);
    let out = c.lookup(&terms(&[1, 6, 29, 144, 725, 3654, 18409]), SourcePolicy::Fixture).unwrap();
    assert!(matches!(out.status, LookupStatus::Unavailable(_)));
    assert_eq!(out.source, None);
}

#[test]
fn too_few_terms() {
    let (c, _) = client(Ok(BODY), None);
    assert!(matches!(
        c.lookup(&terms(&[1, 2, 3]), SourcePolicy::CacheFirst),
        Err(OeisError::TooFewTerms(3))
    ));
}

#[test]
fn network_failure_is_a_status() {
    let (c, calls) = client(Err("connection refused"), None);
    let out = c.lookup(&terms(&FIB), SourcePolicy::CacheFirst).unwrap();
    assert_eq!(out.status, LookupStatus::Unavailable("connection refused".into()));
    assert_eq!(calls.load(Ordering::SeqCst), 1);
}

#[test]
fn cache_round_trip_is_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (c, calls) = client(Ok(BODY), Some(dir.path()));
    let live = c.lookup(&terms(&FIB), SourcePolicy::CacheFirst).unwrap();
    assert_eq!(live.source, Some(LookupSource::Live));
    let file = dir.path().join(format!("{}.json", query_hash("0,1,1,2,3,5,8,13")));
    assert!(file.exists());
    assert_eq!(c.read_cache("0,1,1,2,3,5,8,13").unwrap().unwrap().body, BODY);

    let cached = c.lookup(&terms(&FIB), SourcePolicy::CacheFirst).unwrap();
    assert_eq!(cached.source, Some(LookupSource::Cache));
    assert_eq!(cached.matches, live.matches);
    assert_eq!(calls.load(Ordering::SeqCst), 1);

    // a fresh offline client sees the same cache
    let (offline, _) = client(Err("offline"), Some(dir.path()));
    let again = offline.lookup(&terms(&FIB), SourcePolicy::CacheOnly).unwrap();
    assert_eq!(again.matches, live.matches);
}

#[test]
fn cache_only_miss() {
    let dir = tempfile::tempdir().unwrap();
    let (c, calls) = client(Ok(BODY), Some(dir.path()));
    let out = c.lookup(&terms(&FIB), SourcePolicy::CacheOnly).unwrap();
    assert!(matches!(out.status, LookupStatus::Unavailable(_)));
    assert_eq!(calls.load(Ordering::SeqCst), 0);
}

#[test]
fn no_matches_distinct_from_unavailable() {
    let (c, _) = client(Ok("null"), None);
    let out = c.lookup(&terms(&[1, 6, 29, 144]), SourcePolicy::LiveOnly).unwrap();
    assert_eq!(out.status, LookupStatus::NoMatches);
    assert_eq!(out.source, Some(LookupSource::Live));
}

#[test]
fn malformed_response_is_reported() {
    let (c, _) = client(Ok("<html>"), None);
    match c.lookup(&terms(&FIB), SourcePolicy::LiveOnly) {
        Err(OeisError::Malformed { raw, .. }) => assert_eq!(raw, "<html>"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn live_requests_are_rate_limited_across_threads() {
    let (c, calls) = client(Ok(BODY), None);
    let c = Arc::new(c.with_min_interval(Duration::from_millis(150)));
    let start = Instant::now();
    let handles: Vec<_> = (0..3)
        .map(|_| {
            let c = c.clone();
            std::thread::spawn(move || c.lookup(&terms(&FIB), SourcePolicy::LiveOnly).unwrap())
        })
        .collect();
    for h in handles {
        assert_eq!(h.join().unwrap().status, LookupStatus::Found);
    }
    assert_eq!(calls.load(Ordering::SeqCst), 3);
    assert!(start.elapsed() >= Duration::from_millis(300));
}
