use rigidity::scan::read_results_log;
use rigidity::{hendrickson_scan, ScanError, ScanReport, ScanSpec};

fn counts(r: &ScanReport) -> (u64, u64, u64, Vec<String>, u64) {
    (
        r.candidates_generated,
        r.redundant_and_connected_count,
        r.globally_rigid_count,
        r.h_graphs.clone(),
        r.hendrickson_violations,
    )
}

#[test]
fn worker_count_does_not_change_results() {
    let mut spec = ScanSpec::new(3, 8);
    spec.workers = 1;
    let one = hendrickson_scan(&spec).unwrap();
    for w in [2, 4] {
        spec.workers = w;
        assert_eq!(counts(&hendrickson_scan(&spec).unwrap()), counts(&one), "workers={w}");
    }
}

#[test]
fn split_depth_does_not_change_results() {
    let base = counts(&hendrickson_scan(&ScanSpec::new(4, 9)).unwrap());
    for depth in [0, 1, 2, 5] {
        let mut spec = ScanSpec::new(4, 9);
        spec.split_depth = depth;
        assert_eq!(counts(&hendrickson_scan(&spec).unwrap()), base, "depth={depth}");
    }
}

#[test]
fn interrupted_scan_resumes_from_log() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("scan.ndjson");
    let full = hendrickson_scan(&ScanSpec::new(3, 8)).unwrap();

    let mut spec = ScanSpec::new(3, 8);
    spec.workers = 1;
    spec.results_log = Some(log.clone());
    spec.max_candidates = Some(100);
    match hendrickson_scan(&spec) {
        Err(ScanError::ResourceBound { partial, .. }) => {
            assert!(!partial.complete);
            assert!(partial.candidates_generated < full.candidates_generated);
        }
        other => panic!("expected a partial report, got {other:?}"),
    }
    let logged = read_results_log(&log).unwrap();
    assert!(!logged.is_empty());

    spec.max_candidates = None;
    let resumed = hendrickson_scan(&spec).unwrap();
    assert!(resumed.complete);
    assert_eq!(counts(&resumed), counts(&full));
    // Every subtree is now recorded exactly once.
    let mut ids: Vec<usize> = read_results_log(&log).unwrap().iter().map(|r| r.subtree).collect();
    ids.sort();
    assert_eq!(ids, (0..resumed.subtrees).collect::<Vec<_>>());
}

#[test]
fn corrupt_log_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("scan.ndjson");
    std::fs::write(&log, "{not json\n").unwrap();
    let mut spec = ScanSpec::new(3, 6);
    spec.results_log = Some(log);
    assert!(matches!(hendrickson_scan(&spec), Err(ScanError::Log { line: 1, .. })));
}

#[test]
fn invalid_specs_are_rejected() {
    for spec in [ScanSpec::new(0, 5), ScanSpec::new(3, 4), ScanSpec::new(3, 15)] {
        assert!(matches!(hendrickson_scan(&spec), Err(ScanError::InvalidSpec(_))));
    }
}
