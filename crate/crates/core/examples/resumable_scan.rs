//! Runs a scan with a candidate budget and a results log, then resumes it.
//!
//! ```text
//! cargo run --release --example resumable_scan -- /tmp/scan.ndjson
//! ```

use rigidity::{hendrickson_scan, ScanError, ScanSpec};

fn main() {
    let log = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "resumable_scan.ndjson".into());
    let _ = std::fs::remove_file(&log);
    let mut spec = ScanSpec::new(3, 9);
    spec.results_log = Some(log.clone().into());
    spec.max_candidates = Some(2000);
    match hendrickson_scan(&spec) {
        Err(ScanError::ResourceBound { partial, .. }) => {
            println!("stopped after {} candidates", partial.candidates_generated)
        }
        Ok(r) => println!("finished early: {} candidates", r.candidates_generated),
        Err(e) => panic!("{e}"),
    }
    spec.max_candidates = None;
    let r = hendrickson_scan(&spec).unwrap();
    println!(
        "resumed: {} candidates, {} redundant+connected, {} globally rigid, {} H-graphs (log {log})",
        r.candidates_generated,
        r.redundant_and_connected_count,
        r.globally_rigid_count,
        r.h_graphs.len()
    );
}
