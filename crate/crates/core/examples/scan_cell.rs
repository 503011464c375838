//! Runs one Hendrickson scan cell and prints the counts.
//!
//! ```text
//! cargo run --release --example scan_cell -- 3 8
//! ```

use rigidity::{hendrickson_scan, ScanSpec};

fn main() {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("usage: scan_cell <d> <n>"))
        .collect();
    let (d, n) = match args[..] {
        [d, n] => (d, n),
        _ => (3, 7),
    };
    let report = hendrickson_scan(&ScanSpec::new(d, n)).expect("scan succeeds");
    println!(
        "d={d} n={n}: candidates={} redundant+connected={} globally_rigid={} H={:?} ({:.2}s)",
        report.candidates_generated,
        report.redundant_and_connected_count,
        report.globally_rigid_count,
        report.h_graphs,
        report.wall_time
    );
}
