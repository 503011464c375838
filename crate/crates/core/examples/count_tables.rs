//! Reproduces the count tables for d = 3, 4, 5 up to n = d + k_max.
//!
//! ```text
//! cargo run --release --example count_tables -- 6
//! ```
//!
//! `k_max = 6` takes a few seconds; `k_max = 7` adds the long d=3, n=10 cell.

use rigidity::{table_report, ScanSpec};

fn main() {
    let k_max = std::env::args()
        .nth(1)
        .map_or(6, |a| a.parse().expect("usage: count_tables [k_max]"));
    let table = table_report(&[3, 4, 5], k_max, &ScanSpec::new(3, 5));
    print!("{}", table.to_csv());
}
