//! Reads graph6 lines from stdin, prints their size and canonical form.
//!
//! ```text
//! printf 'D~{\nDQo\n' | cargo run --example graph6_io
//! ```

use std::io::BufRead;

use rigidity::{canonical_form, from_graph6};

fn main() {
    for line in std::io::stdin().lock().lines() {
        let line = line.unwrap();
        match from_graph6(&line) {
            Ok(g) => println!(
                "{line}\tn={} m={} canonical={}",
                g.n(),
                g.edge_count(),
                canonical_form(&g).as_graph6()
            ),
            Err(e) => println!("{line}\terror: {e}"),
        }
    }
}
