//! Cones `K_{5,5}` repeatedly; each cone is an H-graph one dimension up.

use rigidity::{classify, Graph, DEFAULT_TRIALS};

fn main() {
    let mut g = Graph::complete_bipartite(5, 5).unwrap();
    for d in 3..=7 {
        let p = classify(&g, d, DEFAULT_TRIALS, 0).unwrap();
        println!(
            "d={d} n={:>2} edges={:>3} redundant={} connected={} globally_rigid={} H={}",
            p.n, p.edge_count, p.redundantly_rigid, p.connectivity_ok, p.globally_rigid, p.is_h
        );
        g = g.cone().unwrap();
    }
}
