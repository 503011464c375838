//! Builds the two glued cycles of blocks (six `K_5` and six `K_{5,5}`) and
//! shows that they stay H-graphs in dimension 3 after deleting the five
//! marked edges.

use rigidity::{classify, Construction, DEFAULT_TRIALS};

fn main() {
    for c in [Construction::GluedK5Cycle, Construction::GluedK55Cycle] {
        println!("{c}: red edges {:?}", c.red_edges());
        for remove in [false, true] {
            let g = c.build(remove).unwrap();
            let p = classify(&g, 3, DEFAULT_TRIALS, 0).unwrap();
            println!(
                "  {:<13} n={} edges={} redundant={} 4-connected={} globally_rigid={} H={}",
                if remove { "without red" } else { "full" },
                p.n,
                p.edge_count,
                p.redundantly_rigid,
                p.connectivity_ok,
                p.globally_rigid,
                p.is_h
            );
        }
    }
}
