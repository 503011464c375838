//! Vertex connectivity of a few familiar graphs.

use rigidity::{vertex_connectivity, Construction, Graph};

fn main() {
    let graphs = [
        ("K_6", Graph::complete(6).unwrap()),
        ("K_{3,7}", Graph::complete_bipartite(3, 7).unwrap()),
        ("C_9", Graph::cycle(9).unwrap()),
        ("P_5", Graph::path(5).unwrap()),
        ("glued K_5 cycle", Construction::GluedK5Cycle.build(false).unwrap()),
        ("glued K_5,5 cycle", Construction::GluedK55Cycle.build(false).unwrap()),
    ];
    for (name, g) in graphs {
        println!("{name:<18} n={:<3} kappa={}", g.n(), vertex_connectivity(&g));
    }
}
