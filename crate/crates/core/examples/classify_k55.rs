//! Classifies `K_{5,5}` in dimension 3, the smallest graph that is redundantly
//! rigid and 4-connected without being globally rigid.
//!
//! ```text
//! cargo run --release --example classify_k55
//! ```

use rigidity::{classify, to_graph6, vertex_connectivity, Graph, DEFAULT_TRIALS};

fn main() {
    let g = Graph::complete_bipartite(5, 5).unwrap();
    let p = classify(&g, 3, DEFAULT_TRIALS, 0).unwrap();
    println!("graph6            {}", to_graph6(&g));
    println!("vertices, edges   {}, {}", p.n, p.edge_count);
    println!("connectivity      {}", vertex_connectivity(&g));
    println!("rigid             {}", p.rigid);
    println!("redundantly rigid {}", p.redundantly_rigid);
    println!("globally rigid    {}", p.globally_rigid);
    println!("H-graph           {}", p.is_h);
}
