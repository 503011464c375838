//! Combinatorial rigidity for small graphs.
//!
//! Decides generic `d`-rigidity, redundant rigidity, `(d+1)`-connectivity and
//! global rigidity with exact rank computations over a 64-bit prime field, and
//! enumerates graphs isomorph-free to count the ones that are redundantly
//! rigid and `(d+1)`-connected but not globally rigid (H-graphs, the
//! counterexamples to Hendrickson's conjecture). `K_{5,5}` is the smallest
//! such graph in dimension 3.
//!
//! ```
//! use rigidity::{classify, Graph};
//!
//! let k55 = Graph::complete_bipartite(5, 5).unwrap();
//! let profile = classify(&k55, 3, 3, 0).unwrap();
//! assert!(profile.is_h);
//! ```

pub mod canon;
pub mod cli;
pub mod connectivity;
pub mod constructions;
pub mod enumerate;
pub mod field;
pub mod graph;
pub mod graph6;
pub mod matrix;
pub mod rigidity;
pub mod scan;

pub use canon::{canonical_form, canonical_graph, canonical_labeling, exhaustive_form, CanonicalForm};
pub use connectivity::{is_k_connected, vertex_connectivity};
pub use constructions::{build_named, Construction};
pub use field::{Fp, MODULUS};
pub use graph::{Graph, GraphError};
pub use graph6::{from_graph6, to_graph6};
pub use matrix::FFMatrix;
pub use rigidity::{
    classify, is_globally_rigid, is_redundantly_rigid, is_rigid, rigidity_matrix, sparsity_tight, stress_matrix,
    target_rank, Placement, RigidityError, RigidityProfile, Stage, StressVector, DEFAULT_TRIALS,
};
pub use scan::{generate_candidates, hendrickson_scan, table_report, ScanError, ScanReport, ScanSpec, Table};
