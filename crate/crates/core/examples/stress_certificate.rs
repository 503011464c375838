//! Computes the equilibrium stress of `K_{5,5}` at a random placement and the
//! rank of its stress matrix, which falls short of `n - d - 1`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rigidity::{rigidity_matrix, stress_matrix, target_rank, Graph, Placement, StressVector};

fn main() {
    let (d, g) = (3, Graph::complete_bipartite(5, 5).unwrap());
    let n = g.n();
    let p = Placement::random(n, d, &mut ChaCha8Rng::seed_from_u64(0));
    let r = rigidity_matrix(&g, d, &p).unwrap();
    println!(
        "rigidity matrix {}x{}, rank {} (rigid at {})",
        r.rows(),
        r.cols(),
        r.rank(),
        target_rank(n, d)
    );
    let stresses = r.left_kernel_basis();
    println!("stress space dimension {}", stresses.len());
    let w = StressVector(stresses[0].clone());
    println!("equilibrium: {}", w.is_equilibrium(&g, d, &p).unwrap());
    let support = w.0.iter().filter(|x| !x.is_zero()).count();
    println!("nonzero on {support} of {} edges", g.edge_count());
    let omega = stress_matrix(&g, &w).unwrap();
    println!(
        "stress matrix rank {} (global rigidity needs {})",
        omega.rank(),
        n - d - 1
    );
}
