//! Generic rigidity, redundant rigidity and global rigidity of bar-joint
//! frameworks, decided by rank computations at random placements over `GF(p)`.
//!
//! Every answer is one-sided: a `true` is backed by a witness placement (and,
//! for global rigidity, a witness stress), while a `false` can be wrong with
//! probability at most `(deg / p)^trials`, where `deg ≤ 2dn`.
//!
//! A single trial draws a placement `ρ`, eliminates `R(G, ρ)ᵀ` once and reads
//! off three things: the rank of `R`, the space of equilibrium stresses (its
//! left kernel) and, from the stress supports, which edges lie in a circuit of
//! the rigidity matroid. An edge carried by some stress can be deleted without
//! dropping the rank, so that one elimination also certifies rigidity of each
//! `G - e`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::CanonicalForm;
use crate::connectivity::is_k_connected;
use crate::field::Fp;
use crate::graph::Graph;
use crate::matrix::{random_combination, FFMatrix};

pub const DEFAULT_TRIALS: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RigidityError {
    #[error("dimension must be at least 1")]
    InvalidDimension,
    #[error("at least one trial is required")]
    ZeroTrials,
    #[error("placement is {rows}x{cols}, expected {n}x{d}")]
    PlacementShape {
        rows: usize,
        cols: usize,
        n: usize,
        d: usize,
    },
    #[error("stress has {got} entries but the graph has {expected} edges")]
    StressLength { expected: usize, got: usize },
}

fn binom2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

/// Generic rank of the rigidity matrix of `K_n` in dimension `d`.
pub fn target_rank(n: usize, d: usize) -> usize {
    if n > d {
        d * n - binom2(d + 1)
    } else {
        binom2(n)
    }
}

/// An `n × d` array of field coordinates standing in for a generic placement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placement {
    n: usize,
    d: usize,
    coords: Vec<Fp>,
}

impl Placement {
    /// Uniform nonzero coordinates with pairwise distinct rows.
    pub fn random<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Placement {
        loop {
            let coords: Vec<Fp> = (0..n * d).map(|_| Fp::random_nonzero(rng)).collect();
            let p = Placement { n, d, coords };
            if p.rows_distinct() {
                return p;
            }
        }
    }

    /// Integer coordinates, row-major `n × d`.
    pub fn from_i64(n: usize, d: usize, coords: &[i64]) -> Placement {
        assert_eq!(coords.len(), n * d);
        Placement {
            n,
            d,
            coords: coords.iter().map(|&c| Fp::from_i64(c)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn point(&self, v: usize) -> &[Fp] {
        &self.coords[v * self.d..(v + 1) * self.d]
    }

    /// Column `k` of the placement, i.e. coordinate `k` of every vertex.
    pub fn column(&self, k: usize) -> Vec<Fp> {
        (0..self.n).map(|v| self.coords[v * self.d + k]).collect()
    }

    fn rows_distinct(&self) -> bool {
        (0..self.n).all(|u| (u + 1..self.n).all(|v| self.point(u) != self.point(v)))
    }
}

/// `|E| × dn` rigidity matrix, rows in lexicographic edge order.
pub fn rigidity_matrix(g: &Graph, d: usize, placement: &Placement) -> Result<FFMatrix, RigidityError> {
    check_placement(g, d, placement)?;
    let edges = g.edges();
    let cols = d * g.n();
    let mut m = FFMatrix::zeros(edges.len(), cols);
    for (r, &(u, v)) in edges.iter().enumerate() {
        for k in 0..d {
            let diff = placement.point(u)[k] - placement.point(v)[k];
            m[(r, u * d + k)] = diff;
            m[(r, v * d + k)] = -diff;
        }
    }
    Ok(m)
}

fn check_placement(g: &Graph, d: usize, placement: &Placement) -> Result<(), RigidityError> {
    if placement.n != g.n() || placement.d != d {
        return Err(RigidityError::PlacementShape {
            rows: placement.n,
            cols: placement.d,
            n: g.n(),
            d,
        });
    }
    Ok(())
}

/// `R(G, ρ)ᵀ`, built directly: one row per coordinate, one column per edge.
fn rigidity_matrix_transposed(edges: &[(usize, usize)], d: usize, placement: &Placement) -> FFMatrix {
    let m = edges.len();
    let mut t = FFMatrix::zeros(d * placement.n, m);
    for (c, &(u, v)) in edges.iter().enumerate() {
        for k in 0..d {
            let diff = placement.point(u)[k] - placement.point(v)[k];
            t[(u * d + k, c)] = diff;
            t[(v * d + k, c)] = -diff;
        }
    }
    t
}

/// Edge weights `ω`, indexed like the rows of the rigidity matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StressVector(pub Vec<Fp>);

impl StressVector {
    pub fn is_equilibrium(&self, g: &Graph, d: usize, placement: &Placement) -> Result<bool, RigidityError> {
        let r = rigidity_matrix(g, d, placement)?;
        if self.0.len() != r.rows() {
            return Err(RigidityError::StressLength {
                expected: r.rows(),
                got: self.0.len(),
            });
        }
        Ok(r.vec_mul(&self.0).iter().all(|x| x.is_zero()))
    }
}

/// The `n × n` stress matrix `Ω`: `-ω_uv` off the diagonal on edges, row sums zero.
pub fn stress_matrix(g: &Graph, stress: &StressVector) -> Result<FFMatrix, RigidityError> {
    let edges = g.edges();
    if stress.0.len() != edges.len() {
        return Err(RigidityError::StressLength {
            expected: edges.len(),
            got: stress.0.len(),
        });
    }
    let n = g.n();
    let mut omega = FFMatrix::zeros(n, n);
    for (&(u, v), &w) in edges.iter().zip(&stress.0) {
        omega[(u, v)] = -w;
        omega[(v, u)] = -w;
        omega[(u, u)] += w;
        omega[(v, v)] += w;
    }
    Ok(omega)
}

/// Seed for trial `t` of a graph evaluated under `seed`.
pub fn mix_seed(seed: u64, salt: u64) -> u64 {
    fn splitmix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    splitmix(seed ^ splitmix(salt))
}

/// Per-graph seed from a global seed and the graph's canonical form, so that
/// answers do not depend on evaluation order or vertex labels.
pub fn graph_seed(seed: u64, form: &CanonicalForm) -> u64 {
    let mut h: u64 = 0xCBF2_9CE4_8422_2325;
    for &b in form.as_bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01B3);
    }
    mix_seed(seed, h)
}

/// Lazily runs random trials and caches what they certify.
pub(crate) struct Sampler<'g> {
    g: &'g Graph,
    d: usize,
    edges: Vec<(usize, usize)>,
    target: usize,
    seed: u64,
    trials: u32,
    used: u32,
    rigid: bool,
    globally_rigid: bool,
    certified: Vec<bool>,
    uncertified: usize,
}

impl<'g> Sampler<'g> {
    pub(crate) fn new(g: &'g Graph, d: usize, trials: u32, seed: u64) -> Result<Sampler<'g>, RigidityError> {
        if d == 0 {
            return Err(RigidityError::InvalidDimension);
        }
        if trials == 0 {
            return Err(RigidityError::ZeroTrials);
        }
        let edges = g.edges();
        let m = edges.len();
        Ok(Sampler {
            g,
            d,
            target: target_rank(g.n(), d),
            edges,
            seed,
            trials,
            used: 0,
            rigid: false,
            globally_rigid: false,
            certified: vec![false; m],
            uncertified: m,
        })
    }

    pub(crate) fn trials_used(&self) -> u32 {
        self.used
    }

    fn wants_global(&self) -> bool {
        self.g.n() >= self.d + 2 && self.edges.len() > self.target
    }

    fn run_trial(&mut self) {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(self.seed, self.used as u64));
        self.used += 1;
        let n = self.g.n();
        let placement = Placement::random(n, self.d, &mut rng);
        let echelon = rigidity_matrix_transposed(&self.edges, self.d, &placement).echelon();
        if echelon.rank() != self.target {
            return;
        }
        self.rigid = true;
        let stresses = echelon.kernel_basis();
        if self.uncertified > 0 {
            for s in &stresses {
                for (e, w) in s.iter().enumerate() {
                    if !w.is_zero() && !self.certified[e] {
                        self.certified[e] = true;
                        self.uncertified -= 1;
                    }
                }
            }
        }
        if !self.globally_rigid && self.wants_global() {
            if let Some(w) = random_combination(&stresses, &mut rng) {
                let omega = stress_matrix(self.g, &StressVector(w)).expect("stress indexed by edges");
                if omega.rank() == n - self.d - 1 {
                    self.globally_rigid = true;
                }
            }
        }
    }

    pub(crate) fn rigid(&mut self) -> bool {
        while !self.rigid && self.used < self.trials {
            self.run_trial();
        }
        self.rigid
    }

    pub(crate) fn globally_rigid(&mut self) -> bool {
        if self.g.n() <= self.d + 1 {
            return self.g.is_complete();
        }
        if !self.wants_global() {
            return false;
        }
        while !self.globally_rigid && self.used < self.trials {
            self.run_trial();
        }
        self.globally_rigid
    }

    pub(crate) fn redundantly_rigid(&mut self) -> bool {
        if self.g.n() == 1 {
            return true;
        }
        if self.edges.len() < self.target + 1 {
            return false;
        }
        while (!self.rigid || self.uncertified > 0) && self.used < self.trials {
            self.run_trial();
        }
        self.rigid && self.uncertified == 0
    }

    /// Whatever global rigidity the trials run so far have certified.
    pub(crate) fn globally_rigid_known(&self) -> bool {
        if self.g.n() <= self.d + 1 {
            self.g.is_complete()
        } else {
            self.globally_rigid
        }
    }
}

pub fn is_rigid(g: &Graph, d: usize, trials: u32, seed: u64) -> Result<bool, RigidityError> {
    Ok(Sampler::new(g, d, trials, seed)?.rigid())
}

pub fn is_redundantly_rigid(g: &Graph, d: usize, trials: u32, seed: u64) -> Result<bool, RigidityError> {
    Ok(Sampler::new(g, d, trials, seed)?.redundantly_rigid())
}

pub fn is_globally_rigid(g: &Graph, d: usize, trials: u32, seed: u64) -> Result<bool, RigidityError> {
    Ok(Sampler::new(g, d, trials, seed)?.globally_rigid())
}

/// `|E| = dn - C(d+1, 2)` and no induced subgraph on `≥ d` vertices exceeds
/// the analogous count.
///
/// Up to 12 vertices every subset is checked. Beyond that only connected
/// subsets are searched: a violating set always has a violating component.
pub fn sparsity_tight(g: &Graph, d: usize) -> bool {
    let n = g.n();
    let bound = |k: usize| (d * k) as i64 - binom2(d + 1) as i64;
    if g.edge_count() as i64 != bound(n) {
        return false;
    }
    let violates = |mask: u64| {
        let k = mask.count_ones() as usize;
        k >= d && g.induced_edge_count(mask) as i64 > bound(k)
    };
    if n <= 12 {
        return !(1u64..(1 << n)).any(violates);
    }
    !any_connected_subset(g, &violates)
}

/// Enumerates connected vertex subsets by extension from their minimum vertex.
fn any_connected_subset(g: &Graph, pred: &dyn Fn(u64) -> bool) -> bool {
    fn grow(g: &Graph, set: u64, frontier: u64, banned: u64, pred: &dyn Fn(u64) -> bool) -> bool {
        if pred(set) {
            return true;
        }
        let mut options = frontier & !banned;
        let mut banned = banned;
        while options != 0 {
            let v = options.trailing_zeros() as usize;
            options &= options - 1;
            let next = set | 1 << v;
            let next_frontier = (frontier | g.neighbors(v)) & !next;
            if grow(g, next, next_frontier, banned, pred) {
                return true;
            }
            banned |= 1 << v;
        }
        false
    }
    (0..g.n()).any(|v| {
        let lower = (1u64 << v) - 1;
        let start = 1u64 << v;
        grow(g, start, g.neighbors(v) & !lower, lower | start, pred)
    })
}

/// Classification of one graph in one dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidityProfile {
    pub n: usize,
    pub d: usize,
    pub edge_count: usize,
    /// `(d+1)`-connected.
    pub connectivity_ok: bool,
    pub rigid: bool,
    pub redundantly_rigid: bool,
    pub globally_rigid: bool,
    /// Redundantly rigid and `(d+1)`-connected but not globally rigid.
    pub is_h: bool,
    /// `n ≥ d + 2`; below that only the complete-graph rule applies and
    /// `is_h` is always false.
    pub in_scope: bool,
    pub trials_used: u32,
}

/// Fills every predicate, cheapest first: edge count, minimum degree,
/// connectivity, rigidity, global rigidity, redundancy.
pub fn classify(g: &Graph, d: usize, trials: u32, seed: u64) -> Result<RigidityProfile, RigidityError> {
    let mut sampler = Sampler::new(g, d, trials, seed)?;
    let n = g.n();
    let in_scope = n >= d + 2;
    let connectivity_ok = g.min_degree() > d && is_k_connected(g, d + 1);
    let rigid = sampler.rigid();
    let globally_rigid = sampler.globally_rigid();
    let redundantly_rigid = sampler.redundantly_rigid();
    Ok(RigidityProfile {
        n,
        d,
        edge_count: g.edge_count(),
        connectivity_ok,
        rigid,
        redundantly_rigid,
        globally_rigid,
        is_h: in_scope && connectivity_ok && redundantly_rigid && !globally_rigid,
        in_scope,
        trials_used: sampler.trials_used(),
    })
}

/// Stages of the Hendrickson filter, evaluated in a configurable order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stage {
    Connectivity,
    Rigidity,
    GlobalRigidity,
    Redundancy,
}

pub const DEFAULT_ORDER: [Stage; 4] = [
    Stage::Connectivity,
    Stage::Rigidity,
    Stage::GlobalRigidity,
    Stage::Redundancy,
];

/// Outcome of the short-circuiting filter used by the scan.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Verdict {
    /// `(d+1)`-connected and redundantly rigid.
    pub redundant_connected: bool,
    pub globally_rigid: bool,
    /// Globally rigid yet failing connectivity or redundancy.
    pub hendrickson_violation: bool,
    /// Stopped at the connectivity test, no rigidity trials run.
    pub rejected_by_connectivity: bool,
}

impl Verdict {
    pub fn is_h(&self) -> bool {
        self.redundant_connected && !self.globally_rigid
    }
}

/// Short-circuiting classification for graphs with `n ≥ d + 2`.
///
/// Stops as soon as the graph is known not to be redundantly rigid and
/// `connectivity`-connected. Global rigidity is only settled for graphs that
/// pass both, so `globally_rigid` may under-report for rejected graphs.
pub fn hendrickson_verdict(
    g: &Graph,
    d: usize,
    connectivity: usize,
    trials: u32,
    seed: u64,
    order: &[Stage],
) -> Result<Verdict, RigidityError> {
    let mut sampler = Sampler::new(g, d, trials, seed)?;
    let mut v = Verdict::default();
    let mut connected = None;
    let mut redundant = None;
    let mut global = None;
    for stage in order {
        match stage {
            Stage::Connectivity => {
                let ok = is_k_connected(g, connectivity);
                connected = Some(ok);
                if !ok {
                    v.rejected_by_connectivity = sampler.trials_used() == 0;
                    break;
                }
            }
            Stage::Rigidity => {
                if !sampler.rigid() {
                    redundant = Some(false);
                    break;
                }
            }
            Stage::GlobalRigidity => global = Some(sampler.globally_rigid()),
            Stage::Redundancy => {
                let ok = sampler.redundantly_rigid();
                redundant = Some(ok);
                if !ok {
                    break;
                }
            }
        }
    }
    let connected = connected.unwrap_or_else(|| is_k_connected(g, connectivity));
    if connected && redundant.is_none() {
        redundant = Some(sampler.redundantly_rigid());
    }
    v.redundant_connected = connected && redundant == Some(true);
    if v.redundant_connected && global.is_none() {
        global = Some(sampler.globally_rigid());
    }
    v.globally_rigid = global.unwrap_or(false) || sampler.globally_rigid_known();
    v.hendrickson_violation = v.globally_rigid && !v.redundant_connected && redundant.is_some();
    Ok(v)
}

/// `k² - 2k - d - 2ℓ`: the degree-sum slack when a redundantly rigid graph on
/// `d + k` vertices with `dn - C(d+1,2) + ℓ` edges has no vertex of degree
/// `n - 1`. It is negative for `d ≥ 23`, `k ≤ 6`, `ℓ ≥ 1`.
pub fn degree_lemma_slack(d: i64, k: i64, excess: i64) -> i64 {
    k * k - 2 * k - d - 2 * excess
}

/// Whether the edge count alone forces a vertex adjacent to all others
/// (`2|E| > n(n-2)`).
pub fn forces_dominating_vertex(n: usize, edges: usize) -> bool {
    2 * edges > n * n.saturating_sub(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_rank_values() {
        assert_eq!(target_rank(5, 3), 9);
        assert_eq!(target_rank(10, 3), 24);
        assert_eq!(target_rank(3, 3), 3);
        assert_eq!(target_rank(1, 2), 0);
        assert_eq!(target_rank(4, 3), 6);
    }

    #[test]
    fn single_edge_matrix() {
        let g = Graph::complete(2).unwrap();
        let p = Placement::from_i64(2, 1, &[0, 1]);
        let r = rigidity_matrix(&g, 1, &p).unwrap();
        assert_eq!(r, FFMatrix::from_i64_rows(&[vec![-1, 1]]));
        assert!(rigidity_matrix(&g, 2, &p).is_err());
    }

    #[test]
    fn stress_matrix_examples() {
        let g = Graph::complete(2).unwrap();
        let s = Fp::new(7);
        let omega = stress_matrix(&g, &StressVector(vec![s])).unwrap();
        assert_eq!(omega, FFMatrix::from_i64_rows(&[vec![7, -7], vec![-7, 7]]));
        assert_eq!(omega.rank(), 1);
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(stress_matrix(&k4, &StressVector(vec![Fp::ZERO; 6])).unwrap().rank(), 0);
        assert!(matches!(
            stress_matrix(&k4, &StressVector(vec![Fp::ONE; 5])),
            Err(RigidityError::StressLength { expected: 6, got: 5 })
        ));
    }

    #[test]
    fn basic_rigidity() {
        let k5 = Graph::complete(5).unwrap();
        assert!(is_rigid(&k5, 3, 3, 0).unwrap());
        assert!(is_rigid(&Graph::complete(3).unwrap(), 2, 3, 0).unwrap());
        assert!(!is_rigid(&Graph::cycle(4).unwrap(), 2, 3, 0).unwrap());
        assert!(is_redundantly_rigid(&k5, 3, 3, 0).unwrap());
        assert!(!is_redundantly_rigid(&k5.without_edge(0, 1), 3, 3, 0).unwrap());
        assert!(is_globally_rigid(&k5, 3, 3, 0).unwrap());
        assert_eq!(is_rigid(&k5, 0, 3, 0), Err(RigidityError::InvalidDimension));
        assert_eq!(is_rigid(&k5, 3, 0, 0), Err(RigidityError::ZeroTrials));
    }

    #[test]
    fn small_n_uses_complete_graph_rule() {
        let k4 = Graph::complete(4).unwrap();
        assert!(is_globally_rigid(&k4, 3, 3, 1).unwrap());
        assert!(!is_globally_rigid(&k4.without_edge(0, 1), 3, 3, 1).unwrap());
        let p = classify(&k4, 3, 3, 1).unwrap();
        assert!(!p.in_scope && !p.is_h && p.rigid && !p.redundantly_rigid);
    }

    #[test]
    fn tightness() {
        let k5 = Graph::complete(5).unwrap();
        assert!(!sparsity_tight(&k5, 3));
        assert!(sparsity_tight(&k5.without_edge(0, 1), 3));
        assert!(!sparsity_tight(&Graph::complete_bipartite(6, 6).unwrap(), 3));
        // K_5 followed by eight degree-3 vertex additions, 13 vertices: above the
        // connected-subset threshold.
        let mut g = Graph::empty(13).unwrap();
        for (u, v) in Graph::complete(5).unwrap().edges() {
            g.add_edge(u, v);
        }
        for v in 5..13 {
            g.add_edge(v, v - 1);
            g.add_edge(v, v - 2);
            g.add_edge(v, v - 3);
        }
        assert_eq!(g.edge_count(), 3 * 13 - 6 + 1);
        g.remove_edge(12, 9);
        assert_eq!(g.edge_count(), 3 * 13 - 6);
        assert!(!sparsity_tight(&g, 3), "K_5 block violates the count");
        let mut h = g.clone();
        h.remove_edge(0, 1);
        h.add_edge(12, 9);
        assert!(sparsity_tight(&h, 3));
    }

    #[test]
    fn degree_lemma_grid() {
        for d in 23..=200 {
            for k in 2..=6 {
                for l in 1..=50 {
                    assert!(degree_lemma_slack(d, k, l) < 0);
                }
            }
        }
        assert!(degree_lemma_slack(22, 6, 1) >= 0);
    }

    #[test]
    fn dominating_vertex_bound() {
        // K_5 minus a perfect-ish matching: 8 edges on 5 vertices, degrees 3,3,3,3,4.
        assert!(forces_dominating_vertex(5, 8));
        assert!(!forces_dominating_vertex(6, 12));
    }
}
