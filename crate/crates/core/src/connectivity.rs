//! Vertex connectivity via unit-capacity max-flow on the vertex-split digraph.

use crate::graph::Graph;

/// Residual network with vertex `v` split into `2v` (in) and `2v + 1` (out).
struct SplitNetwork {
    size: usize,
    cap: Vec<u8>,
}

impl SplitNetwork {
    fn new(g: &Graph, s: usize, t: usize) -> SplitNetwork {
        let n = g.n();
        let size = 2 * n;
        let big = n.min(255) as u8;
        let mut cap = vec![0u8; size * size];
        for v in 0..n {
            let c = if v == s || v == t { big } else { 1 };
            cap[(2 * v) * size + 2 * v + 1] = c;
        }
        for (u, v) in g.edges() {
            cap[(2 * u + 1) * size + 2 * v] = big;
            cap[(2 * v + 1) * size + 2 * u] = big;
        }
        SplitNetwork { size, cap }
    }

    fn augment(&mut self, source: usize, sink: usize) -> bool {
        let size = self.size;
        let mut prev = vec![usize::MAX; size];
        prev[source] = source;
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            if x == sink {
                break;
            }
            for y in 0..size {
                if prev[y] == usize::MAX && self.cap[x * size + y] > 0 {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if prev[sink] == usize::MAX {
            return false;
        }
        let mut y = sink;
        while y != source {
            let x = prev[y];
            self.cap[x * size + y] -= 1;
            self.cap[y * size + x] += 1;
            y = x;
        }
        true
    }
}

/// Number of internally vertex-disjoint `s`–`t` paths, capped at `limit`.
/// `s` and `t` must be distinct and non-adjacent.
pub fn local_connectivity(g: &Graph, s: usize, t: usize, limit: usize) -> usize {
    debug_assert!(s != t && !g.has_edge(s, t));
    let mut net = SplitNetwork::new(g, s, t);
    let mut flow = 0;
    while flow < limit && net.augment(2 * s + 1, 2 * t) {
        flow += 1;
    }
    flow
}

/// Size of a minimum vertex cut; `n - 1` for complete graphs.
///
/// A minimum cut of size `κ` misses one of any `κ + 1` vertices, so it is
/// enough to run flows from the first `κ + 1` vertices to their non-neighbours.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.n();
    let mut best = n.saturating_sub(1);
    if g.is_complete() {
        return best;
    }
    best = best.min(g.min_degree());
    let mut i = 0;
    while i <= best && i < n {
        let non_nbrs = (0..n).filter(|&t| t != i && !g.has_edge(i, t));
        for t in non_nbrs {
            best = best.min(local_connectivity(g, i, t, best));
        }
        i += 1;
    }
    best
}

/// `κ(G) >= k`, with early exit.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    let n = g.n();
    if k == 0 {
        return true;
    }
    if n <= k || g.min_degree() < k {
        return false;
    }
    for s in 0..k {
        for t in 0..n {
            if t != s && !g.has_edge(s, t) && local_connectivity(g, s, t, k) < k {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Smallest vertex set whose removal disconnects `g` (or leaves one vertex).
    fn brute_connectivity(g: &Graph) -> usize {
        let n = g.n();
        let mut best = n - 1;
        for mask in 0u64..(1 << n) {
            let k = mask.count_ones() as usize;
            if k >= best || n - k < 2 {
                continue;
            }
            let keep: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 0).collect();
            let mut sub = Graph::empty(keep.len()).unwrap();
            for (a, &u) in keep.iter().enumerate() {
                for (b, &v) in keep.iter().enumerate().skip(a + 1) {
                    if g.has_edge(u, v) {
                        sub.add_edge(a, b);
                    }
                }
            }
            if !sub.is_connected() {
                best = k;
            }
        }
        best
    }

    #[test]
    fn complete_and_bipartite() {
        assert_eq!(vertex_connectivity(&Graph::complete(5).unwrap()), 4);
        for m in 2..=7 {
            for n in 2..=7 {
                let k = Graph::complete_bipartite(m, n).unwrap();
                assert_eq!(vertex_connectivity(&k), m.min(n), "K_{m},{n}");
            }
        }
    }

    #[test]
    fn disconnected_and_paths() {
        assert_eq!(vertex_connectivity(&Graph::empty(4).unwrap()), 0);
        assert_eq!(vertex_connectivity(&Graph::path(5).unwrap()), 1);
        assert_eq!(vertex_connectivity(&Graph::cycle(6).unwrap()), 2);
        assert!(is_k_connected(&Graph::cycle(6).unwrap(), 2));
        assert!(!is_k_connected(&Graph::cycle(6).unwrap(), 3));
        assert!(!is_k_connected(&Graph::complete(4).unwrap(), 4));
    }

    #[test]
    fn matches_brute_force_and_coning_adds_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(2..=8);
            let mut g = Graph::empty(n).unwrap();
            for j in 1..n {
                for i in 0..j {
                    if rng.gen_bool(0.55) {
                        g.add_edge(i, j);
                    }
                }
            }
            let k = brute_connectivity(&g);
            assert_eq!(vertex_connectivity(&g), k, "{g:?}");
            for t in 0..=n {
                assert_eq!(is_k_connected(&g, t), k >= t);
            }
            if g.is_connected() && !g.is_complete() {
                let c = g.cone().unwrap();
                assert_eq!(brute_connectivity(&c), k + 1);
                assert_eq!(vertex_connectivity(&c), k + 1);
            }
        }
    }
}
