//! Canonical labeling by partition refinement and an individualization search
//! tree, pruned with the automorphisms discovered along the way.
//!
//! The canonical graph is the lexicographically greatest adjacency (row-major
//! bitset rows) over the leaves of the search tree. Leaves are compared as
//! relabeled graphs, so every vertex ordering that the refinement allows is
//! considered and isomorphic inputs land on the same leaf graph.

use std::cmp::Ordering;

use crate::graph::Graph;
use crate::graph6::to_graph6;

/// Relabeling-invariant key: the graph6 code of the canonical relabeling.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    code: Vec<u8>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.code
    }

    pub fn as_graph6(&self) -> &str {
        std::str::from_utf8(&self.code).expect("graph6 is ASCII")
    }
}

/// Result of a canonical labeling run.
#[derive(Clone, Debug)]
pub struct Canon {
    /// `labeling[i]` is the original vertex placed at canonical position `i`.
    pub labeling: Vec<usize>,
    /// Inverse of `labeling`: canonical position of each original vertex.
    pub position: Vec<usize>,
    /// Automorphisms found during the search, as vertex maps.
    pub generators: Vec<Vec<usize>>,
    pub graph: Graph,
    pub form: CanonicalForm,
}

impl Canon {
    /// Orbits of the group generated by `generators`, as a representative per vertex.
    pub fn orbits(&self) -> Vec<usize> {
        orbits_of(self.labeling.len(), self.generators.iter().map(Vec::as_slice))
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).form
}

/// Canonically relabeled copy of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    canonical_labeling(g).graph
}

pub fn canonical_labeling(g: &Graph) -> Canon {
    let n = g.n();
    let mut search = Search {
        adj: g.rows(),
        n,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    let mut root = Partition::unit(n);
    root.refine(g.rows(), &[0]);
    let mut path = Vec::with_capacity(n);
    search.descend(root, &mut path);
    let best = search.best.expect("search reaches at least one leaf");
    let labeling: Vec<usize> = best.lab[..n].iter().map(|&v| v as usize).collect();
    let mut position = vec![0; n];
    for (i, &v) in labeling.iter().enumerate() {
        position[v] = i;
    }
    let graph = Graph::from_rows(best.rows);
    let form = CanonicalForm {
        n,
        code: to_graph6(&graph).into_bytes(),
    };
    Canon {
        labeling,
        position,
        generators: search.generators,
        graph,
        form,
    }
}

/// Lexicographically least graph6 code over all `n!` relabelings.
///
/// Brute force, so only offered for `n <= 8`. The key differs from
/// [`canonical_form`] but induces the same equivalence classes.
pub fn exhaustive_form(g: &Graph) -> Option<CanonicalForm> {
    let n = g.n();
    if n > 8 {
        return None;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = to_graph6(&g.relabel(&perm)).into_bytes();
    // Heap's algorithm.
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            let code = to_graph6(&g.relabel(&perm)).into_bytes();
            if code < best {
                best = code;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Some(CanonicalForm { n, code: best })
}

pub(crate) fn orbits_of<'a>(n: usize, gens: impl Iterator<Item = &'a [usize]>) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in gens {
        for (v, &w) in g.iter().enumerate() {
            let (a, b) = (find(&mut parent, v), find(&mut parent, w));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

/// Ordered partition of the vertex set. Cells are contiguous ranges of `lab`;
/// `len[s]` is the length of the cell starting at position `s`, zero elsewhere.
#[derive(Clone)]
struct Partition {
    n: usize,
    lab: [u8; 64],
    len: [u8; 64],
}

impl Partition {
    fn unit(n: usize) -> Partition {
        let mut lab = [0u8; 64];
        for (i, x) in lab.iter_mut().enumerate().take(n) {
            *x = i as u8;
        }
        let mut len = [0u8; 64];
        len[0] = n as u8;
        Partition { n, lab, len }
    }

    fn cell_mask(&self, start: usize) -> u64 {
        self.lab[start..start + self.len[start] as usize]
            .iter()
            .fold(0u64, |m, &v| m | 1 << v)
    }

    fn first_nonsingleton(&self) -> Option<usize> {
        let mut s = 0;
        while s < self.n {
            let l = self.len[s] as usize;
            if l > 1 {
                return Some(s);
            }
            s += l;
        }
        None
    }

    /// Splits cells until the partition is equitable, starting from the given splitters.
    fn refine(&mut self, adj: &[u64], initial: &[usize]) {
        let n = self.n;
        let mut queue: Vec<usize> = Vec::with_capacity(n);
        let mut queued = [false; 64];
        for &s in initial {
            queue.push(s);
            queued[s] = true;
        }
        let mut head = 0;
        let mut keyed = [(0u8, 0u8); 64];
        while head < queue.len() {
            let s = queue[head];
            head += 1;
            queued[s] = false;
            let splitter = self.cell_mask(s);
            let mut c = 0;
            while c < n {
                let l = self.len[c] as usize;
                if l > 1 {
                    let cell = &mut self.lab[c..c + l];
                    let first = (adj[cell[0] as usize] & splitter).count_ones() as u8;
                    let mut uniform = true;
                    for (slot, &v) in keyed.iter_mut().zip(cell.iter()) {
                        let k = (adj[v as usize] & splitter).count_ones() as u8;
                        uniform &= k == first;
                        *slot = (k, v);
                    }
                    if !uniform {
                        let keys = &mut keyed[..l];
                        keys.sort_unstable();
                        for (dst, &(_, v)) in cell.iter_mut().zip(keys.iter()) {
                            *dst = v;
                        }
                        let mut start = 0;
                        for i in 1..=l {
                            if i == l || keys[i].0 != keys[start].0 {
                                self.len[c + start] = (i - start) as u8;
                                if !queued[c + start] {
                                    queued[c + start] = true;
                                    queue.push(c + start);
                                }
                                start = i;
                            }
                        }
                    }
                }
                c += l;
            }
        }
    }

    fn individualize(&self, adj: &[u64], start: usize, v: u8) -> Partition {
        let mut p = self.clone();
        let l = p.len[start] as usize;
        let at = (start..start + l)
            .find(|&i| p.lab[i] == v)
            .expect("vertex lies in the target cell");
        p.lab.swap(start, at);
        p.len[start] = 1;
        p.len[start + 1] = (l - 1) as u8;
        p.refine(adj, &[start]);
        p
    }
}

struct Leaf {
    lab: [u8; 64],
    rows: Vec<u64>,
    path: Vec<u8>,
}

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

fn common_prefix(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl Search<'_> {
    /// Explores the subtree at `part`. Returns `Some(level)` to unwind the
    /// search to the node at depth `level`.
    fn descend(&mut self, part: Partition, path: &mut Vec<u8>) -> Option<usize> {
        let Some(target) = part.first_nonsingleton() else {
            return self.leaf(&part, path);
        };
        let level = path.len();
        let mut cell: Vec<u8> = part.lab[target..target + part.len[target] as usize].to_vec();
        cell.sort_unstable();
        let mut explored: Vec<u8> = Vec::new();
        let mut orbit_cache: Option<(usize, Vec<usize>)> = None;
        for v in cell {
            if !explored.is_empty() {
                if orbit_cache.as_ref().map(|c| c.0) != Some(self.generators.len()) {
                    let fixing = self
                        .generators
                        .iter()
                        .filter(|g| path.iter().all(|&p| g[p as usize] == p as usize));
                    let orbits = orbits_of(self.n, fixing.map(Vec::as_slice));
                    orbit_cache = Some((self.generators.len(), orbits));
                }
                let orbits = &orbit_cache.as_ref().expect("filled above").1;
                if explored.iter().any(|&u| orbits[u as usize] == orbits[v as usize]) {
                    continue;
                }
            }
            let child = part.individualize(self.adj, target, v);
            path.push(v);
            let jump = self.descend(child, path);
            path.pop();
            explored.push(v);
            if let Some(to) = jump {
                if to < level {
                    return Some(to);
                }
            }
        }
        None
    }

    fn leaf(&mut self, part: &Partition, path: &[u8]) -> Option<usize> {
        let n = self.n;
        let mut pos = [0u8; 64];
        for i in 0..n {
            pos[part.lab[i] as usize] = i as u8;
        }
        let rows: Vec<u64> = (0..n)
            .map(|i| {
                let mut r = self.adj[part.lab[i] as usize];
                let mut out = 0u64;
                while r != 0 {
                    let w = r.trailing_zeros() as usize;
                    out |= 1 << pos[w];
                    r &= r - 1;
                }
                out
            })
            .collect();
        let automorphism = |from: &Leaf| -> Vec<usize> {
            let mut g = vec![0usize; n];
            for i in 0..n {
                g[from.lab[i] as usize] = part.lab[i] as usize;
            }
            g
        };
        let Some(first) = &self.first else {
            let leaf = Leaf {
                lab: part.lab,
                rows,
                path: path.to_vec(),
            };
            self.best = Some(Leaf {
                lab: leaf.lab,
                rows: leaf.rows.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if rows == first.rows {
            let g = automorphism(first);
            let to = common_prefix(path, &first.path);
            self.generators.push(g);
            return Some(to);
        }
        let best = self.best.as_ref().expect("set with first");
        match rows.cmp(&best.rows) {
            Ordering::Greater => {
                self.best = Some(Leaf {
                    lab: part.lab,
                    rows,
                    path: path.to_vec(),
                });
                None
            }
            Ordering::Equal => {
                let g = automorphism(best);
                let to = common_prefix(path, &best.path);
                self.generators.push(g);
                Some(to)
            }
            Ordering::Less => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
        let mut g = Graph::empty(n).unwrap();
        for j in 1..n {
            for i in 0..j {
                if rng.gen_bool(p) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    fn shuffled(rng: &mut impl Rng, g: &Graph) -> Graph {
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(rng);
        g.relabel(&perm)
    }

    #[test]
    fn cycle_versus_path() {
        let c5 = Graph::cycle(5).unwrap();
        let p5 = Graph::path(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_ne!(canonical_form(&c5), canonical_form(&p5));
        for _ in 0..20 {
            assert_eq!(canonical_form(&shuffled(&mut rng, &c5)), canonical_form(&c5));
        }
    }

    #[test]
    fn generators_are_automorphisms() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for g in [
            Graph::complete_bipartite(5, 5).unwrap(),
            Graph::cycle(9).unwrap(),
            Graph::empty(7).unwrap(),
            random_graph(&mut rng, 10, 0.4),
        ] {
            let c = canonical_labeling(&g);
            for gen in &c.generators {
                assert_eq!(g.relabel(gen), g);
            }
            assert_eq!(g.relabel(&c.position), c.graph);
        }
    }

    #[test]
    fn cycle_automorphism_orbits_are_transitive() {
        let c = canonical_labeling(&Graph::cycle(8).unwrap());
        assert!(c.orbits().iter().all(|&o| o == 0));
    }

    #[test]
    fn relabeling_invariance_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(1..=10);
            let p = rng.gen_range(0.1..0.9);
            let g = random_graph(&mut rng, n, p);
            let f = canonical_form(&g);
            for _ in 0..100 {
                assert_eq!(canonical_form(&shuffled(&mut rng, &g)), f);
            }
        }
    }

    #[test]
    fn agrees_with_exhaustive_oracle_on_equivalence() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let graphs: Vec<Graph> = (0..150).map(|_| random_graph(&mut rng, 6, 0.5)).collect();
        let fast: Vec<_> = graphs.iter().map(canonical_form).collect();
        let slow: Vec<_> = graphs.iter().map(|g| exhaustive_form(g).unwrap()).collect();
        for i in 0..graphs.len() {
            for j in 0..graphs.len() {
                assert_eq!(fast[i] == fast[j], slow[i] == slow[j], "{i} {j}");
            }
        }
    }

    #[test]
    fn larger_symmetric_graphs() {
        let k = Graph::complete_bipartite(7, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        assert_eq!(canonical_form(&shuffled(&mut rng, &k)), canonical_form(&k));
        let e = Graph::empty(40).unwrap();
        assert_eq!(canonical_labeling(&e).graph, e);
    }
}
