//! Isomorph-free generation of sparse graphs by canonical edge augmentation.
//!
//! The scan works in complement space: a dense candidate on `n = d + k`
//! vertices with at least `dn - C(d+1,2) + 1` edges has a complement with at
//! most `C(k,2) - 1` edges, and minimum degree `≥ d + 1` becomes maximum
//! complement degree `≤ k - 2`. Both bounds are hereditary under edge
//! deletion, so the generation tree below is closed under taking parents.
//!
//! The parent of a graph `C` is `C - e*`, where `e*` is the canonical deletion
//! edge: among edges with the largest cheap invariant, the one with the
//! greatest canonical position pair. A child `P + x` is accepted only if its
//! canonical parent is isomorphic to `P`; siblings are deduplicated by
//! canonical form. Each isomorphism class is therefore produced exactly once.

use std::collections::HashSet;

use crate::canon::{canonical_form, canonical_labeling, Canon, CanonicalForm};
use crate::graph::Graph;

/// Limits on the generated (sparse) graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SparseBounds {
    pub n: usize,
    pub max_edges: usize,
    pub max_degree: usize,
}

/// A node of the generation tree.
#[derive(Clone, Debug)]
pub struct Node {
    pub graph: Graph,
    pub canon: Canon,
}

impl Node {
    pub fn root(n: usize) -> Node {
        let graph = Graph::empty(n).expect("valid vertex count");
        let canon = canonical_labeling(&graph);
        Node { graph, canon }
    }

    pub fn form(&self) -> &CanonicalForm {
        &self.canon.form
    }
}

#[inline]
fn pair_index(u: usize, v: usize) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    b * (b - 1) / 2 + a
}

fn pair_of(index: usize) -> (usize, usize) {
    let mut b = 1;
    while (b + 1) * b / 2 <= index {
        b += 1;
    }
    (index - b * (b - 1) / 2, b)
}

/// Representatives of the orbits of unordered vertex pairs under `generators`.
fn pair_orbit_roots(n: usize, generators: &[Vec<usize>]) -> Vec<usize> {
    let total = n * (n - 1) / 2;
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in generators {
        for i in 0..total {
            let (u, v) = pair_of(i);
            let j = pair_index(g[u], g[v]);
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    (0..total).map(|i| find(&mut parent, i)).collect()
}

/// Cheap isomorphism-invariant ranking of an edge.
#[inline]
fn edge_key(g: &Graph, u: usize, v: usize) -> (u32, u32, u32) {
    let (du, dv) = (g.neighbors(u).count_ones(), g.neighbors(v).count_ones());
    let common = (g.neighbors(u) & g.neighbors(v)).count_ones();
    (du.max(dv), du.min(dv), common)
}

fn same_edge_orbit(generators: &[Vec<usize>], a: (usize, usize), b: (usize, usize)) -> bool {
    let key = |(u, v): (usize, usize)| if u < v { (u, v) } else { (v, u) };
    let target = key(b);
    let start = key(a);
    if start == target {
        return true;
    }
    let mut seen = HashSet::from([start]);
    let mut stack = vec![start];
    while let Some((u, v)) = stack.pop() {
        for g in generators {
            let img = key((g[u], g[v]));
            if img == target {
                return true;
            }
            if seen.insert(img) {
                stack.push(img);
            }
        }
    }
    false
}

/// Accepted children of `node`, in a deterministic order.
pub fn children(node: &Node, bounds: &SparseBounds) -> Vec<Node> {
    let g = &node.graph;
    let n = g.n();
    if n < 2 || g.edge_count() >= bounds.max_edges {
        return Vec::new();
    }
    let roots = pair_orbit_roots(n, &node.canon.generators);
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    let mut out = Vec::new();
    for (i, &root) in roots.iter().enumerate() {
        if root != i {
            continue;
        }
        let (u, v) = pair_of(i);
        if g.has_edge(u, v) || g.degree(u) >= bounds.max_degree || g.degree(v) >= bounds.max_degree {
            continue;
        }
        let mut child = g.clone();
        child.add_edge(u, v);
        let key = edge_key(&child, u, v);
        let edges = child.edges();
        let best_key = edges
            .iter()
            .map(|&(a, b)| edge_key(&child, a, b))
            .max()
            .expect("child has an edge");
        if key < best_key {
            continue;
        }
        let canon = canonical_labeling(&child);
        let pos = &canon.position;
        let deletion = edges
            .iter()
            .copied()
            .filter(|&(a, b)| edge_key(&child, a, b) == best_key)
            .max_by_key(|&(a, b)| (pos[a].max(pos[b]), pos[a].min(pos[b])))
            .expect("at least one edge attains the maximum");
        let accepted = same_edge_orbit(&canon.generators, (u, v), deletion)
            || canonical_form(&child.without_edge(deletion.0, deletion.1)) == node.canon.form;
        if accepted && seen.insert(canon.form.clone()) {
            out.push(Node { graph: child, canon });
        }
    }
    out
}

/// Depth-first traversal of the subtree at `node` (including `node`).
/// The visitor returns `false` to abort; the traversal then returns `false`.
pub fn walk(node: &Node, bounds: &SparseBounds, visit: &mut dyn FnMut(&Node) -> bool) -> bool {
    if !visit(node) {
        return false;
    }
    for child in children(node, bounds) {
        if !walk(&child, bounds, visit) {
            return false;
        }
    }
    true
}

/// Splits the tree at `depth` edges: returns the nodes shallower than `depth`
/// and the frontier nodes at exactly `depth`, both in traversal order.
pub fn split(bounds: &SparseBounds, depth: usize) -> (Vec<Node>, Vec<Node>) {
    let mut shallow = Vec::new();
    let mut frontier = Vec::new();
    fn rec(node: Node, bounds: &SparseBounds, depth: usize, shallow: &mut Vec<Node>, frontier: &mut Vec<Node>) {
        if node.graph.edge_count() == depth {
            frontier.push(node);
            return;
        }
        let kids = children(&node, bounds);
        shallow.push(node);
        for k in kids {
            rec(k, bounds, depth, shallow, frontier);
        }
    }
    rec(Node::root(bounds.n), bounds, depth, &mut shallow, &mut frontier);
    (shallow, frontier)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_classes(bounds: &SparseBounds) -> Vec<CanonicalForm> {
        let mut out = Vec::new();
        walk(&Node::root(bounds.n), bounds, &mut |node| {
            out.push(node.canon.form.clone());
            true
        });
        out
    }

    #[test]
    fn pair_indexing_roundtrip() {
        for i in 0..200 {
            let (a, b) = pair_of(i);
            assert!(a < b);
            assert_eq!(pair_index(a, b), i);
        }
    }

    /// Counts of unlabeled graphs on n vertices (OEIS A000088).
    #[test]
    fn counts_all_graphs() {
        for (n, expected) in [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156), (7, 1044)] {
            let b = SparseBounds {
                n,
                max_edges: n * (n - 1) / 2,
                max_degree: n,
            };
            let forms = all_classes(&b);
            let distinct: HashSet<_> = forms.iter().cloned().collect();
            assert_eq!(forms.len(), expected, "n={n}");
            assert_eq!(distinct.len(), expected);
        }
    }

    /// Graphs on 8 vertices by edge count (OEIS A008406 row 8), first ten entries.
    #[test]
    fn counts_by_edges_on_eight_vertices() {
        let b = SparseBounds {
            n: 8,
            max_edges: 9,
            max_degree: 8,
        };
        let mut by_edges = [0usize; 10];
        walk(&Node::root(8), &b, &mut |node| {
            by_edges[node.graph.edge_count()] += 1;
            true
        });
        assert_eq!(by_edges, [1, 1, 2, 5, 11, 24, 56, 115, 221, 402]);
    }

    #[test]
    fn split_covers_the_tree() {
        let b = SparseBounds {
            n: 7,
            max_edges: 8,
            max_degree: 3,
        };
        let whole = all_classes(&b).len();
        let (shallow, frontier) = split(&b, 3);
        let mut count = shallow.len();
        for f in &frontier {
            walk(f, &b, &mut |_| {
                count += 1;
                true
            });
        }
        assert_eq!(count, whole);
    }
}
