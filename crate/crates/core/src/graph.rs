//! Simple undirected graphs on at most 64 vertices, stored as bitset rows.

use std::fmt;

use thiserror::Error;

pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex count {0} outside 1..=64")]
    VertexCount(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },
    #[error("unknown construction {0:?}")]
    UnknownConstruction(String),
    #[error("invalid construction parameters: {0}")]
    InvalidParams(String),
}

/// Undirected simple graph. Row `i` holds the neighbourhood of vertex `i` as a bitmask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::VertexCount(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from raw rows. Rows must be symmetric and irreflexive.
    pub(crate) fn from_rows(rows: Vec<u64>) -> Graph {
        debug_assert!(!rows.is_empty() && rows.len() <= MAX_VERTICES);
        let g = Graph {
            n: rows.len(),
            adj: rows,
        };
        debug_assert!(g.is_consistent());
        g
    }

    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        let all = full_mask(n);
        for (i, row) in g.adj.iter_mut().enumerate() {
            *row = all & !(1u64 << i);
        }
        Ok(g)
    }

    /// `K_{m,n}` with parts `0..m` and `m..m+n`.
    pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(m + n)?;
        for u in 0..m {
            for v in m..m + n {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        if n < 3 {
            return Err(GraphError::InvalidParams(format!("cycle needs n >= 3, got {n}")));
        }
        let mut g = Graph::empty(n)?;
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for i in 1..n {
            g.add_edge(i - 1, i);
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// Adds `{u, v}`. Panics on out-of-range or equal endpoints.
    #[inline]
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v, "bad edge ({u}, {v})");
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.add_edge(u, v);
        Ok(())
    }

    #[inline]
    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.remove_edge(u, v);
        g
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            let mut higher = self.adj[u] & !full_mask(u + 1);
            while higher != 0 {
                let v = higher.trailing_zeros() as usize;
                out.push((u, v));
                higher &= higher - 1;
            }
        }
        out
    }

    /// Number of edges with both ends in `mask`.
    pub fn induced_edge_count(&self, mask: u64) -> usize {
        let mut total = 0;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            total += (self.adj[v] & mask).count_ones() as usize;
            m &= m - 1;
        }
        total / 2
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * (self.n - 1) / 2
    }

    pub fn complement(&self) -> Graph {
        let all = full_mask(self.n);
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(i, &r)| !r & all & !(1u64 << i))
            .collect();
        Graph { n: self.n, adj }
    }

    /// Adds a new vertex `n` joined to every existing vertex.
    pub fn cone(&self) -> Result<Graph, GraphError> {
        if self.n >= MAX_VERTICES {
            return Err(GraphError::VertexCount(self.n + 1));
        }
        let apex = self.n;
        let mut adj = self.adj.clone();
        for row in &mut adj {
            *row |= 1 << apex;
        }
        adj.push(full_mask(self.n));
        Ok(Graph { n: self.n + 1, adj })
    }

    /// Removes vertex `v`, shifting higher indices down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        if self.n == 1 {
            return Err(GraphError::VertexCount(0));
        }
        let low = full_mask(v);
        let adj = self
            .adj
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != v)
            .map(|(_, &r)| (r & low) | ((r >> 1) & !low))
            .collect();
        Ok(Graph { n: self.n - 1, adj })
    }

    /// Inverse of coning: deletes the highest-index vertex of degree `n - 1`, if any.
    pub fn uncone(&self) -> Option<Graph> {
        let apex = (0..self.n).rev().find(|&v| self.degree(v) == self.n - 1)?;
        self.delete_vertex(apex).ok()
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for (u, v) in self.edges() {
            adj[perm[u]] |= 1 << perm[v];
            adj[perm[v]] |= 1 << perm[u];
        }
        Graph { n: self.n, adj }
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                next |= self.adj[v];
                f &= f - 1;
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == full_mask(self.n)
    }

    pub(crate) fn is_consistent(&self) -> bool {
        (0..self.n).all(|i| {
            self.adj[i] >> i & 1 == 0
                && self.adj[i] & !full_mask(self.n) == 0
                && (0..self.n).all(|j| self.has_edge(i, j) == self.has_edge(j, i))
        })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}
