//! Named graph families: complete and complete bipartite graphs, and the two
//! cyclic gluings of six blocks (six `K_5`, six `K_{5,5}`).

use std::fmt;
use std::str::FromStr;

use crate::graph::{Graph, GraphError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    Complete(usize),
    CompleteBipartite(usize, usize),
    /// Six `K_5` blocks glued cyclically along edges. 18 vertices.
    GluedK5Cycle,
    /// Six `K_{5,5}` blocks glued cyclically along edges. 48 vertices.
    GluedK55Cycle,
}

impl Construction {
    /// Parses a construction name with its integer parameters.
    pub fn parse(name: &str, params: &[usize]) -> Result<Construction, GraphError> {
        let arity = |want: usize| {
            if params.len() == want {
                Ok(())
            } else {
                Err(GraphError::InvalidParams(format!(
                    "{name} takes {want} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        match name {
            "complete" => {
                arity(1)?;
                Ok(Construction::Complete(params[0]))
            }
            "complete_bipartite" => {
                arity(2)?;
                Ok(Construction::CompleteBipartite(params[0], params[1]))
            }
            "glued_k5_cycle" => {
                arity(0)?;
                Ok(Construction::GluedK5Cycle)
            }
            "glued_k55_cycle" => {
                arity(0)?;
                Ok(Construction::GluedK55Cycle)
            }
            other => Err(GraphError::UnknownConstruction(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Construction::Complete(_) => "complete",
            Construction::CompleteBipartite(..) => "complete_bipartite",
            Construction::GluedK5Cycle => "glued_k5_cycle",
            Construction::GluedK55Cycle => "glued_k55_cycle",
        }
    }

    /// The removable edges drawn in red for the glued cycles: five of the six
    /// edges shared by consecutive blocks.
    pub fn red_edges(&self) -> Vec<(usize, usize)> {
        match self {
            Construction::GluedK5Cycle => (1..=5).map(|i| (k5_a(i), k5_b(i))).collect(),
            Construction::GluedK55Cycle => [5, 9, 13, 17, 21].into_iter().map(|k| (k55_a(k), k55_b(k))).collect(),
            _ => Vec::new(),
        }
    }

    pub fn build(&self, remove_red_edges: bool) -> Result<Graph, GraphError> {
        let mut g = match *self {
            Construction::Complete(n) => Graph::complete(n)?,
            Construction::CompleteBipartite(m, n) => {
                if m == 0 || n == 0 {
                    return Err(GraphError::InvalidParams(format!(
                        "complete_bipartite needs positive part sizes, got {m} {n}"
                    )));
                }
                Graph::complete_bipartite(m, n)?
            }
            Construction::GluedK5Cycle => glued_k5_cycle(),
            Construction::GluedK55Cycle => glued_k55_cycle(),
        };
        if remove_red_edges {
            let red = self.red_edges();
            if red.is_empty() {
                return Err(GraphError::InvalidParams(format!(
                    "{} has no removable red edges",
                    self.name()
                )));
            }
            for (u, v) in red {
                g.remove_edge(u, v);
            }
        }
        Ok(g)
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Complete(n) => write!(f, "complete {n}"),
            Construction::CompleteBipartite(m, n) => write!(f, "complete_bipartite {m} {n}"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for Construction {
    type Err = GraphError;

    /// Accepts `"name p1 p2 ..."`.
    fn from_str(s: &str) -> Result<Construction, GraphError> {
        let mut words = s.split_whitespace();
        let name = words
            .next()
            .ok_or_else(|| GraphError::UnknownConstruction(String::new()))?;
        let params = words
            .map(|w| {
                w.parse::<usize>()
                    .map_err(|_| GraphError::InvalidParams(format!("not a count: {w:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Construction::parse(name, &params)
    }
}

/// Convenience wrapper over [`Construction::parse`] and [`Construction::build`].
pub fn build_named(name: &str, params: &[usize], remove_red_edges: bool) -> Result<Graph, GraphError> {
    Construction::parse(name, params)?.build(remove_red_edges)
}

// Vertices a_i, b_i, c_i (i in Z_6) sit at i, 6 + i, 12 + i.
fn k5_a(i: usize) -> usize {
    i % 6
}
fn k5_b(i: usize) -> usize {
    6 + i % 6
}
fn k5_c(i: usize) -> usize {
    12 + i % 6
}

/// Block `i` is the `K_5` on `{a_i, a_{i+1}, b_i, b_{i+1}, c_i}`; consecutive
/// blocks share the edge `a_{i+1} b_{i+1}`.
fn glued_k5_cycle() -> Graph {
    let mut g = Graph::empty(18).expect("18 vertices");
    for i in 0..6 {
        let block = [k5_a(i), k5_a(i + 1), k5_b(i), k5_b(i + 1), k5_c(i)];
        for (x, &u) in block.iter().enumerate() {
            for &v in &block[x + 1..] {
                g.add_edge(u, v);
            }
        }
    }
    g
}

// Vertices a_j, b_j for j in Z_24 (1-based indices as drawn) sit at j-1 and 24 + j-1.
fn k55_a(j: usize) -> usize {
    (j - 1) % 24
}
fn k55_b(j: usize) -> usize {
    24 + (j - 1) % 24
}

/// Block `t` is complete bipartite between `a_{4t+1..=4t+5}` and
/// `b_{4t+1..=4t+5}` (indices mod 24), so consecutive blocks share the
/// vertices `a_{4t+5}`, `b_{4t+5}` and the edge between them.
fn glued_k55_cycle() -> Graph {
    let mut g = Graph::empty(48).expect("48 vertices");
    for t in 0..6 {
        for x in 0..5 {
            for y in 0..5 {
                g.add_edge(k55_a(4 * t + 1 + x), k55_b(4 * t + 1 + y));
            }
        }
    }
    g
}
