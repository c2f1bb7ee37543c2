//! Explicit multigraphs, the rooted block plans they are materialized from,
//! and the edge-list file format.

mod edgelist;
mod plan;

pub use edgelist::{read_edge_list, write_edge_list, EdgeListError};
pub use plan::{
    counts, materialize, try_counts, Block, ChordSpec, ConstructionPlan, Counts, Materialized,
    PlanError, PlanSource, DEFAULT_VERTEX_CAP,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {index} is a self-loop on vertex {vertex}")]
    SelfLoop { index: usize, vertex: usize },
    #[error("edge {index} endpoint {vertex} is out of range for {vertex_count} vertices")]
    OutOfRange {
        index: usize,
        vertex: usize,
        vertex_count: usize,
    },
}

/// Undirected multigraph on vertices `0..vertex_count`.
///
/// Parallel edges are allowed, self-loops are not. Every stored edge has its
/// smaller endpoint first and the edge order is whatever the caller supplied.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let mut edges = edges;
        for (index, e) in edges.iter_mut().enumerate() {
            let (u, v) = *e;
            for vertex in [u, v] {
                if vertex >= vertex_count {
                    return Err(GraphError::OutOfRange {
                        index,
                        vertex,
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { index, vertex: u });
            }
            *e = (u.min(v), u.max(v));
        }
        Ok(Graph {
            vertex_count,
            edges,
        })
    }

    /// Vertices only, no edges.
    pub fn empty(vertex_count: usize) -> Self {
        Graph {
            vertex_count,
            edges: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbour lists of `(neighbour, edge index)` pairs.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        adj
    }

    pub fn component_count(&self) -> usize {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count];
        let mut components = 0;
        let mut stack = Vec::new();
        for start in 0..self.vertex_count {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            stack.push(start);
            while let Some(u) = stack.pop() {
                for &(w, _) in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// `E - V + c`: the dimension of the cycle space.
    pub fn cyclomatic_number(&self) -> usize {
        self.edges.len() + self.component_count() - self.vertex_count
    }

    pub fn has_parallel_edges(&self) -> bool {
        let mut sorted = self.edges.clone();
        sorted.sort_unstable();
        sorted.windows(2).any(|w| w[0] == w[1])
    }
}
