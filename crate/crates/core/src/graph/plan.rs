use serde::Serialize;
use thiserror::Error;

use super::Graph;
use crate::constructions::{Params5, Params6};

/// Default limit on the number of vertices [`materialize`] will produce.
pub const DEFAULT_VERTEX_CAP: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanError {
    #[error("block {block}: {reason}")]
    InvalidBlock { block: usize, reason: String },
    #[error("plan has {count} path blocks; at most one is allowed")]
    MultiplePaths { count: usize },
    #[error("plan materializes to {vertices} vertices, above the cap of {cap}")]
    TooLarge { vertices: u64, cap: u64 },
    #[error("vertex or edge count overflows u64")]
    Overflow,
}

/// A root-anchored path ending on the host cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ChordSpec {
    /// Position on the host cycle; the root sits at position 0.
    pub attach_pos: u64,
    /// Number of edges on the path from the root to the attachment vertex.
    pub path_len: u64,
}

impl ChordSpec {
    pub fn new(attach_pos: u64, path_len: u64) -> Self {
        ChordSpec {
            attach_pos,
            path_len,
        }
    }
}

/// One piece of a rooted construction. All blocks of a plan share the root
/// and are otherwise vertex-disjoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Block {
    /// Pendant path of `len` edges starting at the root.
    Path { len: u64 },
    /// Cycle of length `len` through the root; `len == 2` is a digon.
    PlainCycle { len: u64 },
    /// Cycle through the root plus root-anchored chord paths, sorted by
    /// attachment position.
    ChordedCycle {
        cycle_len: u64,
        chords: Vec<ChordSpec>,
    },
}

impl Block {
    pub fn validate(&self) -> Result<(), String> {
        match self {
            Block::Path { .. } => Ok(()),
            Block::PlainCycle { len } if *len < 2 => {
                Err(format!("plain cycle length {len} is below 2"))
            }
            Block::PlainCycle { .. } => Ok(()),
            Block::ChordedCycle { cycle_len, chords } => {
                if *cycle_len < 3 {
                    return Err(format!("chorded cycle length {cycle_len} is below 3"));
                }
                let mut prev = 0;
                for (idx, c) in chords.iter().enumerate() {
                    if c.path_len == 0 {
                        return Err(format!("chord {idx} has path length 0"));
                    }
                    if c.attach_pos == 0 || c.attach_pos >= *cycle_len {
                        return Err(format!(
                            "chord {idx} attaches at {} outside 1..{}",
                            c.attach_pos, cycle_len
                        ));
                    }
                    if c.attach_pos <= prev {
                        return Err(format!(
                            "chord {idx} attaches at {} which does not follow {prev}",
                            c.attach_pos
                        ));
                    }
                    prev = c.attach_pos;
                }
                Ok(())
            }
        }
    }

    /// Vertices contributed besides the root.
    pub fn internal_vertices(&self) -> Option<u64> {
        match self {
            Block::Path { len } => Some(*len),
            Block::PlainCycle { len } => Some(len - 1),
            Block::ChordedCycle { cycle_len, chords } => chords
                .iter()
                .try_fold(cycle_len - 1, |acc, c| acc.checked_add(c.path_len - 1)),
        }
    }

    pub fn edge_count(&self) -> Option<u64> {
        match self {
            Block::Path { len } | Block::PlainCycle { len } => Some(*len),
            Block::ChordedCycle { cycle_len, chords } => chords
                .iter()
                .try_fold(*cycle_len, |acc, c| acc.checked_add(c.path_len)),
        }
    }

    pub fn cyclomatic_number(&self) -> u64 {
        match self {
            Block::Path { .. } => 0,
            Block::PlainCycle { .. } => 1,
            Block::ChordedCycle { chords, .. } => chords.len() as u64 + 1,
        }
    }

    pub fn is_digon(&self) -> bool {
        matches!(self, Block::PlainCycle { len: 2 })
    }
}

/// Where a plan came from; drives the closed-form audit in verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum PlanSource {
    Custom,
    Theorem5(Params5),
    Theorem6(Params6),
}

/// Rooted collection of blocks sharing vertex 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionPlan {
    label: String,
    blocks: Vec<Block>,
    source: PlanSource,
    warnings: Vec<String>,
}

impl ConstructionPlan {
    pub fn new(label: impl Into<String>, blocks: Vec<Block>) -> Result<Self, PlanError> {
        let paths = blocks
            .iter()
            .filter(|b| matches!(b, Block::Path { .. }))
            .count();
        if paths > 1 {
            return Err(PlanError::MultiplePaths { count: paths });
        }
        for (block, b) in blocks.iter().enumerate() {
            b.validate()
                .map_err(|reason| PlanError::InvalidBlock { block, reason })?;
        }
        let mut warnings = Vec::new();
        let digons: Vec<String> = blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| b.is_digon())
            .map(|(i, _)| i.to_string())
            .collect();
        if !digons.is_empty() {
            warnings.push(format!(
                "digon (parallel-edge 2-cycle) in block(s) {}; not a simple graph",
                digons.join(",")
            ));
        }
        Ok(ConstructionPlan {
            label: label.into(),
            blocks,
            source: PlanSource::Custom,
            warnings,
        })
    }

    pub(crate) fn with_source(mut self, source: PlanSource) -> Self {
        self.source = source;
        self
    }

    pub(crate) fn push_warning(&mut self, warning: String) {
        self.warnings.push(warning);
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn source(&self) -> &PlanSource {
        &self.source
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }
}

/// Closed-form size of a plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub vertices: u64,
    pub edges: u64,
    pub cyclomatic: u64,
}

/// Vertex, edge and cycle-space counts without building the graph.
pub fn counts(plan: &ConstructionPlan) -> Counts {
    try_counts(plan).expect("plan size overflows u64")
}

pub fn try_counts(plan: &ConstructionPlan) -> Result<Counts, PlanError> {
    let mut c = Counts {
        vertices: 1,
        edges: 0,
        cyclomatic: 0,
    };
    for b in &plan.blocks {
        c.vertices = b
            .internal_vertices()
            .and_then(|v| c.vertices.checked_add(v))
            .ok_or(PlanError::Overflow)?;
        c.edges = b
            .edge_count()
            .and_then(|e| c.edges.checked_add(e))
            .ok_or(PlanError::Overflow)?;
        c.cyclomatic += b.cyclomatic_number();
    }
    Ok(c)
}

/// A plan turned into a [`Graph`], remembering which vertices each block owns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Materialized {
    pub graph: Graph,
    /// Block `i` owns vertices `block_starts[i]..block_starts[i + 1]`; the
    /// root belongs to no block.
    pub block_starts: Vec<usize>,
}

impl Materialized {
    /// Block owning a non-root vertex.
    pub fn block_of(&self, vertex: usize) -> Option<usize> {
        if vertex == 0 || vertex >= self.graph.vertex_count() {
            return None;
        }
        Some(self.block_starts.partition_point(|&s| s <= vertex) - 1)
    }
}

/// Builds the explicit graph: root is vertex 0, blocks are numbered in
/// order, each cycle clockwise from the root followed by its chord paths.
pub fn materialize(plan: &ConstructionPlan, vertex_cap: u64) -> Result<Materialized, PlanError> {
    let total = try_counts(plan)?;
    if total.vertices > vertex_cap {
        return Err(PlanError::TooLarge {
            vertices: total.vertices,
            cap: vertex_cap,
        });
    }
    let mut edges = Vec::with_capacity(total.edges as usize);
    let mut block_starts = Vec::with_capacity(plan.blocks.len() + 1);
    let mut next = 1usize;
    // Appends a path of `len` edges from `from` to `to`, allocating len-1 fresh vertices.
    let path = |from: usize, to: usize, len: u64, next: &mut usize, edges: &mut Vec<_>| {
        let mut prev = from;
        for _ in 1..len {
            edges.push((prev, *next));
            prev = *next;
            *next += 1;
        }
        edges.push((prev.min(to), prev.max(to)));
    };
    for block in &plan.blocks {
        block_starts.push(next);
        match block {
            Block::Path { len } => {
                let mut prev = 0;
                for _ in 0..*len {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
            }
            Block::PlainCycle { len } => {
                // cycle closes on the root; the path helper allocates len-1 vertices
                path(0, 0, *len, &mut next, &mut edges);
            }
            Block::ChordedCycle { cycle_len, chords } => {
                let first = next;
                path(0, 0, *cycle_len, &mut next, &mut edges);
                for c in chords {
                    let target = first + c.attach_pos as usize - 1;
                    path(0, target, c.path_len, &mut next, &mut edges);
                }
            }
        }
    }
    block_starts.push(next);
    debug_assert_eq!(next as u64, total.vertices);
    let graph = Graph::new(next, edges).map_err(|e| PlanError::InvalidBlock {
        block: 0,
        reason: e.to_string(),
    })?;
    Ok(Materialized {
        graph,
        block_starts,
    })
}
