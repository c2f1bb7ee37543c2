//! Exhaustive maximum edge counts for tiny orders: the largest simple graph
//! on `n` labeled vertices in which no two cycles share a length (and, for
//! `m > 1`, every cycle length is a multiple of `m`).

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::graph::Graph;
use crate::spectrum::{enumerate_cycles_exact, CapExceeded};

/// Largest order searched without an explicit override.
pub const DEFAULT_N_MAX: usize = 8;

/// Hard ceiling; edge sets are kept in a 64-bit mask.
pub const HARD_N_MAX: usize = 11;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("n = {n} outside the supported range 3..={max}")]
    OutOfRange { n: usize, max: usize },
    #[error("m must be at least 1")]
    InvalidM,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub n: usize,
    pub m: u64,
    pub max_edges: usize,
    /// Lexicographically smallest maximum edge list.
    pub witness: Graph,
    pub stats: SearchStats,
}

/// Whether every cycle length of `graph` occurs at most once and, for
/// `m > 1`, is a multiple of `m`.
pub fn check_graph(graph: &Graph, m: u64, cycle_cap: usize) -> Result<bool, CapExceeded> {
    let s = enumerate_cycles_exact(graph, cycle_cap)?;
    Ok(s.is_distinct() && (m <= 1 || s.all_multiples_of(m)))
}

/// Branch and bound over edge subsets of `K_n` in lexicographic order.
///
/// The property survives edge deletion, so only valid graphs are ever
/// extended. Adding edge `uv` creates exactly one new cycle per `u`-`v`
/// path, which keeps the check incremental. A subtree is cut when even
/// taking every remaining pair cannot beat the best count, or when the
/// cyclomatic number would exceed the number of usable lengths.
pub fn oracle_max_edges(n: usize, m: u64, n_max: usize) -> Result<OracleResult, OracleError> {
    let max = n_max.min(HARD_N_MAX);
    if !(3..=max).contains(&n) {
        return Err(OracleError::OutOfRange { n, max });
    }
    if m == 0 {
        return Err(OracleError::InvalidM);
    }
    let start = Instant::now();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let usable = (3..=n as u64).filter(|l| l % m == 0).count();
    let mut search = Search {
        m,
        pairs: &pairs,
        adj: vec![0u16; n],
        used_lengths: 0,
        chosen: Vec::new(),
        best: Vec::new(),
        best_len: None,
        // A forest already has n - 1 edges; each extra edge adds a cycle.
        ceiling: n - 1 + usable,
        nodes: 0,
        path_lengths: Vec::new(),
    };
    search.descend(0);
    let best = search.best.clone();
    let witness = Graph::new(n, best.iter().map(|&i| pairs[i]).collect())
        .expect("pairs are valid simple edges");
    Ok(OracleResult {
        n,
        m,
        max_edges: best.len(),
        witness,
        stats: SearchStats {
            nodes: search.nodes,
            elapsed: start.elapsed(),
        },
    })
}

struct Search<'a> {
    m: u64,
    pairs: &'a [(usize, usize)],
    adj: Vec<u16>,
    /// Bit `l` set when a cycle of length `l` exists.
    used_lengths: u64,
    chosen: Vec<usize>,
    best: Vec<usize>,
    best_len: Option<usize>,
    ceiling: usize,
    nodes: u64,
    path_lengths: Vec<u32>,
}

impl Search<'_> {
    fn descend(&mut self, next: usize) {
        self.nodes += 1;
        if self.best_len.is_none_or(|b| self.chosen.len() > b) {
            self.best = self.chosen.clone();
            self.best_len = Some(self.chosen.len());
        }
        if self.best_len == Some(self.ceiling) {
            return;
        }
        let remaining = self.pairs.len() - next;
        if self.chosen.len() + remaining <= self.best_len.unwrap_or(0) {
            return;
        }
        for idx in next..self.pairs.len() {
            if self.chosen.len() + (self.pairs.len() - idx) <= self.best_len.unwrap_or(0) {
                return;
            }
            let (u, v) = self.pairs[idx];
            let Some(new_lengths) = self.new_cycle_lengths(u, v) else {
                continue;
            };
            self.adj[u] |= 1 << v;
            self.adj[v] |= 1 << u;
            self.used_lengths |= new_lengths;
            self.chosen.push(idx);
            self.descend(idx + 1);
            self.chosen.pop();
            self.used_lengths &= !new_lengths;
            self.adj[u] &= !(1 << v);
            self.adj[v] &= !(1 << u);
            if self.best_len == Some(self.ceiling) {
                return;
            }
        }
    }

    /// Bitmask of the lengths of the cycles `uv` would close, or `None` if
    /// any of them repeats an existing length, repeats each other, or is
    /// not a multiple of `m`.
    fn new_cycle_lengths(&mut self, u: usize, v: usize) -> Option<u64> {
        self.path_lengths.clear();
        let mut lengths = std::mem::take(&mut self.path_lengths);
        self.paths(u, v, 1u16 << u, 0, &mut lengths);
        let mut mask = 0u64;
        let mut ok = true;
        for &p in &lengths {
            let cycle = p as u64 + 1;
            let bit = 1u64 << cycle;
            if !cycle.is_multiple_of(self.m) || (self.used_lengths | mask) & bit != 0 {
                ok = false;
                break;
            }
            mask |= bit;
        }
        self.path_lengths = lengths;
        ok.then_some(mask)
    }

    /// Lengths of all simple paths from `at` to `target`.
    fn paths(&self, at: usize, target: usize, visited: u16, depth: u32, out: &mut Vec<u32>) {
        let mut nbrs = self.adj[at] & !visited;
        while nbrs != 0 {
            let w = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            if w == target {
                out.push(depth + 1);
            } else {
                self.paths(w, target, visited | (1 << w), depth + 1, out);
            }
        }
    }
}
