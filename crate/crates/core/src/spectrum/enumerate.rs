use thiserror::Error;

use super::CycleSpectrum;
use crate::graph::Graph;

/// Default limit on the number of cycles an exact enumeration may produce.
pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("more than {cap} cycles; use structural verification instead")]
pub struct CapExceeded {
    pub cap: usize,
}

/// A simple cycle reported by [`visit_cycles`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FoundCycle {
    pub length: u64,
    /// Largest vertex index on the cycle.
    pub max_vertex: usize,
}

/// Exact multiset of simple-cycle lengths. A pair of parallel edges counts
/// as one cycle of length 2.
pub fn enumerate_cycles_exact(graph: &Graph, cap: usize) -> Result<CycleSpectrum, CapExceeded> {
    let mut lengths = Vec::new();
    visit_cycles(graph, cap, |c| lengths.push(c.length))?;
    Ok(CycleSpectrum::from_lengths(lengths))
}

/// Calls `visit` once per simple cycle and returns how many there were.
///
/// The graph is reduced to its 2-core and every maximal chain of degree-2
/// vertices is contracted into one weighted edge. Chains that close on a
/// single vertex are cycles on their own; the remaining weighted multigraph
/// is searched from each start vertex in increasing order, only extending a
/// path when the new endpoint can still get back to the start, so every
/// extension leads to at least one cycle.
pub fn visit_cycles<F>(graph: &Graph, cap: usize, mut visit: F) -> Result<usize, CapExceeded>
where
    F: FnMut(FoundCycle),
{
    let mut found = 0usize;
    let mut emit = |c: FoundCycle| {
        found += 1;
        if found > cap {
            return Err(CapExceeded { cap });
        }
        visit(c);
        Ok(())
    };
    let skeleton = Skeleton::build(graph);
    for &c in &skeleton.loops {
        emit(c)?;
    }
    let mut search = Search::new(&skeleton);
    for start in 0..skeleton.vertices.len() {
        search.run(start, &mut emit)?;
    }
    Ok(found)
}

struct WeightedEdge {
    weight: u64,
    max_vertex: usize,
}

/// Contracted 2-core. Vertex `i` is `vertices[i]` in the original graph;
/// vertices are kept in increasing original order.
struct Skeleton {
    vertices: Vec<usize>,
    edges: Vec<WeightedEdge>,
    adj: Vec<Vec<(usize, usize)>>,
    loops: Vec<FoundCycle>,
}

impl Skeleton {
    fn build(graph: &Graph) -> Self {
        let n = graph.vertex_count();
        let adj = graph.adjacency();
        let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
        let mut alive = vec![true; n];
        let mut edge_alive = vec![true; graph.edge_count()];

        let mut queue: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
        while let Some(v) = queue.pop() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for &(w, id) in &adj[v] {
                if edge_alive[id] {
                    edge_alive[id] = false;
                    degree[w] -= 1;
                    if alive[w] && degree[w] <= 1 {
                        queue.push(w);
                    }
                }
            }
        }

        let mut index = vec![usize::MAX; n];
        let mut vertices = Vec::new();
        for v in 0..n {
            if alive[v] && degree[v] != 2 {
                index[v] = vertices.len();
                vertices.push(v);
            }
        }

        let mut used = vec![false; graph.edge_count()];
        let mut edges = Vec::new();
        let mut sk_adj = vec![Vec::new(); vertices.len()];
        let mut loops = Vec::new();
        // Follows a chain of degree-2 vertices starting with edge `id` from `from`.
        let walk = |from: usize,
                    first: (usize, usize),
                    used: &mut Vec<bool>,
                    stop: &dyn Fn(usize) -> bool| {
            let (mut cur, mut prev_edge) = first;
            used[prev_edge] = true;
            let mut weight = 1u64;
            let mut max_vertex = from.max(cur);
            while !stop(cur) {
                let &(next, id) = adj[cur]
                    .iter()
                    .find(|&&(_, id)| edge_alive[id] && id != prev_edge)
                    .expect("2-core vertex of degree 2 has a second edge");
                used[id] = true;
                weight += 1;
                max_vertex = max_vertex.max(next);
                prev_edge = id;
                cur = next;
            }
            (cur, WeightedEdge { weight, max_vertex })
        };

        for (a, &u) in vertices.iter().enumerate() {
            for &(w, id) in &adj[u] {
                if !edge_alive[id] || used[id] {
                    continue;
                }
                let (end, edge) = walk(u, (w, id), &mut used, &|v| index[v] != usize::MAX);
                let b = index[end];
                if a == b {
                    loops.push(FoundCycle {
                        length: edge.weight,
                        max_vertex: edge.max_vertex,
                    });
                } else {
                    let eid = edges.len();
                    edges.push(edge);
                    sk_adj[a].push((b, eid));
                    sk_adj[b].push((a, eid));
                }
            }
        }

        // Whatever is left consists of components that are plain cycles.
        for (id, &(u, w)) in graph.edges().iter().enumerate() {
            if edge_alive[id] && !used[id] {
                let (_, edge) = walk(u, (w, id), &mut used, &|v| v == u);
                loops.push(FoundCycle {
                    length: edge.weight,
                    max_vertex: edge.max_vertex,
                });
            }
        }

        Skeleton {
            vertices,
            edges,
            adj: sk_adj,
            loops,
        }
    }
}

struct Frame {
    vertex: usize,
    next: usize,
    length: u64,
    max_vertex: usize,
}

struct Search<'a> {
    sk: &'a Skeleton,
    on_path: Vec<bool>,
    path_edges: Vec<usize>,
    stamp: Vec<u32>,
    generation: u32,
    queue: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(sk: &'a Skeleton) -> Self {
        let n = sk.vertices.len();
        Search {
            sk,
            on_path: vec![false; n],
            path_edges: Vec::new(),
            stamp: vec![0; n],
            generation: 0,
            queue: Vec::new(),
        }
    }

    /// Every cycle whose smallest vertex is `start`, each reported once: of
    /// its two traversals only the one whose first edge has the smaller id.
    fn run<E>(&mut self, start: usize, emit: &mut E) -> Result<(), CapExceeded>
    where
        E: FnMut(FoundCycle) -> Result<(), CapExceeded>,
    {
        let sk = self.sk;
        self.on_path[start] = true;
        let mut stack = vec![Frame {
            vertex: start,
            next: 0,
            length: 0,
            max_vertex: sk.vertices[start],
        }];
        while let Some(top) = stack.last_mut() {
            let v = top.vertex;
            if top.next == sk.adj[v].len() {
                stack.pop();
                self.on_path[v] = false;
                self.path_edges.pop();
                continue;
            }
            let (w, eid) = sk.adj[v][top.next];
            top.next += 1;
            let (length, max_vertex) = (top.length, top.max_vertex);
            if w < start {
                continue;
            }
            let edge = &sk.edges[eid];
            let length = length + edge.weight;
            let max_vertex = max_vertex.max(edge.max_vertex);
            if w == start {
                if let Some(&first) = self.path_edges.first() {
                    if first < eid {
                        emit(FoundCycle { length, max_vertex })?;
                    }
                }
                continue;
            }
            if self.on_path[w] {
                continue;
            }
            let first = self.path_edges.first().copied().unwrap_or(eid);
            if !self.can_close(start, w, first) {
                continue;
            }
            self.on_path[w] = true;
            self.path_edges.push(eid);
            stack.push(Frame {
                vertex: w,
                next: 0,
                length,
                max_vertex,
            });
        }
        Ok(())
    }

    /// Whether `from` reaches `start` through vertices above `start` that are
    /// off the current path, without reusing the path's first edge.
    fn can_close(&mut self, start: usize, from: usize, first_edge: usize) -> bool {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.generation = 1;
        }
        let gen = self.generation;
        self.queue.clear();
        self.queue.push(from);
        self.stamp[from] = gen;
        while let Some(y) = self.queue.pop() {
            for &(z, id) in &self.sk.adj[y] {
                if id == first_edge {
                    continue;
                }
                if z == start {
                    return true;
                }
                if z < start || self.on_path[z] || self.stamp[z] == gen {
                    continue;
                }
                self.stamp[z] = gen;
                self.queue.push(z);
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::new(n, e).unwrap()
    }

    /// Number of simple cycles in K_n: sum over k of C(n,k) (k-1)!/2.
    fn complete_cycle_count(n: u64) -> u64 {
        let mut total = 0;
        for k in 3..=n {
            let mut choose = 1u64;
            for i in 0..k {
                choose = choose * (n - i) / (i + 1);
            }
            let fact: u64 = (1..k).product();
            total += choose * fact / 2;
        }
        total
    }

    #[test]
    fn triangle() {
        let g = Graph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(enumerate_cycles_exact(&g, 10).unwrap().lengths(), &[3]);
    }

    #[test]
    fn k4() {
        let s = enumerate_cycles_exact(&complete(4), 100).unwrap();
        assert_eq!(s.lengths(), &[3, 3, 3, 3, 4, 4, 4]);
    }

    #[test]
    fn complete_graph_counts() {
        for n in 3..=7 {
            let s = enumerate_cycles_exact(&complete(n), 1_000_000).unwrap();
            assert_eq!(s.len() as u64, complete_cycle_count(n as u64), "K{n}");
        }
    }

    #[test]
    fn parallel_edges() {
        // three parallel edges: three digons
        let g = Graph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap();
        assert_eq!(
            enumerate_cycles_exact(&g, 10).unwrap().lengths(),
            &[2, 2, 2]
        );
        // digon hanging off a triangle
        let g = Graph::new(4, vec![(0, 1), (1, 2), (0, 2), (2, 3), (2, 3)]).unwrap();
        assert_eq!(enumerate_cycles_exact(&g, 10).unwrap().lengths(), &[2, 3]);
    }

    #[test]
    fn forests_and_isolated_cycles() {
        let g = Graph::new(6, vec![(0, 1), (1, 2), (3, 4)]).unwrap();
        assert!(enumerate_cycles_exact(&g, 10).unwrap().is_empty());
        let g = Graph::new(
            7,
            vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 3)],
        )
        .unwrap();
        assert_eq!(enumerate_cycles_exact(&g, 10).unwrap().lengths(), &[3, 4]);
    }

    #[test]
    fn theta_graph_through_chains() {
        // two branch vertices 0 and 1 joined by paths of length 1, 2, 3
        let g = Graph::new(5, vec![(0, 1), (0, 2), (2, 1), (0, 3), (3, 4), (4, 1)]).unwrap();
        let mut seen = Vec::new();
        visit_cycles(&g, 10, |c| seen.push((c.length, c.max_vertex))).unwrap();
        seen.sort();
        assert_eq!(seen, vec![(3, 2), (4, 4), (5, 4)]);
    }

    #[test]
    fn cap_exceeded() {
        assert_eq!(
            enumerate_cycles_exact(&complete(5), 5),
            Err(CapExceeded { cap: 5 })
        );
    }
}
