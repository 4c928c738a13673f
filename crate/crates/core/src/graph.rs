//! Graph representation, `.gr` parsing, connectivity and cheap treedepth
//! lower bounds.

use std::io::BufRead;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Internal vertex index, dense and 0-based.
///
/// All text formats are 1-based; the offset is applied at the I/O boundary.
pub type VertexId = u32;

/// Errors produced while reading a `.gr` file.
///
/// Line numbers are 1-based and count every input line, comments included.
#[derive(Debug, Error)]
pub enum GrParseError {
    #[error("read error: {0}")]
    Io(#[from] std::io::Error),
    #[error("missing problem header line")]
    MissingHeader,
    #[error("malformed header, line {line}")]
    MalformedHeader { line: usize },
    #[error("malformed edge, line {line}")]
    MalformedEdge { line: usize },
    #[error("edge before header, line {line}")]
    EdgeBeforeHeader { line: usize },
    #[error("vertex out of range, line {line}")]
    VertexOutOfRange { line: usize },
    #[error("self-loop, line {line}")]
    SelfLoop { line: usize },
}

/// An immutable undirected simple graph.
///
/// Adjacency lists are sorted ascending by vertex id, never by any ordering
/// a heuristic is about to compute. Algorithms that mutate neighbourhoods
/// copy the lists they need.
#[derive(Clone, Debug)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    m: usize,
}

/// Maps vertices of an induced subgraph back to the parent graph.
#[derive(Clone, Debug)]
pub struct SubgraphMap {
    original_of: Vec<VertexId>,
}

impl SubgraphMap {
    /// The parent-graph id of a subgraph vertex.
    pub fn original(&self, v: VertexId) -> VertexId {
        self.original_of[v as usize]
    }

    pub fn len(&self) -> usize {
        self.original_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.original_of.is_empty()
    }

    pub fn original_ids(&self) -> &[VertexId] {
        &self.original_of
    }
}

impl Graph {
    /// Builds a graph from an edge list over vertices `0..n`.
    ///
    /// Duplicate edges (in either orientation) are merged. Panics on
    /// self-loops or out-of-range endpoints; use [`Graph::parse_gr`] for
    /// untrusted input.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            assert!(u != v, "self-loop at vertex {u}");
            assert!(
                (u as usize) < n && (v as usize) < n,
                "edge {u}-{v} out of range for n={n}"
            );
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        Self::finish(adj)
    }

    fn finish(mut adj: Vec<Vec<VertexId>>) -> Graph {
        let mut twice_m = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            twice_m += list.len();
        }
        Graph { adj, m: twice_m / 2 }
    }

    /// Reads a graph in the PACE `.gr` format.
    ///
    /// The header is `p <descriptor> <n> <m>`; any descriptor token is
    /// accepted and the header's edge count is not enforced. Lines starting
    /// with `c` are comments. Duplicate edges are merged silently, while
    /// self-loops are rejected.
    pub fn parse_gr<R: BufRead>(input: R) -> Result<Graph, GrParseError> {
        let mut adj: Option<Vec<Vec<VertexId>>> = None;
        for (idx, line) in input.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let mut tokens = line.split_ascii_whitespace();
            let first = match tokens.next() {
                None => continue,
                Some(t) => t,
            };
            if first.starts_with('c') {
                continue;
            }
            if first == "p" {
                let _descriptor = tokens
                    .next()
                    .ok_or(GrParseError::MalformedHeader { line: lineno })?;
                let n: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or(GrParseError::MalformedHeader { line: lineno })?;
                let _m: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or(GrParseError::MalformedHeader { line: lineno })?;
                if adj.is_some() {
                    return Err(GrParseError::MalformedHeader { line: lineno });
                }
                adj = Some(vec![Vec::new(); n]);
                continue;
            }
            let adj = adj
                .as_mut()
                .ok_or(GrParseError::EdgeBeforeHeader { line: lineno })?;
            let u: u64 = first
                .parse()
                .map_err(|_| GrParseError::MalformedEdge { line: lineno })?;
            let v: u64 = tokens
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or(GrParseError::MalformedEdge { line: lineno })?;
            if tokens.next().is_some() {
                return Err(GrParseError::MalformedEdge { line: lineno });
            }
            let n = adj.len() as u64;
            if u < 1 || u > n || v < 1 || v > n {
                return Err(GrParseError::VertexOutOfRange { line: lineno });
            }
            if u == v {
                return Err(GrParseError::SelfLoop { line: lineno });
            }
            adj[(u - 1) as usize].push((v - 1) as VertexId);
            adj[(v - 1) as usize].push((u - 1) as VertexId);
        }
        match adj {
            Some(adj) => Ok(Self::finish(adj)),
            None => Err(GrParseError::MissingHeader),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Number of distinct undirected edges.
    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v as usize].len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.adj.len() as VertexId
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let u = u as VertexId;
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Connected components as sorted vertex sets, ordered by their
    /// smallest contained id.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s as VertexId];
            seen[s] = true;
            stack.push(s as VertexId);
            while let Some(v) = stack.pop() {
                for &w in self.neighbors(v) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.components().len() == 1
    }

    /// Subgraph induced by `vs`, with dense re-indexing.
    ///
    /// `vs` must contain valid, distinct vertex ids; the new ids follow the
    /// ascending order of the originals.
    pub fn induced_subgraph(&self, vs: &[VertexId]) -> (Graph, SubgraphMap) {
        let mut original_of: Vec<VertexId> = vs.to_vec();
        original_of.sort_unstable();
        original_of.dedup();
        assert_eq!(original_of.len(), vs.len(), "duplicate vertices in subgraph set");
        let mut index = vec![VertexId::MAX; self.vertex_count()];
        for (i, &v) in original_of.iter().enumerate() {
            index[v as usize] = i as VertexId;
        }
        let mut adj = vec![Vec::new(); original_of.len()];
        for (i, &v) in original_of.iter().enumerate() {
            for &w in self.neighbors(v) {
                let wi = index[w as usize];
                if wi != VertexId::MAX {
                    adj[i].push(wi);
                }
            }
            // ascending original ids map to ascending new ids
            debug_assert!(adj[i].windows(2).all(|p| p[0] < p[1]));
        }
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        (Graph { adj, m }, SubgraphMap { original_of })
    }

    /// Degeneracy via min-degree peeling with a bucket queue, O(n + m).
    pub fn degeneracy(&self) -> u32 {
        let n = self.vertex_count();
        if n == 0 {
            return 0;
        }
        let mut deg: Vec<usize> = (0..n).map(|v| self.adj[v].len()).collect();
        let maxd = deg.iter().copied().max().unwrap_or(0);
        // counting sort by degree; within a bucket vertices stay in id order
        let mut bin = vec![0usize; maxd + 2];
        for &d in &deg {
            bin[d + 1] += 1;
        }
        for i in 1..bin.len() {
            bin[i] += bin[i - 1];
        }
        let mut start = bin.clone();
        let mut vert = vec![0 as VertexId; n];
        let mut pos = vec![0usize; n];
        for v in 0..n {
            let p = start[deg[v]];
            vert[p] = v as VertexId;
            pos[v] = p;
            start[deg[v]] += 1;
        }
        let mut bucket_start = bin;
        let mut k = 0u32;
        for i in 0..n {
            let v = vert[i] as usize;
            k = k.max(deg[v] as u32);
            for j in 0..self.adj[v].len() {
                let u = self.adj[v][j] as usize;
                if pos[u] <= i {
                    continue;
                }
                let du = deg[u];
                let pu = pos[u];
                let pw = bucket_start[du].max(i + 1);
                let w = vert[pw] as usize;
                if u != w {
                    vert.swap(pu, pw);
                    pos[u] = pw;
                    pos[w] = pu;
                }
                bucket_start[du] = pw + 1;
                deg[u] -= 1;
            }
        }
        k
    }

    /// Vertex count of the longest root-to-node path found by one seeded
    /// DFS per component, each started from a random vertex.
    ///
    /// This is a cheap heuristic witness, not the true longest path.
    pub fn dfs_longest_path(&self, seed: u64) -> u32 {
        let n = self.vertex_count();
        if n == 0 {
            return 0;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut visited = vec![false; n];
        let mut best = 0u32;
        let mut stack: Vec<(VertexId, u32)> = Vec::new();
        for comp in self.components() {
            let start = comp[rng.gen_range(0..comp.len())];
            stack.push((start, 1));
            while let Some((v, d)) = stack.pop() {
                if visited[v as usize] {
                    continue;
                }
                visited[v as usize] = true;
                best = best.max(d);
                let mut next: Vec<VertexId> = self
                    .neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&w| !visited[w as usize])
                    .collect();
                next.shuffle(&mut rng);
                for w in next {
                    stack.push((w, d + 1));
                }
            }
        }
        best
    }

    /// A treedepth lower bound from degeneracy and a DFS path witness.
    ///
    /// Both `degeneracy + 1` and `ceil(log2(p + 1))` for a p-vertex path
    /// in the graph are valid lower bounds; the maximum is returned.
    pub fn td_lower_bound(&self, seed: u64) -> u32 {
        if self.vertex_count() == 0 {
            return 0;
        }
        let p = self.dfs_longest_path(seed);
        (self.degeneracy() + 1).max(ceil_log2(p + 1))
    }
}

/// Smallest k with 2^k >= x, for x >= 1.
pub(crate) fn ceil_log2(x: u32) -> u32 {
    assert!(x >= 1);
    if x.is_power_of_two() {
        x.ilog2()
    } else {
        x.ilog2() + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn parse_basic() {
        let g = Graph::parse_gr("p tdp 3 2\n1 2\n2 3\n".as_bytes()).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(0, 1));
        assert!(g.has_edge(1, 2));
        assert!(!g.has_edge(0, 2));
    }

    #[test]
    fn parse_dedup_and_comments() {
        let g = Graph::parse_gr("c hi\np tdp 2 1\n1 2\n2 1\n".as_bytes()).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn parse_out_of_range() {
        let err = Graph::parse_gr("p tdp 2 1\n1 3\n".as_bytes()).unwrap_err();
        assert_eq!(err.to_string(), "vertex out of range, line 2");
    }

    #[test]
    fn parse_self_loop_rejected() {
        let err = Graph::parse_gr("p tdp 2 1\n2 2\n".as_bytes()).unwrap_err();
        assert!(matches!(err, GrParseError::SelfLoop { line: 2 }));
    }

    #[test]
    fn parse_edge_before_header() {
        let err = Graph::parse_gr("1 2\np tdp 2 1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, GrParseError::EdgeBeforeHeader { line: 1 }));
    }

    #[test]
    fn components_cases() {
        let p3 = generators::path(3);
        assert_eq!(p3.components(), vec![vec![0, 1, 2]]);

        let edgeless = Graph::from_edges(3, &[]);
        assert_eq!(edgeless.components(), vec![vec![0], vec![1], vec![2]]);

        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        assert_eq!(two.components(), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn induced_subgraph_cases() {
        let c4 = generators::cycle(4);
        let (sub, map) = c4.induced_subgraph(&[0, 1, 2]);
        assert_eq!(sub.vertex_count(), 3);
        assert_eq!(sub.edge_count(), 2);
        assert!(sub.has_edge(0, 1) && sub.has_edge(1, 2) && !sub.has_edge(0, 2));
        assert_eq!(map.original_ids(), &[0, 1, 2]);

        let (empty, map) = c4.induced_subgraph(&[]);
        assert_eq!(empty.vertex_count(), 0);
        assert!(map.is_empty());

        let all: Vec<VertexId> = c4.vertices().collect();
        let (same, map) = c4.induced_subgraph(&all);
        assert_eq!(same.edge_count(), c4.edge_count());
        for v in c4.vertices() {
            assert_eq!(map.original(v), v);
        }
    }

    #[test]
    fn induced_preserves_adjacency_exactly() {
        let g = generators::random_gnm(30, 60, 7);
        let vs: Vec<VertexId> = (0..30).filter(|v| v % 3 != 0).collect();
        let (sub, map) = g.induced_subgraph(&vs);
        for u in sub.vertices() {
            for v in sub.vertices() {
                if u < v {
                    assert_eq!(
                        sub.has_edge(u, v),
                        g.has_edge(map.original(u), map.original(v))
                    );
                }
            }
        }
    }

    #[test]
    fn degeneracy_cases() {
        assert_eq!(generators::complete(4).degeneracy(), 3);
        assert_eq!(generators::path(5).degeneracy(), 1);
        assert_eq!(generators::cycle(5).degeneracy(), 2);
        assert_eq!(Graph::from_edges(3, &[]).degeneracy(), 0);
    }

    #[test]
    fn dfs_longest_path_cases() {
        let p5 = generators::path(5);
        for seed in 0..10 {
            let p = p5.dfs_longest_path(seed);
            assert!((3..=5).contains(&p), "got {p}");
        }
        // every DFS of a clique descends to full depth
        assert_eq!(generators::complete(4).dfs_longest_path(3), 4);
        assert_eq!(Graph::from_edges(1, &[]).dfs_longest_path(0), 1);
    }

    #[test]
    fn lower_bound_cases() {
        assert_eq!(generators::complete(10).td_lower_bound(0), 10);
        // any DFS of P7 sees at least 4 vertices, so the path bound gives 3
        assert_eq!(generators::path(7).td_lower_bound(1), 3);
        assert_eq!(generators::star(5).td_lower_bound(0), 2);
    }

    #[test]
    fn parse_roundtrip_edge_set() {
        let g = generators::random_gnm(20, 40, 3);
        let mut text = format!("p tdp {} {}\n", g.vertex_count(), g.edge_count());
        for (u, v) in g.edges() {
            text.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        let h = Graph::parse_gr(text.as_bytes()).unwrap();
        let ge: Vec<_> = g.edges().collect();
        let he: Vec<_> = h.edges().collect();
        assert_eq!(ge, he);
    }
}
