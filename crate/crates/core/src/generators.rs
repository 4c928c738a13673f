//! Small graph constructors used by the driver, benchmarks and tests.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, VertexId};

/// Path on `n` vertices, edges `0-1-...-(n-1)`.
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| ((i - 1) as VertexId, i as VertexId)).collect();
    Graph::from_edges(n, &edges)
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let mut edges: Vec<_> = (1..n).map(|i| ((i - 1) as VertexId, i as VertexId)).collect();
    edges.push((n as VertexId - 1, 0));
    Graph::from_edges(n, &edges)
}

/// Complete graph on `n` vertices.
pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u as VertexId, v as VertexId));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Star with center `0` and `n - 1` leaves.
pub fn star(n: usize) -> Graph {
    assert!(n >= 1);
    let edges: Vec<_> = (1..n).map(|i| (0, i as VertexId)).collect();
    Graph::from_edges(n, &edges)
}

/// Grid graph with `rows * cols` vertices in row-major order.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let at = |r: usize, c: usize| (r * cols + c) as VertexId;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((at(r, c), at(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((at(r, c), at(r + 1, c)));
            }
        }
    }
    Graph::from_edges(rows * cols, &edges)
}

/// Random graph with exactly `m` distinct edges.
pub fn random_gnm(n: usize, m: usize, seed: u64) -> Graph {
    assert!(m <= n * n.saturating_sub(1) / 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let u = rng.gen_range(0..n) as VertexId;
        let v = rng.gen_range(0..n) as VertexId;
        if u == v {
            continue;
        }
        let key = (u.min(v), u.max(v));
        if seen.insert(key) {
            edges.push(key);
        }
    }
    Graph::from_edges(n, &edges)
}

/// Random connected graph: a random tree plus `m - (n - 1)` extra edges.
pub fn random_connected(n: usize, m: usize, seed: u64) -> Graph {
    assert!(n >= 1 && m + 1 >= n);
    assert!(m <= n * n.saturating_sub(1) / 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut edges = Vec::with_capacity(m);
    for v in 1..n {
        let u = rng.gen_range(0..v) as VertexId;
        seen.insert((u, v as VertexId));
        edges.push((u, v as VertexId));
    }
    while edges.len() < m {
        let u = rng.gen_range(0..n) as VertexId;
        let v = rng.gen_range(0..n) as VertexId;
        if u == v {
            continue;
        }
        let key = (u.min(v), u.max(v));
        if seen.insert(key) {
            edges.push(key);
        }
    }
    Graph::from_edges(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        assert_eq!(path(5).edge_count(), 4);
        assert_eq!(cycle(5).edge_count(), 5);
        assert_eq!(complete(5).edge_count(), 10);
        assert_eq!(star(5).edge_count(), 4);
        assert_eq!(grid(3, 3).edge_count(), 12);
    }

    #[test]
    fn random_graphs() {
        let g = random_gnm(20, 30, 1);
        assert_eq!(g.vertex_count(), 20);
        assert_eq!(g.edge_count(), 30);
        let h = random_connected(20, 25, 2);
        assert!(h.is_connected());
        assert_eq!(h.edge_count(), 25);
    }
}
