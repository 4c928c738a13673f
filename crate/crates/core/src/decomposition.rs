//! Treedepth decompositions, vertex orderings, the building process that
//! converts between them, a fast verifier, and brute-force oracles used as
//! ground truth in tests.

use std::collections::HashMap;

use thiserror::Error;

use crate::dsu::AncestorForest;
use crate::graph::{Graph, VertexId};

/// Why a claimed decomposition was rejected.
///
/// Vertex numbers in messages are 1-based to match the text formats.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("parent vector has {found} entries, graph has {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("parent of vertex {} out of range", .vertex + 1)]
    ParentOutOfRange { vertex: VertexId },
    #[error("cycle in parent links through vertex {}", .vertex + 1)]
    ParentCycle { vertex: VertexId },
    #[error("edge {{{}, {}}} joins vertices that are not in ancestor-descendant relation", .u + 1, .v + 1)]
    EdgeNotCovered { u: VertexId, v: VertexId },
    #[error("claimed depth {claimed} but parent vector has depth {actual}")]
    DepthMismatch { claimed: u32, actual: u32 },
}

/// A rooted forest on the vertices of a graph, given by a parent vector.
///
/// `depth` is the maximum number of vertices on any root-to-node chain.
/// Whether the forest is a valid treedepth decomposition of a particular
/// graph is checked by [`verify_decomposition`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    parent: Vec<Option<VertexId>>,
    depth: u32,
    roots: Vec<VertexId>,
}

impl Decomposition {
    /// Builds a decomposition from a parent vector, checking that the links
    /// are acyclic and in range, and computing depth and roots.
    pub fn from_parents(parent: Vec<Option<VertexId>>) -> Result<Self, Violation> {
        let depths = vertex_depths_checked(&parent)?;
        let depth = depths.iter().copied().max().unwrap_or(0);
        let roots = collect_roots(&parent);
        Ok(Decomposition { parent, depth, roots })
    }

    /// Wraps an untrusted parent vector with a claimed depth, without any
    /// checking. Feed the result to [`verify_decomposition`].
    pub fn from_claimed(parent: Vec<Option<VertexId>>, claimed_depth: u32) -> Self {
        let roots = collect_roots(&parent);
        Decomposition { parent, depth: claimed_depth, roots }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn parent_of(&self, v: VertexId) -> Option<VertexId> {
        self.parent[v as usize]
    }

    pub fn parents(&self) -> &[Option<VertexId>] {
        &self.parent
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// One root per tree, ascending.
    pub fn roots(&self) -> &[VertexId] {
        &self.roots
    }

    /// Number of vertices on the chain from the root to each vertex,
    /// inclusive, so roots have depth 1. Panics on cyclic parent links.
    pub fn vertex_depths(&self) -> Vec<u32> {
        vertex_depths_checked(&self.parent).expect("parent links form a forest")
    }

    /// Height of the subtree rooted at each vertex; leaves have height 1.
    pub fn subtree_heights(&self) -> Vec<u32> {
        let depths = self.vertex_depths();
        let mut order: Vec<VertexId> = (0..self.len() as VertexId).collect();
        order.sort_unstable_by_key(|&v| std::cmp::Reverse(depths[v as usize]));
        let mut height = vec![1u32; self.len()];
        for v in order {
            if let Some(p) = self.parent[v as usize] {
                let h = height[v as usize] + 1;
                if height[p as usize] < h {
                    height[p as usize] = h;
                }
            }
        }
        height
    }

    /// Ancestors of `v` from its parent up to the root.
    pub fn ancestors_of(&self, v: VertexId) -> Vec<VertexId> {
        let mut out = Vec::new();
        let mut x = self.parent[v as usize];
        while let Some(p) = x {
            out.push(p);
            x = self.parent[p as usize];
        }
        out
    }
}

fn collect_roots(parent: &[Option<VertexId>]) -> Vec<VertexId> {
    parent
        .iter()
        .enumerate()
        .filter(|(_, p)| p.is_none())
        .map(|(v, _)| v as VertexId)
        .collect()
}

/// Depth of every vertex, or the first structural violation.
fn vertex_depths_checked(parent: &[Option<VertexId>]) -> Result<Vec<u32>, Violation> {
    let n = parent.len();
    for (v, p) in parent.iter().enumerate() {
        if let Some(p) = p {
            if *p as usize >= n {
                return Err(Violation::ParentOutOfRange { vertex: v as VertexId });
            }
        }
    }
    let mut depth = vec![0u32; n]; // 0 = unknown
    let mut chain = Vec::new();
    for v in 0..n {
        if depth[v] != 0 {
            continue;
        }
        let mut x = v;
        loop {
            match parent[x] {
                None => {
                    depth[x] = 1;
                    break;
                }
                Some(p) => {
                    if depth[p as usize] != 0 {
                        depth[x] = depth[p as usize] + 1;
                        break;
                    }
                    chain.push(x);
                    if chain.len() > n {
                        return Err(Violation::ParentCycle { vertex: x as VertexId });
                    }
                    x = p as usize;
                }
            }
        }
        while let Some(y) = chain.pop() {
            let p = parent[y].unwrap();
            depth[y] = depth[p as usize] + 1;
        }
    }
    Ok(depth)
}

/// A linear ordering of the vertices; earlier means higher in the tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ordering {
    seq: Vec<VertexId>,
    position: Vec<u32>,
}

impl Ordering {
    /// Wraps a permutation of `0..n`. Panics if `seq` is not a permutation.
    pub fn new(seq: Vec<VertexId>) -> Ordering {
        let n = seq.len();
        let mut position = vec![u32::MAX; n];
        for (i, &v) in seq.iter().enumerate() {
            assert!((v as usize) < n, "vertex {v} out of range");
            assert!(position[v as usize] == u32::MAX, "vertex {v} repeated");
            position[v as usize] = i as u32;
        }
        Ordering { seq, position }
    }

    pub fn identity(n: usize) -> Ordering {
        Ordering {
            seq: (0..n as VertexId).collect(),
            position: (0..n as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn at(&self, i: usize) -> VertexId {
        self.seq[i]
    }

    pub fn position_of(&self, v: VertexId) -> usize {
        self.position[v as usize] as usize
    }

    pub fn seq(&self) -> &[VertexId] {
        &self.seq
    }
}

/// A topological ordering of the forest: every parent comes before its
/// children. Vertices are sorted by depth, ties by id.
pub fn ordering_from_parents(d: &Decomposition) -> Result<Ordering, Violation> {
    let depths = vertex_depths_checked(d.parents())?;
    let mut seq: Vec<VertexId> = (0..d.len() as VertexId).collect();
    seq.sort_unstable_by_key(|&v| (depths[v as usize], v));
    Ok(Ordering::new(seq))
}

/// Runs the building process on an ordering.
///
/// Vertices are processed from last to first while connected components of
/// the processed subgraph are maintained in a union-find structure whose
/// representative is the earliest vertex of the component. Processing `v`
/// merges the components of all processed neighbours into `v` and makes
/// their old roots children of `v`. Any permutation yields a valid
/// decomposition; runs in O(min(m * alpha(n), n * d)) time and O(m) space.
pub fn build_from_ordering(g: &Graph, order: &Ordering) -> Decomposition {
    let n = g.vertex_count();
    assert_eq!(order.len(), n);
    let mut parent: Vec<Option<VertexId>> = vec![None; n];
    let mut height = vec![1u32; n];
    let mut uf = AncestorForest::new(n);
    for i in (0..n).rev() {
        let v = order.at(i);
        uf.activate(v);
        let mut hv = 1u32;
        for &y in g.neighbors(v) {
            if !uf.is_active(y) {
                continue;
            }
            let r = uf.find(y);
            if r == v {
                continue;
            }
            parent[r as usize] = Some(v);
            uf.link(r, v);
            hv = hv.max(height[r as usize] + 1);
        }
        height[v as usize] = hv;
    }
    let roots = collect_roots(&parent);
    let depth = roots.iter().map(|&r| height[r as usize]).max().unwrap_or(0);
    let d = Decomposition { parent, depth, roots };
    debug_assert_eq!(d.depth, d.vertex_depths().iter().copied().max().unwrap_or(0));
    d
}

/// Checks that `d` is a valid treedepth decomposition of `g` and that its
/// claimed depth is right.
///
/// Runs the building process over a topological ordering of `d`; at each
/// component merge, instead of assigning a parent, the claimed parent of
/// the merged root must be the processed vertex itself or one of its
/// descendants in `d`. Descendant queries are answered by preorder
/// intervals of the claimed forest, so the whole check takes
/// O(min(m * alpha(n), n * d)) time, much faster than walking parent
/// chains per edge when the depth is large.
pub fn verify_decomposition(g: &Graph, d: &Decomposition) -> Result<(), Violation> {
    let n = g.vertex_count();
    if d.len() != n {
        return Err(Violation::LengthMismatch { expected: n, found: d.len() });
    }
    let depths = vertex_depths_checked(d.parents())?;
    let actual_depth = depths.iter().copied().max().unwrap_or(0);

    // preorder intervals of the claimed forest
    let mut children: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for v in 0..n {
        if let Some(p) = d.parent[v] {
            children[p as usize].push(v as VertexId);
        }
    }
    let mut tin = vec![0u32; n];
    let mut tout = vec![0u32; n];
    let mut clock = 0u32;
    let mut stack: Vec<(VertexId, usize)> = Vec::new();
    for v in 0..n {
        if d.parent[v].is_none() {
            tin[v] = clock;
            clock += 1;
            stack.push((v as VertexId, 0));
            while let Some((x, i)) = stack.pop() {
                if i < children[x as usize].len() {
                    stack.push((x, i + 1));
                    let c = children[x as usize][i];
                    tin[c as usize] = clock;
                    clock += 1;
                    stack.push((c, 0));
                } else {
                    tout[x as usize] = clock;
                }
            }
        }
    }
    // x is v itself or a descendant of v
    let in_subtree =
        |x: VertexId, v: VertexId| tin[v as usize] <= tin[x as usize] && tout[x as usize] <= tout[v as usize];

    let mut seq: Vec<VertexId> = (0..n as VertexId).collect();
    seq.sort_unstable_by_key(|&v| (depths[v as usize], v));
    let mut uf = AncestorForest::new(n);
    for i in (0..n).rev() {
        let v = seq[i];
        uf.activate(v);
        for &y in g.neighbors(v) {
            if !uf.is_active(y) {
                continue;
            }
            let r = uf.find(y);
            if r == v {
                continue;
            }
            let ok = match d.parent[r as usize] {
                Some(p) => in_subtree(p, v),
                None => false,
            };
            if !ok {
                return Err(Violation::EdgeNotCovered { u: v, v: y });
            }
            uf.link(r, v);
        }
    }

    if d.depth != actual_depth {
        return Err(Violation::DepthMismatch { claimed: d.depth, actual: actual_depth });
    }
    Ok(())
}

/// Strongly reachable vertices of `v`: vertices earlier than `v` in the
/// ordering that can be reached from `v` along paths whose internal
/// vertices are all later than `v`. Test oracle, O(n + m) per call.
pub fn sreach_oracle(g: &Graph, order: &Ordering, v: VertexId) -> Vec<VertexId> {
    let pos_v = order.position_of(v);
    let mut seen = vec![false; g.vertex_count()];
    seen[v as usize] = true;
    let mut out = Vec::new();
    let mut stack = vec![v];
    while let Some(x) = stack.pop() {
        for &y in g.neighbors(x) {
            if seen[y as usize] {
                continue;
            }
            seen[y as usize] = true;
            if order.position_of(y) < pos_v {
                out.push(y);
            } else {
                stack.push(y);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Weakly reachable vertices of `v`: the transitive closure of strong
/// reachability. Equals the ancestor set of `v` in the decomposition built
/// from the ordering. Test oracle.
pub fn wreach_oracle(g: &Graph, order: &Ordering, v: VertexId) -> Vec<VertexId> {
    let mut seen = vec![false; g.vertex_count()];
    let mut out = Vec::new();
    let mut queue = sreach_oracle(g, order, v);
    for &x in &queue {
        seen[x as usize] = true;
    }
    while let Some(x) = queue.pop() {
        out.push(x);
        for y in sreach_oracle(g, order, x) {
            if !seen[y as usize] {
                seen[y as usize] = true;
                queue.push(y);
            }
        }
    }
    out.sort_unstable();
    out
}

/// The oracle refuses graphs larger than this.
pub const EXACT_ORACLE_MAX_VERTICES: usize = 14;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("graph has {0} vertices, oracle cap is {EXACT_ORACLE_MAX_VERTICES}")]
pub struct OracleTooLarge(pub usize);

/// Exact treedepth by subset-memoized recursion.
///
/// Empty graphs have treedepth 0, disconnected ones the maximum over their
/// components, and a connected graph `1 + min` over all single-vertex
/// removals. Exponential; capped at [`EXACT_ORACLE_MAX_VERTICES`] vertices.
pub fn exact_td_oracle(g: &Graph) -> Result<u32, OracleTooLarge> {
    let n = g.vertex_count();
    if n > EXACT_ORACLE_MAX_VERTICES {
        return Err(OracleTooLarge(n));
    }
    let nbr: Vec<u32> = (0..n)
        .map(|v| {
            g.neighbors(v as VertexId)
                .iter()
                .fold(0u32, |acc, &w| acc | (1 << w))
        })
        .collect();
    let mut memo: HashMap<u32, u32> = HashMap::new();
    let full = (1u32 << n) - 1;
    Ok(td_of_subset(full, &nbr, &mut memo))
}

fn td_of_subset(mask: u32, nbr: &[u32], memo: &mut HashMap<u32, u32>) -> u32 {
    if mask == 0 {
        return 0;
    }
    if let Some(&v) = memo.get(&mask) {
        return v;
    }
    // find the component of the lowest set bit
    let start = mask & mask.wrapping_neg();
    let mut comp = start;
    loop {
        let mut grown = comp;
        let mut bits = comp;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            grown |= nbr[v] & mask;
        }
        if grown == comp {
            break;
        }
        comp = grown;
    }
    let result = if comp != mask {
        td_of_subset(comp, nbr, memo).max(td_of_subset(mask & !comp, nbr, memo))
    } else {
        let mut best = u32::MAX;
        let mut bits = mask;
        while bits != 0 {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            best = best.min(td_of_subset(mask & !(1 << v), nbr, memo));
        }
        best + 1
    };
    memo.insert(mask, result);
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ordering(seq: &[VertexId]) -> Ordering {
        Ordering::new(seq.to_vec())
    }

    #[test]
    fn ordering_from_parents_cases() {
        // star rooted at 0
        let d = Decomposition::from_parents(vec![None, Some(0), Some(0), Some(0)]).unwrap();
        let l = ordering_from_parents(&d).unwrap();
        assert_eq!(l.at(0), 0);

        let single = Decomposition::from_parents(vec![None]).unwrap();
        assert_eq!(ordering_from_parents(&single).unwrap().seq(), &[0]);

        // chain 0 -> 1 -> 2
        let chain = Decomposition::from_parents(vec![None, Some(0), Some(1)]).unwrap();
        assert_eq!(ordering_from_parents(&chain).unwrap().seq(), &[0, 1, 2]);
    }

    #[test]
    fn ordering_from_parents_rejects_cycles() {
        let d = Decomposition::from_claimed(vec![Some(1), Some(0), None], 2);
        assert!(matches!(
            ordering_from_parents(&d),
            Err(Violation::ParentCycle { .. })
        ));
    }

    #[test]
    fn build_p3_middle_first() {
        // path 0-1-2, ordering <1, 0, 2>: both endpoints hang below 1
        let g = generators::path(3);
        let d = build_from_ordering(&g, &ordering(&[1, 0, 2]));
        assert_eq!(d.parent_of(0), Some(1));
        assert_eq!(d.parent_of(2), Some(1));
        assert_eq!(d.parent_of(1), None);
        assert_eq!(d.depth(), 2);
    }

    #[test]
    fn build_p3_identity() {
        let g = generators::path(3);
        let d = build_from_ordering(&g, &ordering(&[0, 1, 2]));
        assert_eq!(d.parent_of(2), Some(1));
        assert_eq!(d.parent_of(1), Some(0));
        assert_eq!(d.depth(), 3);
    }

    #[test]
    fn build_k3_any_order_is_chain() {
        let g = generators::complete(3);
        for seq in [[0, 1, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let d = build_from_ordering(&g, &ordering(&seq));
            assert_eq!(d.depth(), 3);
        }
    }

    #[test]
    fn verify_accepts_built() {
        let g = generators::random_gnm(40, 80, 11);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let mut seq: Vec<VertexId> = (0..40).collect();
            for i in (1..seq.len()).rev() {
                seq.swap(i, rng.gen_range(0..=i));
            }
            let d = build_from_ordering(&g, &Ordering::new(seq));
            verify_decomposition(&g, &d).unwrap();
        }
    }

    #[test]
    fn verify_c4_chain() {
        // C4 with parents 2->1, 3->2, 4->3 (1-based): a chain covers all edges
        let g = generators::cycle(4);
        let d = Decomposition::from_parents(vec![None, Some(0), Some(1), Some(2)]).unwrap();
        verify_decomposition(&g, &d).unwrap();
        assert_eq!(d.depth(), 4);
    }

    #[test]
    fn verify_rejects_all_roots() {
        let g = generators::star(4);
        let d = Decomposition::from_claimed(vec![None, None, None, None], 1);
        let err = verify_decomposition(&g, &d).unwrap_err();
        assert!(matches!(err, Violation::EdgeNotCovered { .. }));
    }

    #[test]
    fn verify_accepts_parent_chain_across_components() {
        // graph: single edge 0-2, vertex 1 isolated.
        // claimed forest: 0 -> 1 -> 2 (chain). Valid: 0 is an ancestor of 2.
        let g = Graph::from_edges(3, &[(0, 2)]);
        let d = Decomposition::from_parents(vec![None, Some(0), Some(1)]).unwrap();
        verify_decomposition(&g, &d).unwrap();
    }

    #[test]
    fn verify_checks_depth() {
        let g = generators::path(3);
        let d = Decomposition::from_claimed(vec![None, Some(0), Some(1)], 2);
        assert_eq!(
            verify_decomposition(&g, &d),
            Err(Violation::DepthMismatch { claimed: 2, actual: 3 })
        );
    }

    #[test]
    fn verify_length_mismatch() {
        let g = generators::path(3);
        let d = Decomposition::from_claimed(vec![None, Some(0)], 2);
        assert!(matches!(
            verify_decomposition(&g, &d),
            Err(Violation::LengthMismatch { .. })
        ));
    }

    #[test]
    fn sreach_cases() {
        let p3 = generators::path(3);
        assert_eq!(sreach_oracle(&p3, &ordering(&[0, 1, 2]), 2), vec![1]);
        assert_eq!(sreach_oracle(&p3, &ordering(&[1, 0, 2]), 2), vec![1]);
        // path 0-1-2-3, ordering <0, 2, 1, 3>, v = 1: both 0 and 2 are
        // direct earlier neighbours
        let p4 = generators::path(4);
        assert_eq!(sreach_oracle(&p4, &ordering(&[0, 2, 1, 3]), 1), vec![0, 2]);
    }

    #[test]
    fn wreach_cases() {
        let p3 = generators::path(3);
        assert_eq!(wreach_oracle(&p3, &ordering(&[0, 1, 2]), 2), vec![0, 1]);
        assert_eq!(wreach_oracle(&p3, &ordering(&[0, 1, 2]), 0), Vec::<VertexId>::new());
        let k3 = generators::complete(3);
        assert_eq!(wreach_oracle(&k3, &ordering(&[2, 0, 1]), 1), vec![0, 2]);
    }

    /// Direct definition of weak reachability: x earlier than v, reachable
    /// from v along a path whose internal vertices are later than x.
    fn wreach_direct(g: &Graph, order: &Ordering, v: VertexId) -> Vec<VertexId> {
        let mut out = Vec::new();
        for x in g.vertices() {
            if order.position_of(x) >= order.position_of(v) {
                continue;
            }
            // BFS from v through vertices later than x
            let mut seen = vec![false; g.vertex_count()];
            seen[v as usize] = true;
            let mut stack = vec![v];
            let mut found = false;
            'bfs: while let Some(a) = stack.pop() {
                for &b in g.neighbors(a) {
                    if b == x {
                        found = true;
                        break 'bfs;
                    }
                    if !seen[b as usize] && order.position_of(b) > order.position_of(x) {
                        seen[b as usize] = true;
                        stack.push(b);
                    }
                }
            }
            if found {
                out.push(x);
            }
        }
        out
    }

    #[test]
    fn wreach_closure_matches_direct_definition() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..60 {
            let n = rng.gen_range(2..9);
            let maxm = n * (n - 1) / 2;
            let g = generators::random_gnm(n, rng.gen_range(0..=maxm), rng.gen());
            let mut seq: Vec<VertexId> = (0..n as VertexId).collect();
            for i in (1..n).rev() {
                seq.swap(i, rng.gen_range(0..=i));
            }
            let order = Ordering::new(seq);
            for v in g.vertices() {
                assert_eq!(
                    wreach_oracle(&g, &order, v),
                    wreach_direct(&g, &order, v),
                    "n={n} v={v}"
                );
            }
        }
    }

    #[test]
    fn exact_oracle_pinned_values() {
        assert_eq!(exact_td_oracle(&generators::complete(5)), Ok(5));
        assert_eq!(exact_td_oracle(&generators::path(7)), Ok(3));
        // C5: removing any vertex leaves P4 with treedepth 3
        assert_eq!(exact_td_oracle(&generators::cycle(5)), Ok(4));
        assert_eq!(exact_td_oracle(&generators::cycle(6)), Ok(4));
        assert_eq!(exact_td_oracle(&generators::star(5)), Ok(2));
        let empty = Graph::from_edges(0, &[]);
        assert_eq!(exact_td_oracle(&empty), Ok(0));
    }

    #[test]
    fn exact_oracle_refuses_large() {
        let g = generators::path(15);
        assert_eq!(exact_td_oracle(&g), Err(OracleTooLarge(15)));
    }

    #[test]
    fn lower_bound_never_exceeds_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..120 {
            let n = rng.gen_range(1..9);
            let maxm = n * (n - 1) / 2;
            let g = generators::random_gnm(n, rng.gen_range(0..=maxm), rng.gen());
            let exact = exact_td_oracle(&g).unwrap();
            for seed in 0..4 {
                assert!(g.td_lower_bound(seed) <= exact);
            }
        }
    }

    #[test]
    fn roundtrip_does_not_increase_depth() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..60 {
            let n = rng.gen_range(2..20);
            let maxm = n * (n - 1) / 2;
            let m = rng.gen_range(0..=maxm);
            let g = generators::random_gnm(n, m, rng.gen());
            // a valid but generally suboptimal decomposition for g: build on
            // a supergraph with extra edges
            let extra = generators::random_gnm(n, maxm.min(m + 3), rng.gen());
            let mut edges: Vec<_> = g.edges().collect();
            edges.extend(extra.edges());
            let sup = Graph::from_edges(n, &edges);
            let mut seq: Vec<VertexId> = (0..n as VertexId).collect();
            for i in (1..n).rev() {
                seq.swap(i, rng.gen_range(0..=i));
            }
            let d = build_from_ordering(&sup, &Ordering::new(seq));
            verify_decomposition(&g, &d).unwrap();
            let rebuilt = build_from_ordering(&g, &ordering_from_parents(&d).unwrap());
            assert!(rebuilt.depth() <= d.depth());
            verify_decomposition(&g, &rebuilt).unwrap();
        }
    }

    #[test]
    fn subtree_heights_of_chain_and_star() {
        let chain = Decomposition::from_parents(vec![None, Some(0), Some(1)]).unwrap();
        assert_eq!(chain.subtree_heights(), vec![3, 2, 1]);
        let star = Decomposition::from_parents(vec![None, Some(0), Some(0), Some(0)]).unwrap();
        assert_eq!(star.subtree_heights(), vec![2, 1, 1, 1]);
    }

    #[test]
    fn ancestors_follow_parent_chain() {
        let d = Decomposition::from_parents(vec![None, Some(0), Some(1), Some(1)]).unwrap();
        assert_eq!(d.ancestors_of(2), vec![1, 0]);
        assert_eq!(d.ancestors_of(0), Vec::<VertexId>::new());
    }
}
