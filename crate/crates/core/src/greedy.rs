//! Greedy ordering heuristics.
//!
//! All four work through the same loop: keep unprocessed vertices in a
//! min-score heap, pop the cheapest, prepend it to the ordering. They
//! differ in how much bookkeeping they afford per step:
//!
//! * [`greedy_eliminate`] simulates elimination, turning each popped
//!   vertex's neighbourhood into a clique. Best quality, Theta(n*d^2)
//!   time and Theta(n*d) memory in bad cases.
//! * [`greedy_build`] simulates the building process instead, keeping one
//!   neighbour list per component root. O(min(m*alpha(n), n*d)) time,
//!   O(m) space, slightly worse orderings.
//! * [`greedy_build_lookahead`] is the building version plus exact
//!   re-evaluation of the heap's top vertex, giving elimination-quality
//!   orderings without the memory blowup.
//! * [`greedy_superfast`] drops the heap entirely and scans the last
//!   `ell` unprocessed vertices of a fixed ordering for the one of
//!   minimum height.

use thiserror::Error;

use crate::decomposition::{build_from_ordering, Decomposition, Ordering};
use crate::dsu::AncestorForest;
use crate::graph::{Graph, VertexId};
use crate::heap::ScoredHeap;

/// Weights of the greedy score `alpha*degree + beta*height + gamma*static`.
///
/// Lower combined scores pop first and therefore land last in the
/// ordering, at the bottom of the tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScoreParams {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
}

impl ScoreParams {
    /// The standard single-run choice: small degree weight, much larger
    /// height weight, no static score.
    pub const DEFAULT: ScoreParams = ScoreParams { alpha: 1, beta: 9, gamma: 0 };

    pub fn new(alpha: i64, beta: i64, gamma: i64) -> ScoreParams {
        assert!(alpha >= 0 && beta >= 0 && gamma >= 0);
        ScoreParams { alpha, beta, gamma }
    }

    #[inline]
    fn key(&self, degree: usize, height: u32, score: u32) -> i64 {
        self.alpha * degree as i64 + self.beta * height as i64 + self.gamma * score as i64
    }
}

impl Default for ScoreParams {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Why a run was abandoned under a bad cutoff.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum Abandoned {
    #[error("a subtree height reached the bad cutoff {0}")]
    Height(u32),
    #[error("a working neighbourhood reached the bad cutoff {0}")]
    Neighborhood(u32),
}

/// Output of a heuristic run.
#[derive(Clone, Debug)]
pub struct GreedyResult {
    pub decomposition: Decomposition,
    pub ordering: Ordering,
}

impl GreedyResult {
    pub fn depth(&self) -> u32 {
        self.decomposition.depth()
    }
}

/// Per-vertex measurements taken while a heuristic runs, for diagnostics
/// and tests.
#[derive(Clone, Debug, Default)]
pub struct EliminationTrace {
    /// Size of the popped vertex's working neighbourhood.
    pub degree_at_pop: Vec<usize>,
    /// Height score of the popped vertex at pop time.
    pub height_at_pop: Vec<u32>,
}

/// Memory accounting of a building run: total length of live neighbour
/// lists at the start and its maximum over the run.
#[derive(Clone, Copy, Debug, Default)]
pub struct MemoryTrace {
    pub initial: usize,
    pub peak: usize,
}

/// Merge of two ascending lists, skipping one element from each.
fn merge_union(a: &[VertexId], skip_a: VertexId, b: &[VertexId], skip_b: VertexId) -> Vec<VertexId> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    while i < a.len() || j < b.len() {
        let x = if i < a.len() { a[i] } else { VertexId::MAX };
        let y = if j < b.len() { b[j] } else { VertexId::MAX };
        if x <= y {
            i += 1;
            if x == y {
                j += 1;
            }
            if x != skip_a {
                out.push(x);
            }
        } else {
            j += 1;
            if y != skip_b {
                out.push(y);
            }
        }
    }
    out
}

/// Greedy by elimination.
///
/// Pops the minimum-score vertex, replaces its neighbourhood by a clique
/// (sorted lists merged pairwise), and bumps each neighbour's height and
/// heap key. Parents cannot be assigned on the fly because the ordering of
/// unprocessed vertices is still open; a second building pass over the
/// finished ordering produces the decomposition.
pub fn greedy_eliminate(
    g: &Graph,
    params: ScoreParams,
    init_score: &[u32],
    bad_cutoff: Option<u32>,
) -> Result<GreedyResult, Abandoned> {
    eliminate_impl(g, params, init_score, bad_cutoff, None)
}

/// [`greedy_eliminate`] with per-pop measurements.
#[doc(hidden)]
pub fn greedy_eliminate_traced(
    g: &Graph,
    params: ScoreParams,
    init_score: &[u32],
    bad_cutoff: Option<u32>,
) -> Result<(GreedyResult, EliminationTrace), Abandoned> {
    let mut trace = EliminationTrace {
        degree_at_pop: vec![0; g.vertex_count()],
        height_at_pop: vec![0; g.vertex_count()],
    };
    let res = eliminate_impl(g, params, init_score, bad_cutoff, Some(&mut trace))?;
    Ok((res, trace))
}

fn eliminate_impl(
    g: &Graph,
    params: ScoreParams,
    init_score: &[u32],
    bad_cutoff: Option<u32>,
    mut trace: Option<&mut EliminationTrace>,
) -> Result<GreedyResult, Abandoned> {
    let n = g.vertex_count();
    assert_eq!(init_score.len(), n);
    let mut work: Vec<Vec<VertexId>> = (0..n).map(|v| g.neighbors(v as VertexId).to_vec()).collect();
    let mut height = vec![1u32; n];
    let keys: Vec<i64> = (0..n)
        .map(|v| params.key(work[v].len(), 1, init_score[v]))
        .collect();
    let mut heap = ScoredHeap::from_keys(keys);
    let mut pops: Vec<VertexId> = Vec::with_capacity(n);

    while let Some((v, _)) = heap.pop_min() {
        let nv = std::mem::take(&mut work[v as usize]);
        if let Some(t) = trace.as_deref_mut() {
            t.degree_at_pop[v as usize] = nv.len();
            t.height_at_pop[v as usize] = height[v as usize];
        }
        pops.push(v);
        for &x in &nv {
            let merged = merge_union(&work[x as usize], v, &nv, x);
            if let Some(bad) = bad_cutoff {
                if merged.len() >= bad as usize {
                    return Err(Abandoned::Neighborhood(bad));
                }
            }
            work[x as usize] = merged;
            let h = height[v as usize] + 1;
            if height[x as usize] < h {
                height[x as usize] = h;
                if let Some(bad) = bad_cutoff {
                    if h >= bad {
                        return Err(Abandoned::Height(bad));
                    }
                }
            }
            heap.update(
                x,
                params.key(work[x as usize].len(), height[x as usize], init_score[x as usize]),
            );
        }
    }

    pops.reverse();
    let ordering = Ordering::new(pops);
    let decomposition = build_from_ordering(g, &ordering);
    debug_assert_eq!(
        decomposition.depth(),
        height.iter().copied().max().unwrap_or(0),
        "height bookkeeping must predict the built depth"
    );
    Ok(GreedyResult { decomposition, ordering })
}

/// Greedy by building.
///
/// Maintains the contracted graph instead of the eliminated one: for each
/// component root `r` of the processed subgraph, `work[r]` holds the
/// unprocessed neighbours of that component. Parents are assigned on the
/// fly through the ancestor union-find. Since the degree of an unprocessed
/// vertex is just its original degree, the degree term of a neighbour
/// update uses `max(|work[x]|, |work[v]|)` as a slightly better signal.
pub fn greedy_build(
    g: &Graph,
    params: ScoreParams,
    init_score: &[u32],
    bad_cutoff: Option<u32>,
) -> Result<GreedyResult, Abandoned> {
    build_impl(g, params, init_score, bad_cutoff, 0, None)
}

/// [`greedy_build`] with memory accounting.
#[doc(hidden)]
pub fn greedy_build_traced(
    g: &Graph,
    params: ScoreParams,
    init_score: &[u32],
    bad_cutoff: Option<u32>,
) -> Result<(GreedyResult, MemoryTrace), Abandoned> {
    let mut trace = MemoryTrace::default();
    let res = build_impl(g, params, init_score, bad_cutoff, 0, Some(&mut trace))?;
    Ok((res, trace))
}

/// Greedy by building with exact lookahead on the heap's top vertex.
///
/// Before each pop the top vertex's degree term is re-evaluated exactly by
/// computing the union of its adjacent component neighbourhoods on the fly
/// and then forgetting it. The loop stops as soon as the top stays on top
/// after re-evaluation, or after `ell` rounds. `ell = 1024` gives
/// orderings about as good as elimination at building-process cost.
pub fn greedy_build_lookahead(
    g: &Graph,
    params: ScoreParams,
    init_score: &[u32],
    ell: usize,
    bad_cutoff: Option<u32>,
) -> Result<GreedyResult, Abandoned> {
    assert!(ell >= 1);
    build_impl(g, params, init_score, bad_cutoff, ell, None)
}

fn build_impl(
    g: &Graph,
    params: ScoreParams,
    init_score: &[u32],
    bad_cutoff: Option<u32>,
    lookahead: usize,
    mut trace: Option<&mut MemoryTrace>,
) -> Result<GreedyResult, Abandoned> {
    let n = g.vertex_count();
    assert_eq!(init_score.len(), n);
    let mut work: Vec<Vec<VertexId>> = (0..n).map(|v| g.neighbors(v as VertexId).to_vec()).collect();
    let mut parent: Vec<Option<VertexId>> = vec![None; n];
    let mut uf = AncestorForest::new(n);
    let mut height = vec![1u32; n];
    let keys: Vec<i64> = (0..n)
        .map(|v| params.key(work[v].len(), 1, init_score[v]))
        .collect();
    let mut heap = ScoredHeap::from_keys(keys);
    let mut pops: Vec<VertexId> = Vec::with_capacity(n);

    // live neighbour-list length accounting; the building process never
    // lets it grow past the initial 2m
    let mut retained: usize = work.iter().map(Vec::len).sum();
    let initial_retained = retained;
    if let Some(t) = trace.as_deref_mut() {
        t.initial = retained;
        t.peak = retained;
    }

    // scratch for exact lookahead re-evaluation
    let mut mark_vertex = vec![0u64; n];
    let mut mark_root = vec![0u64; n];
    let mut stamp = 0u64;

    while !heap.is_empty() {
        if lookahead > 0 {
            for _ in 0..lookahead {
                let t = heap.peek().unwrap();
                stamp += 1;
                let mut exact = 0usize;
                for &y in g.neighbors(t) {
                    if !uf.is_active(y) {
                        if mark_vertex[y as usize] != stamp {
                            mark_vertex[y as usize] = stamp;
                            exact += 1;
                        }
                    } else {
                        let r = uf.find(y);
                        if mark_root[r as usize] != stamp {
                            mark_root[r as usize] = stamp;
                            for &w in &work[r as usize] {
                                if w != t && mark_vertex[w as usize] != stamp {
                                    mark_vertex[w as usize] = stamp;
                                    exact += 1;
                                }
                            }
                        }
                    }
                }
                let key = params.key(exact, height[t as usize], init_score[t as usize]);
                if key == heap.key_of(t) {
                    break;
                }
                heap.update(t, key);
                if heap.peek() == Some(t) {
                    break;
                }
            }
        }

        let (v, _) = heap.pop_min().unwrap();
        pops.push(v);
        uf.activate(v);
        let mut gv = std::mem::take(&mut work[v as usize]);
        for &y in g.neighbors(v) {
            if !uf.is_active(y) {
                continue;
            }
            let r = uf.find(y);
            if r == v {
                // second edge into an already absorbed component
                let pos = gv.binary_search(&y).expect("processed neighbour still listed");
                gv.remove(pos);
                retained -= 1;
                continue;
            }
            parent[r as usize] = Some(v);
            uf.link(r, v);
            debug_assert!(height[v as usize] > height[r as usize]);
            let gr = std::mem::take(&mut work[r as usize]);
            let merged = merge_union(&gr, v, &gv, y);
            retained = retained - gv.len() - gr.len() + merged.len();
            gv = merged;
        }
        let hv = height[v as usize];
        for &x in &gv {
            let h = hv + 1;
            if height[x as usize] < h {
                height[x as usize] = h;
                if let Some(bad) = bad_cutoff {
                    if h >= bad {
                        return Err(Abandoned::Height(bad));
                    }
                }
            }
            heap.update(
                x,
                params.key(
                    work[x as usize].len().max(gv.len()),
                    height[x as usize],
                    init_score[x as usize],
                ),
            );
        }
        work[v as usize] = gv;
        if let Some(t) = trace.as_deref_mut() {
            t.peak = t.peak.max(retained);
        }
        debug_assert!(
            retained <= initial_retained,
            "retained neighbour storage grew past its initial total"
        );
    }

    pops.reverse();
    let ordering = Ordering::new(pops);
    let decomposition = Decomposition::from_parents(parent).expect("building yields a forest");
    debug_assert_eq!(
        decomposition.depth(),
        height.iter().copied().max().unwrap_or(0)
    );
    debug_assert_eq!(
        decomposition.parents(),
        build_from_ordering(g, &ordering).parents(),
        "on-the-fly parents must match the building pass"
    );
    Ok(GreedyResult { decomposition, ordering })
}

/// Super-fast building with a bounded lookahead window.
///
/// No heap and no neighbour lists: among the last `ell` unprocessed
/// vertices of `init_order`, compute the height each would get if
/// processed now and take the minimum, breaking ties toward the later
/// position. `ell = 1` degenerates to the plain building process on
/// `init_order`.
pub fn greedy_superfast(g: &Graph, ell: usize, init_order: &Ordering) -> GreedyResult {
    assert!(ell >= 1);
    let n = g.vertex_count();
    assert_eq!(init_order.len(), n);
    let mut pending: Vec<VertexId> = init_order.seq().to_vec();
    let mut parent: Vec<Option<VertexId>> = vec![None; n];
    let mut uf = AncestorForest::new(n);
    let mut height = vec![1u32; n];
    let mut pops: Vec<VertexId> = Vec::with_capacity(n);

    while !pending.is_empty() {
        let window = ell.min(pending.len());
        let mut best_idx = pending.len() - 1;
        let mut best_h = u32::MAX;
        for k in 0..window {
            let idx = pending.len() - 1 - k;
            let c = pending[idx];
            let mut h = 1u32;
            for &y in g.neighbors(c) {
                if uf.is_active(y) {
                    let r = uf.find(y);
                    h = h.max(height[r as usize] + 1);
                }
            }
            // strict comparison keeps the later position on ties
            if h < best_h {
                best_h = h;
                best_idx = idx;
            }
        }
        let v = pending.remove(best_idx);
        pops.push(v);
        uf.activate(v);
        for &y in g.neighbors(v) {
            if !uf.is_active(y) {
                continue;
            }
            let r = uf.find(y);
            if r != v {
                parent[r as usize] = Some(v);
                uf.link(r, v);
            }
        }
        height[v as usize] = best_h;
    }

    pops.reverse();
    let ordering = Ordering::new(pops);
    let decomposition = Decomposition::from_parents(parent).expect("building yields a forest");
    debug_assert_eq!(
        decomposition.parents(),
        build_from_ordering(g, &ordering).parents()
    );
    GreedyResult { decomposition, ordering }
}
