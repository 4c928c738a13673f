//! Divide & conquer orchestration.
//!
//! Per connected component the pipeline is: a super-fast pass for an
//! instant incumbent, lookahead building (or full elimination when the
//! graph is small enough) under a sweep of score parameters seeded with
//! the best decomposition's heights, an early exit when the lower bound is
//! met, and then rounds of balanced-cut recursion with rising effort:
//! more terminal pairs, more balance goals and one extra recursion level
//! per round.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomposition::{verify_decomposition, Decomposition, Ordering};
use crate::flowcutter::{enumerate_cuts, CutResult, PiercingPolicy};
use crate::graph::{Graph, VertexId};
use crate::greedy::{
    greedy_build_lookahead, greedy_eliminate, greedy_superfast, ScoreParams,
};

/// Depth thresholds steering a recursive attempt.
///
/// `bad` abandons anything that cannot end strictly below it; `good`
/// permits returning as soon as the depth is at most it.
#[derive(Clone, Copy, Debug, Default)]
pub struct Cutoffs {
    pub bad: Option<u32>,
    pub good: Option<u32>,
}

impl Cutoffs {
    pub fn none() -> Cutoffs {
        Cutoffs::default()
    }
}

/// Wall-clock, round and interrupt limits for a solve.
///
/// Every random choice derives from `seed`; with no deadline and no stop
/// flag, two runs with the same seed and round limit produce identical
/// output.
#[derive(Clone, Debug)]
pub struct Budget {
    pub seed: u64,
    deadline: Option<Instant>,
    pub max_rounds: Option<u32>,
    stop: Option<Arc<AtomicBool>>,
}

impl Budget {
    /// No limits: runs escalation rounds until stopped externally.
    pub fn unlimited(seed: u64) -> Budget {
        Budget { seed, deadline: None, max_rounds: None, stop: None }
    }

    pub fn with_deadline(mut self, limit: Duration) -> Budget {
        self.deadline = Some(Instant::now() + limit);
        self
    }

    pub fn with_rounds(mut self, rounds: u32) -> Budget {
        self.max_rounds = Some(rounds);
        self
    }

    /// Attaches an externally settable stop flag, e.g. from a signal
    /// handler.
    pub fn with_stop_flag(mut self, flag: Arc<AtomicBool>) -> Budget {
        self.stop = Some(flag);
        self
    }

    pub fn expired(&self) -> bool {
        if let Some(f) = &self.stop {
            if f.load(AtomicOrdering::Relaxed) {
                return true;
            }
        }
        match self.deadline {
            Some(d) => Instant::now() >= d,
            None => false,
        }
    }
}

/// Tuning knobs of the solve pipeline.
#[derive(Clone, Debug)]
pub struct SolveConfig {
    pub superfast_ell: usize,
    pub lookahead_ell: usize,
    /// Balance goals swept per round, as `num/den` fractions of the
    /// vertex count required on the smaller side.
    pub balance_goals: Vec<(u32, u32)>,
    /// Terminal pairs in round `r` are `base_terminal_pairs << r`.
    pub base_terminal_pairs: u32,
    /// Full elimination replaces lookahead building while
    /// `n * incumbent_depth` stays at or below this.
    pub elimination_work_limit: u64,
    pub piercing: PiercingPolicy,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            superfast_ell: 64,
            lookahead_ell: 1024,
            balance_goals: vec![(1, 5), (1, 4), (1, 3)],
            base_terminal_pairs: 5,
            elimination_work_limit: 10_000_000,
            piercing: PiercingPolicy::AvoidAugmenting,
        }
    }
}

/// The best decomposition found so far, readable from other threads at
/// any time. Writes replace the whole decomposition under a lock, so a
/// reader never observes a torn or invalid one.
#[derive(Clone, Default)]
pub struct SharedIncumbent {
    inner: Arc<Mutex<Option<Decomposition>>>,
}

impl SharedIncumbent {
    pub fn new() -> SharedIncumbent {
        SharedIncumbent::default()
    }

    /// Installs `d` if it beats the current incumbent; returns whether it
    /// was installed.
    pub fn offer(&self, d: &Decomposition) -> bool {
        let mut guard = self.inner.lock().unwrap();
        match guard.as_ref() {
            Some(cur) if cur.depth() <= d.depth() => false,
            _ => {
                *guard = Some(d.clone());
                true
            }
        }
    }

    pub fn snapshot(&self) -> Option<Decomposition> {
        self.inner.lock().unwrap().clone()
    }
}

/// Score parameter triples tried in escalation round `round`.
///
/// Round 0 is the single default triple; each later round extends the
/// list with fixed further choices, so results only improve with rounds.
pub fn parameter_sweep(round: u32) -> Vec<ScoreParams> {
    const MASTER: [(i64, i64, i64); 12] = [
        (1, 9, 0),
        (1, 4, 0),
        (1, 1, 0),
        (0, 1, 0),
        (1, 9, 1),
        (1, 4, 2),
        (2, 9, 0),
        (1, 16, 0),
        (1, 9, 4),
        (1, 2, 1),
        (3, 8, 0),
        (1, 32, 0),
    ];
    let count = match round {
        0 => 1,
        1 => 4,
        2 => 6,
        r => (6 + 2 * (r as usize - 2)).min(MASTER.len()),
    };
    MASTER[..count]
        .iter()
        .map(|&(a, b, c)| ScoreParams::new(a, b, c))
        .collect()
}

/// Computes a treedepth decomposition of `g` within the budget.
///
/// Disconnected inputs are solved per component and assembled into a
/// forest. The result always verifies against `g`.
pub fn solve(g: &Graph, budget: &Budget) -> Decomposition {
    solve_with(g, budget, &SolveConfig::default(), &SharedIncumbent::new())
}

/// [`solve`] with explicit configuration and a shared incumbent cell that
/// an interrupt handler may read while the solve is still running.
pub fn solve_with(
    g: &Graph,
    budget: &Budget,
    config: &SolveConfig,
    shared: &SharedIncumbent,
) -> Decomposition {
    let n = g.vertex_count();
    if n == 0 {
        let empty = Decomposition::from_parents(Vec::new()).unwrap();
        shared.offer(&empty);
        return empty;
    }
    let comps = g.components();
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let ctx = Ctx { budget, config };

    let mut parts: Vec<(Graph, Vec<VertexId>, Decomposition)> = Vec::with_capacity(comps.len());
    for comp in &comps {
        let (sub, map) = g.induced_subgraph(comp);
        let quick = greedy_superfast(&sub, config.superfast_ell, &descending_degree(&sub));
        parts.push((sub, map.original_ids().to_vec(), quick.decomposition));
    }
    let mut forest = assemble(n, &parts);
    shared.offer(&forest);

    for i in 0..parts.len() {
        if ctx.budget.expired() {
            break;
        }
        let sub = parts[i].0.clone();
        let mut on_improve = |d: &Decomposition| {
            parts[i].2 = d.clone();
            let f = assemble(n, &parts);
            shared.offer(&f);
        };
        let best = solve_component(&sub, &ctx, &mut rng, &mut on_improve);
        parts[i].2 = best;
        forest = assemble(n, &parts);
        shared.offer(&forest);
    }

    forest = assemble(n, &parts);
    debug_assert!(verify_decomposition(g, &forest).is_ok());
    shared.offer(&forest);
    shared.snapshot().unwrap_or(forest)
}

struct Ctx<'a> {
    budget: &'a Budget,
    config: &'a SolveConfig,
}

/// Initial static ordering: most central vertices first.
fn descending_degree(g: &Graph) -> Ordering {
    let mut seq: Vec<VertexId> = g.vertices().collect();
    seq.sort_unstable_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    Ordering::new(seq)
}

/// Rebuilds a forest decomposition of the whole graph from per-component
/// pieces.
fn assemble(n: usize, parts: &[(Graph, Vec<VertexId>, Decomposition)]) -> Decomposition {
    let mut parent: Vec<Option<VertexId>> = vec![None; n];
    for (_, map, d) in parts {
        for v in 0..d.len() as VertexId {
            if let Some(p) = d.parent_of(v) {
                parent[map[v as usize] as usize] = Some(map[p as usize]);
            }
        }
    }
    Decomposition::from_parents(parent).expect("component pieces form a forest")
}

/// Full escalation pipeline for one connected component.
fn solve_component(
    g: &Graph,
    ctx: &Ctx,
    rng: &mut ChaCha8Rng,
    on_improve: &mut dyn FnMut(&Decomposition),
) -> Decomposition {
    let n = g.vertex_count();
    let mut best = greedy_superfast(g, ctx.config.superfast_ell, &descending_degree(g)).decomposition;
    on_improve(&best);
    if n <= 1 {
        return best;
    }
    let lower = g.td_lower_bound(rng.gen());
    debug_assert!(lower <= best.depth());

    let mut round = 0u32;
    loop {
        if best.depth() == lower || ctx.budget.expired() {
            break;
        }
        if let Some(max) = ctx.budget.max_rounds {
            if round >= max {
                break;
            }
        }

        if let Some(d) = greedy_phase(g, ctx, round, &best, rng) {
            best = d;
            on_improve(&best);
        }
        if best.depth() == lower || ctx.budget.expired() {
            break;
        }

        if let Some(d) = cut_phase(g, ctx, rng, round, &best, Cutoffs::none(), round) {
            debug_assert!(d.depth() < best.depth());
            best = d;
            on_improve(&best);
        }
        round += 1;
    }
    best
}

/// Reduced pipeline used inside recursive splits: one greedy sweep and,
/// while recursion budget remains, one run of cut attempts.
fn solve_rec(
    g: &Graph,
    ctx: &Ctx,
    rng: &mut ChaCha8Rng,
    cutoffs: Cutoffs,
    rec_remaining: u32,
    round: u32,
) -> Decomposition {
    let n = g.vertex_count();
    let mut best = greedy_superfast(g, ctx.config.superfast_ell, &descending_degree(g)).decomposition;
    if n <= 1 || reached_good(&best, cutoffs) {
        return best;
    }
    let lower = g.td_lower_bound(rng.gen());

    if let Some(d) = greedy_phase(g, ctx, round.min(2), &best, rng) {
        best = d;
    }
    if best.depth() == lower || reached_good(&best, cutoffs) || ctx.budget.expired() {
        return best;
    }

    if rec_remaining > 0 {
        if let Some(d) = cut_phase(g, ctx, rng, round, &best, cutoffs, rec_remaining - 1) {
            best = d;
        }
    }
    best
}

fn reached_good(d: &Decomposition, cutoffs: Cutoffs) -> bool {
    cutoffs.good.is_some_and(|good| d.depth() <= good)
}

/// One sweep of scored greedy runs, seeded with the incumbent's subtree
/// heights. Returns an improvement if any run beat the incumbent.
fn greedy_phase(
    g: &Graph,
    ctx: &Ctx,
    round: u32,
    incumbent: &Decomposition,
    _rng: &mut ChaCha8Rng,
) -> Option<Decomposition> {
    let n = g.vertex_count();
    let mut best: Option<Decomposition> = None;
    for params in parameter_sweep(round) {
        if ctx.budget.expired() {
            break;
        }
        let reference = best.as_ref().unwrap_or(incumbent);
        let bad = reference.depth();
        if bad <= 2 {
            break;
        }
        let init = reference.subtree_heights();
        let work = n as u64 * bad as u64;
        let run = if work <= ctx.config.elimination_work_limit {
            greedy_eliminate(g, params, &init, Some(bad))
        } else {
            greedy_build_lookahead(g, params, &init, ctx.config.lookahead_ell, Some(bad))
        };
        if let Ok(r) = run {
            if r.depth() < bad {
                best = Some(r.decomposition);
            }
        }
    }
    best
}

/// One round of balanced-cut attempts: per balance goal, take the first
/// qualifying cut and recurse on the split. Returns an improvement over
/// the incumbent if one was found.
fn cut_phase(
    g: &Graph,
    ctx: &Ctx,
    rng: &mut ChaCha8Rng,
    round: u32,
    incumbent: &Decomposition,
    cutoffs: Cutoffs,
    rec_remaining: u32,
) -> Option<Decomposition> {
    let mut best: Option<Decomposition> = None;
    if g.vertex_count() < 3 {
        return None;
    }
    let pairs = ctx
        .config
        .base_terminal_pairs
        .saturating_mul(1 << round.min(16))
        .min(4096);
    for &goal in &ctx.config.balance_goals {
        if ctx.budget.expired() {
            break;
        }
        let current = best.as_ref().unwrap_or(incumbent).depth();
        if current <= 2 {
            break;
        }
        let size_limit = current - 1;
        let mut captured: Option<CutResult> = None;
        let budget = ctx.budget;
        enumerate_cuts(
            g,
            pairs,
            goal,
            size_limit,
            rng.gen(),
            ctx.config.piercing,
            |cut| {
                if budget.expired() {
                    return ControlFlow::Break(());
                }
                if cut.meets_balance(goal.0, goal.1) {
                    captured = Some(cut.clone());
                    return ControlFlow::Break(());
                }
                ControlFlow::Continue(())
            },
        );
        let Some(cut) = captured else { continue };
        let attempt = Cutoffs { bad: Some(current), good: cutoffs.good };
        if let Some(d) = split_rec(g, &cut, attempt, ctx, rng, rec_remaining, round) {
            debug_assert!(d.depth() < current);
            best = Some(d);
        }
    }
    best
}

/// Splits on a cut: the cut vertices form a line above the recursively
/// solved components of the remainder.
///
/// Returns `None` when the attempt is abandoned: a component's super-fast
/// estimate or final depth forces the total to reach the bad cutoff.
fn split_rec(
    g: &Graph,
    cut: &CutResult,
    cutoffs: Cutoffs,
    ctx: &Ctx,
    rng: &mut ChaCha8Rng,
    rec_remaining: u32,
    round: u32,
) -> Option<Decomposition> {
    let n = g.vertex_count();
    let k = cut.size() as u32;
    if let Some(bad) = cutoffs.bad {
        if k + 1 >= bad {
            return None;
        }
    }
    // highest-degree cut vertices go on top of the line
    let mut line = cut.cut.clone();
    line.sort_unstable_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));

    let mut rest: Vec<VertexId> = Vec::with_capacity(n - k as usize);
    rest.extend_from_slice(&cut.side_small);
    rest.extend_from_slice(&cut.side_large);
    rest.sort_unstable();
    let (remainder, to_g) = g.induced_subgraph(&rest);

    let comps = remainder.components();
    let mut pieces: Vec<(Vec<VertexId>, Decomposition)> = Vec::with_capacity(comps.len());
    let mut sibling_max = 0u32;
    // cheap estimates first; a hopeless component abandons the attempt
    let mut comp_graphs = Vec::with_capacity(comps.len());
    for comp in &comps {
        let (sub, map) = remainder.induced_subgraph(comp);
        let est = greedy_superfast(&sub, ctx.config.superfast_ell, &descending_degree(&sub));
        if let Some(bad) = cutoffs.bad {
            if k + est.depth() >= bad {
                return None;
            }
        }
        comp_graphs.push((sub, map, est.decomposition));
    }
    for (sub, map, est) in comp_graphs {
        if ctx.budget.expired() {
            // keep the estimate rather than solving deeper
            sibling_max = sibling_max.max(est.depth());
            pieces.push((map.original_ids().to_vec(), est));
            continue;
        }
        let child_cutoffs = Cutoffs {
            bad: cutoffs.bad.map(|b| b - k),
            good: match (cutoffs.good, sibling_max) {
                (Some(gd), s) => Some(gd.saturating_sub(k).max(s)),
                (None, 0) => None,
                (None, s) => Some(s),
            },
        };
        let solved = solve_rec(&sub, ctx, rng, child_cutoffs, rec_remaining, round);
        let d = if solved.depth() <= est.depth() { solved } else { est };
        if let Some(bad) = cutoffs.bad {
            if k + d.depth() >= bad {
                return None;
            }
        }
        sibling_max = sibling_max.max(d.depth());
        pieces.push((map.original_ids().to_vec(), d));
    }

    // assemble: line chain, component roots below the last line vertex
    let mut parent: Vec<Option<VertexId>> = vec![None; n];
    for w in line.windows(2) {
        parent[w[1] as usize] = Some(w[0]);
    }
    let anchor = *line.last().unwrap();
    for (map, d) in &pieces {
        for v in 0..d.len() as VertexId {
            let pv = to_g.original(map[v as usize]);
            parent[pv as usize] = match d.parent_of(v) {
                Some(p) => Some(to_g.original(map[p as usize])),
                None => Some(anchor),
            };
        }
    }
    let out = Decomposition::from_parents(parent).expect("split assembly forms a forest");
    debug_assert_eq!(out.depth(), k + sibling_max);
    Some(out)
}

/// Arranges a separating cut in a line above the recursively solved
/// components of `g` minus the cut. `None` when the bad cutoff makes the
/// attempt pointless.
pub fn split_on_cut(
    g: &Graph,
    cut: &CutResult,
    cutoffs: Cutoffs,
    budget: &Budget,
) -> Option<Decomposition> {
    let config = SolveConfig::default();
    let ctx = Ctx { budget, config: &config };
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    split_rec(g, cut, cutoffs, &ctx, &mut rng, 1, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::exact_td_oracle;
    use crate::flowcutter::CutSide;
    use crate::generators;
    use crate::graph::Graph;

    fn quick_budget(seed: u64) -> Budget {
        Budget::unlimited(seed).with_rounds(3)
    }

    #[test]
    fn parameter_sweep_grows() {
        let r0 = parameter_sweep(0);
        assert_eq!(r0, vec![ScoreParams::new(1, 9, 0)]);
        let r1 = parameter_sweep(1);
        assert_eq!(r1.len(), 4);
        assert_eq!(&r1[..1], &r0[..]);
        let r2 = parameter_sweep(2);
        assert_eq!(r2.len(), 6);
        assert_eq!(&r2[..4], &r1[..]);
        assert!(parameter_sweep(9).len() >= r2.len());
    }

    #[test]
    fn k10_exits_on_lower_bound() {
        let g = generators::complete(10);
        let d = solve(&g, &quick_budget(0));
        assert_eq!(d.depth(), 10);
        verify_decomposition(&g, &d).unwrap();
    }

    #[test]
    fn bridged_triangles_optimal() {
        let g = Graph::from_edges(
            7,
            &[(0, 1), (1, 2), (0, 2), (4, 5), (5, 6), (4, 6), (2, 3), (3, 4)],
        );
        assert_eq!(exact_td_oracle(&g), Ok(4));
        let d = solve(&g, &quick_budget(0));
        verify_decomposition(&g, &d).unwrap();
        assert_eq!(d.depth(), 4);
    }

    #[test]
    fn p63_close_to_optimal() {
        let g = generators::path(63);
        let d = solve(&g, &quick_budget(0));
        verify_decomposition(&g, &d).unwrap();
        assert!(d.depth() <= 7, "got {}", d.depth());
    }

    #[test]
    fn disconnected_forest() {
        let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
        // K4 on 0..4 plus P3 on 4..7 plus an isolated vertex 7
        for u in 0..4u32 {
            for v in u + 1..4 {
                edges.push((u, v));
            }
        }
        edges.push((4, 5));
        edges.push((5, 6));
        let g = Graph::from_edges(8, &edges);
        let d = solve(&g, &quick_budget(1));
        verify_decomposition(&g, &d).unwrap();
        assert_eq!(d.depth(), 4);
        assert_eq!(d.roots().len(), 3);
    }

    #[test]
    fn deterministic_with_fixed_seed() {
        let g = generators::random_connected(60, 140, 5);
        let a = solve(&g, &quick_budget(7));
        let b = solve(&g, &quick_budget(7));
        assert_eq!(a.parents(), b.parents());
    }

    #[test]
    fn split_on_cut_examples() {
        // P5 split on its middle vertex
        let g = generators::path(5);
        let cut = CutResult {
            cut: vec![2],
            side_small: vec![0, 1],
            side_large: vec![3, 4],
            side: CutSide::Source,
        };
        let d = split_on_cut(&g, &cut, Cutoffs::none(), &Budget::unlimited(0)).unwrap();
        verify_decomposition(&g, &d).unwrap();
        assert_eq!(d.depth(), 3);

        // star split on its center
        let star = generators::star(4);
        let cut = CutResult {
            cut: vec![0],
            side_small: vec![1],
            side_large: vec![2, 3],
            side: CutSide::Source,
        };
        let d = split_on_cut(&star, &cut, Cutoffs::none(), &Budget::unlimited(0)).unwrap();
        verify_decomposition(&star, &d).unwrap();
        assert_eq!(d.depth(), 2);

        // C6 split on two opposite vertices
        let c6 = generators::cycle(6);
        let cut = CutResult {
            cut: vec![0, 3],
            side_small: vec![1, 2],
            side_large: vec![4, 5],
            side: CutSide::Source,
        };
        let d = split_on_cut(&c6, &cut, Cutoffs::none(), &Budget::unlimited(0)).unwrap();
        verify_decomposition(&c6, &d).unwrap();
        assert_eq!(d.depth(), 4);
        assert_eq!(exact_td_oracle(&c6), Ok(4));
    }

    #[test]
    fn split_respects_bad_cutoff() {
        let g = generators::path(5);
        let cut = CutResult {
            cut: vec![2],
            side_small: vec![0, 1],
            side_large: vec![3, 4],
            side: CutSide::Source,
        };
        let cutoffs = Cutoffs { bad: Some(3), good: None };
        assert!(split_on_cut(&g, &cut, cutoffs, &Budget::unlimited(0)).is_none());
        let cutoffs = Cutoffs { bad: Some(4), good: None };
        assert!(split_on_cut(&g, &cut, cutoffs, &Budget::unlimited(0)).is_some());
    }

    #[test]
    fn incumbent_is_monotone_and_readable() {
        let g = generators::random_connected(80, 200, 9);
        let shared = SharedIncumbent::new();
        let budget = quick_budget(3);
        let d = solve_with(&g, &budget, &SolveConfig::default(), &shared);
        let snap = shared.snapshot().unwrap();
        assert!(snap.depth() <= d.depth());
        verify_decomposition(&g, &snap).unwrap();
    }

    #[test]
    fn respects_deadline_quickly() {
        let g = generators::random_connected(400, 1200, 2);
        let budget = Budget::unlimited(0).with_deadline(Duration::from_millis(50));
        let start = Instant::now();
        let d = solve(&g, &budget);
        assert!(start.elapsed() < Duration::from_secs(20));
        verify_decomposition(&g, &d).unwrap();
    }

    #[test]
    fn lower_bound_sandwich() {
        for seed in 0..20u64 {
            let n = 4 + (seed as usize % 9);
            let m = (n - 1 + seed as usize % 5).min(n * (n - 1) / 2);
            let g = generators::random_connected(n, m, seed);
            let d = solve(&g, &quick_budget(seed));
            assert!(g.td_lower_bound(seed) <= d.depth());
        }
    }
}
