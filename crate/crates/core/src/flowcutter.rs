//! Incremental vertex max-flow and balanced cut enumeration.
//!
//! Works directly on vertex cuts and vertex flows: every vertex outside
//! the terminal sets may carry one unit of flow. The classical splitting
//! of a vertex into an entry and an exit node stays implicit; a residual
//! search tracks two states per vertex instead of building a doubled
//! graph. Augmenting paths of vertex flows may legitimately visit the
//! same vertex twice, entering it forward and leaving it backward along
//! an existing flow path.
//!
//! Starting from a random source/target pair, [`enumerate_cuts`] grows
//! both terminal sets by repeatedly extracting the min cut on the side
//! with the smaller residually reachable set and piercing one cut vertex
//! into that side. Flow is retained across piercings, never recomputed
//! from scratch, which is what makes the procedure incremental. The cuts
//! emitted for one pair have non-decreasing size and (usually) improving
//! balance.

use std::collections::{HashSet, VecDeque};
use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, VertexId};

const NONE: VertexId = VertexId::MAX;

/// Which terminal side a cut was extracted on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutSide {
    Source,
    Target,
}

/// How the next piercing vertex is chosen from a cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PiercingPolicy {
    /// Prefer vertices whose absorption creates no new augmenting path,
    /// then maximize distance from the opposite terminal set, then take
    /// the smallest id.
    #[default]
    AvoidAugmenting,
    /// Distance heuristic only.
    Distance,
    /// Smallest id; cheap and nearly arbitrary.
    FirstId,
}

/// A vertex cut separating two sides of the graph.
#[derive(Clone, Debug)]
pub struct CutResult {
    pub cut: Vec<VertexId>,
    pub side_small: Vec<VertexId>,
    pub side_large: Vec<VertexId>,
    /// Side on whose boundary the cut was extracted.
    pub side: CutSide,
}

impl CutResult {
    pub fn size(&self) -> usize {
        self.cut.len()
    }

    fn total(&self) -> usize {
        self.cut.len() + self.side_small.len() + self.side_large.len()
    }

    /// Fraction of the graph on the smaller side, in (0, 1/2].
    pub fn balance(&self) -> f64 {
        self.side_small.len() as f64 / self.total() as f64
    }

    /// Exact test for `|side_small| / n >= num / den`.
    pub fn meets_balance(&self, num: u32, den: u32) -> bool {
        self.side_small.len() as u64 * den as u64 >= num as u64 * self.total() as u64
    }
}

/// An augmenting path through the residual structure.
///
/// Nodes alternate between vertex entry and exit states; use
/// [`AugmentingPath::vertices`] for the plain vertex sequence.
#[derive(Clone, Debug)]
pub struct AugmentingPath {
    nodes: Vec<u32>, // vertex * 2 + (0 = entry, 1 = exit)
}

impl AugmentingPath {
    /// Vertex sequence of the path. A vertex may appear twice when the
    /// path crosses an existing flow path.
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = Vec::with_capacity(self.nodes.len());
        for &node in &self.nodes {
            let v = node / 2;
            if out.last() != Some(&v) {
                out.push(v);
            }
        }
        out
    }
}

#[inline]
fn entry(v: VertexId) -> u32 {
    v * 2
}

#[inline]
fn exit(v: VertexId) -> u32 {
    v * 2 + 1
}

/// State of one incremental max-flow computation between growing
/// terminal sets.
pub struct VertexFlowState<'a> {
    g: &'a Graph,
    in_source: Vec<bool>,
    in_target: Vec<bool>,
    source: Vec<VertexId>,
    target: Vec<VertexId>,
    /// Vertex carries a unit of flow (its internal arc is saturated).
    saturated: Vec<bool>,
    /// Previous and next vertex on the flow path through a non-terminal.
    pred: Vec<VertexId>,
    succ: Vec<VertexId>,
    /// Length-one flow paths along direct source-target edges. Such an
    /// edge admits exactly one path; every other edge has a non-terminal
    /// endpoint whose unit capacity already forbids sharing.
    direct_flow: HashSet<(VertexId, VertexId)>,
    flow: u32,
    adjacent: bool,
    // residual reachability marks, valid while `marks_fresh`
    reach_entry: Vec<bool>,
    reach_exit: Vec<bool>,
    co_entry: Vec<bool>,
    co_exit: Vec<bool>,
    source_side_size: usize,
    target_side_size: usize,
    marks_fresh: bool,
    // search scratch, one slot per split node
    seen: Vec<u64>,
    stamp: u64,
    from: Vec<u32>,
    queue: VecDeque<u32>,
}

impl<'a> VertexFlowState<'a> {
    pub fn new(g: &'a Graph, s: VertexId, t: VertexId) -> Self {
        let n = g.vertex_count();
        assert!(s != t && (s as usize) < n && (t as usize) < n);
        let mut st = VertexFlowState {
            g,
            in_source: vec![false; n],
            in_target: vec![false; n],
            source: vec![s],
            target: vec![t],
            saturated: vec![false; n],
            pred: vec![NONE; n],
            succ: vec![NONE; n],
            direct_flow: HashSet::new(),
            flow: 0,
            adjacent: g.has_edge(s, t),
            reach_entry: vec![false; n],
            reach_exit: vec![false; n],
            co_entry: vec![false; n],
            co_exit: vec![false; n],
            source_side_size: 0,
            target_side_size: 0,
            marks_fresh: false,
            seen: vec![0; 2 * n],
            stamp: 0,
            from: vec![NONE; 2 * n],
            queue: VecDeque::new(),
        };
        st.in_source[s as usize] = true;
        st.in_target[t as usize] = true;
        st
    }

    pub fn flow_value(&self) -> u32 {
        self.flow
    }

    pub fn source_set(&self) -> &[VertexId] {
        &self.source
    }

    pub fn target_set(&self) -> &[VertexId] {
        &self.target
    }

    /// True when some source vertex neighbours some target vertex, in
    /// which case no vertex cut separates them.
    pub fn terminals_adjacent(&self) -> bool {
        self.adjacent
    }

    /// Breadth-first residual search for one augmenting path.
    ///
    /// From a vertex exit, edge arcs lead to neighbour entries; an entry
    /// leads forward through a free internal arc to its exit, or backward
    /// along the incoming flow edge to the predecessor's exit. A
    /// saturated vertex can be unwound through its reverse internal arc.
    pub fn find_augmenting_path(&mut self) -> Option<AugmentingPath> {
        self.stamp += 1;
        let stamp = self.stamp;
        self.queue.clear();
        for i in 0..self.source.len() {
            let s = self.source[i];
            self.seen[exit(s) as usize] = stamp;
            self.from[exit(s) as usize] = NONE;
            self.queue.push_back(exit(s));
        }
        let mut found: Option<(u32, VertexId)> = None; // (last exit node, target vertex)
        'search: while let Some(node) = self.queue.pop_front() {
            let v = node / 2;
            if node % 2 == 1 {
                // at the exit of v: edge arcs, plus the reverse internal arc
                for &u in self.g.neighbors(v) {
                    if self.in_source[u as usize] {
                        continue;
                    }
                    if self.in_target[u as usize] {
                        if self.direct_flow.contains(&(v, u)) {
                            continue;
                        }
                        found = Some((node, u));
                        break 'search;
                    }
                    let e = entry(u);
                    if self.seen[e as usize] != stamp {
                        self.seen[e as usize] = stamp;
                        self.from[e as usize] = node;
                        self.queue.push_back(e);
                    }
                }
                if self.saturated[v as usize] {
                    let e = entry(v);
                    if self.seen[e as usize] != stamp {
                        self.seen[e as usize] = stamp;
                        self.from[e as usize] = node;
                        self.queue.push_back(e);
                    }
                }
            } else {
                // at the entry of v
                if !self.saturated[v as usize] {
                    let x = exit(v);
                    if self.seen[x as usize] != stamp {
                        self.seen[x as usize] = stamp;
                        self.from[x as usize] = node;
                        self.queue.push_back(x);
                    }
                }
                let p = self.pred[v as usize];
                if p != NONE && !self.in_source[p as usize] {
                    let x = exit(p);
                    if self.seen[x as usize] != stamp {
                        self.seen[x as usize] = stamp;
                        self.from[x as usize] = node;
                        self.queue.push_back(x);
                    }
                }
            }
        }
        let (mut node, t) = found?;
        let mut nodes = vec![entry(t)];
        loop {
            nodes.push(node);
            let prev = self.from[node as usize];
            if prev == NONE {
                break;
            }
            node = prev;
        }
        nodes.reverse();
        Some(AugmentingPath { nodes })
    }

    /// Applies an augmenting path, raising the flow value by one.
    pub fn apply(&mut self, path: &AugmentingPath) {
        let mut added: Vec<(VertexId, VertexId)> = Vec::new();
        let mut removed: Vec<(VertexId, VertexId)> = Vec::new();
        for w in path.nodes.windows(2) {
            let (a, b) = (w[0], w[1]);
            let (va, vb) = (a / 2, b / 2);
            if va == vb {
                // internal arc, forward saturates and backward releases
                self.saturated[va as usize] = a % 2 == 0;
            } else if a % 2 == 1 {
                added.push((va, vb));
            } else {
                removed.push((vb, va));
            }
        }
        for (u, v) in removed {
            if !self.is_terminal(u) {
                self.succ[u as usize] = NONE;
            }
            if !self.is_terminal(v) {
                self.pred[v as usize] = NONE;
            }
        }
        for (u, v) in added {
            if self.is_terminal(u) && self.is_terminal(v) {
                self.direct_flow.insert((u, v));
                continue;
            }
            if !self.is_terminal(u) {
                self.succ[u as usize] = v;
            }
            if !self.is_terminal(v) {
                self.pred[v as usize] = u;
            }
        }
        self.flow += 1;
        self.marks_fresh = false;
    }

    fn is_terminal(&self, v: VertexId) -> bool {
        self.in_source[v as usize] || self.in_target[v as usize]
    }

    /// Augments until no path remains (returns true) or the flow value
    /// reaches `limit` (returns false).
    pub fn run_max_flow(&mut self, limit: u32) -> bool {
        debug_assert!(!self.adjacent, "no vertex cut separates adjacent terminals");
        loop {
            if self.flow >= limit {
                return false;
            }
            match self.find_augmenting_path() {
                None => return true,
                Some(p) => self.apply(&p),
            }
        }
    }

    /// Recomputes residual reachability from the source side and residual
    /// co-reachability toward the target side. Requires max flow.
    fn recompute_marks(&mut self) {
        let n = self.g.vertex_count();
        for v in 0..n {
            self.reach_entry[v] = false;
            self.reach_exit[v] = false;
            self.co_entry[v] = false;
            self.co_exit[v] = false;
        }
        // forward from the sources
        self.queue.clear();
        for i in 0..self.source.len() {
            let s = self.source[i];
            self.reach_exit[s as usize] = true;
            self.queue.push_back(exit(s));
        }
        while let Some(node) = self.queue.pop_front() {
            let v = node / 2;
            if node % 2 == 1 {
                for &u in self.g.neighbors(v) {
                    if self.in_source[u as usize] {
                        continue;
                    }
                    assert!(
                        !self.in_target[u as usize],
                        "augmenting path exists; cut extraction requires max flow"
                    );
                    if !self.reach_entry[u as usize] {
                        self.reach_entry[u as usize] = true;
                        self.queue.push_back(entry(u));
                    }
                }
                if self.saturated[v as usize] && !self.reach_entry[v as usize] {
                    self.reach_entry[v as usize] = true;
                    self.queue.push_back(entry(v));
                }
            } else {
                if !self.saturated[v as usize] && !self.reach_exit[v as usize] {
                    self.reach_exit[v as usize] = true;
                    self.queue.push_back(exit(v));
                }
                let p = self.pred[v as usize];
                if p != NONE && !self.in_source[p as usize] && !self.reach_exit[p as usize] {
                    self.reach_exit[p as usize] = true;
                    self.queue.push_back(exit(p));
                }
            }
        }
        // backward from the targets
        self.queue.clear();
        for i in 0..self.target.len() {
            let t = self.target[i];
            self.co_entry[t as usize] = true;
            self.queue.push_back(entry(t));
        }
        while let Some(node) = self.queue.pop_front() {
            let v = node / 2;
            if node % 2 == 0 {
                // arcs into the entry of v: neighbour exits, plus the
                // reverse internal arc of a saturated v
                for &u in self.g.neighbors(v) {
                    // a source exit that reached the targets would be an
                    // augmenting path, impossible at max flow
                    if self.in_target[u as usize] || self.in_source[u as usize] {
                        continue;
                    }
                    if !self.co_exit[u as usize] {
                        self.co_exit[u as usize] = true;
                        self.queue.push_back(exit(u));
                    }
                }
                if self.saturated[v as usize] && !self.co_exit[v as usize] {
                    self.co_exit[v as usize] = true;
                    self.queue.push_back(exit(v));
                }
            } else {
                // arcs into the exit of v: its entry through a free
                // internal arc, and the successor's entry along the flow
                if !self.saturated[v as usize] && !self.co_entry[v as usize] {
                    self.co_entry[v as usize] = true;
                    self.queue.push_back(entry(v));
                }
                let s = self.succ[v as usize];
                if s != NONE && !self.in_target[s as usize] && !self.co_entry[s as usize] {
                    self.co_entry[s as usize] = true;
                    self.queue.push_back(entry(s));
                }
            }
        }
        self.source_side_size = self.reach_exit.iter().filter(|&&b| b).count();
        self.target_side_size = self.co_entry.iter().filter(|&&b| b).count();
        self.marks_fresh = true;
    }

    /// Side whose residually reachable set is smaller; ties go to the
    /// source side. Requires max flow.
    pub fn smaller_reachable_side(&mut self) -> CutSide {
        if !self.marks_fresh {
            self.recompute_marks();
        }
        if self.source_side_size <= self.target_side_size {
            CutSide::Source
        } else {
            CutSide::Target
        }
    }

    /// Extracts the min cut on the boundary of the chosen side's
    /// residually reachable set. Must not be called while an augmenting
    /// path exists; the terminals must not be adjacent.
    pub fn extract_cut(&mut self, side: CutSide) -> CutResult {
        assert!(!self.adjacent, "no vertex cut separates adjacent terminals");
        if !self.marks_fresh {
            self.recompute_marks();
        }
        let n = self.g.vertex_count();
        let mut cut = Vec::new();
        let mut near = Vec::new();
        let mut far = Vec::new();
        for v in 0..n {
            let (in_side, in_cut) = match side {
                CutSide::Source => (self.reach_exit[v], self.reach_entry[v] && !self.reach_exit[v]),
                CutSide::Target => (self.co_entry[v], self.co_exit[v] && !self.co_entry[v]),
            };
            if in_cut {
                cut.push(v as VertexId);
            } else if in_side {
                near.push(v as VertexId);
            } else {
                far.push(v as VertexId);
            }
        }
        debug_assert_eq!(cut.len() as u32, self.flow, "cut size must equal the flow value");
        let (side_small, side_large) = if near.len() <= far.len() {
            (near, far)
        } else {
            (far, near)
        };
        CutResult { cut, side_small, side_large, side }
    }

    /// Chooses the cut vertex to absorb into the extracted side's
    /// terminal set, or `None` when every cut vertex neighbours the
    /// opposite terminals and the pair is exhausted.
    pub fn select_piercing_vertex(
        &mut self,
        cut: &CutResult,
        policy: PiercingPolicy,
    ) -> Option<VertexId> {
        if !self.marks_fresh {
            self.recompute_marks();
        }
        let opposite = match cut.side {
            CutSide::Source => &self.in_target,
            CutSide::Target => &self.in_source,
        };
        let mut candidates: Vec<VertexId> = cut
            .cut
            .iter()
            .copied()
            .filter(|&c| !self.g.neighbors(c).iter().any(|&w| opposite[w as usize]))
            .collect();
        if candidates.is_empty() {
            return None;
        }
        if policy == PiercingPolicy::FirstId {
            return candidates.into_iter().min();
        }
        if policy == PiercingPolicy::AvoidAugmenting {
            // absorbing c adds an augmenting path exactly when the far
            // half of c's split still reaches the other terminal set
            let safe: Vec<VertexId> = candidates
                .iter()
                .copied()
                .filter(|&c| match cut.side {
                    CutSide::Source => !self.co_exit[c as usize],
                    CutSide::Target => !self.reach_entry[c as usize],
                })
                .collect();
            if !safe.is_empty() {
                candidates = safe;
            }
        }
        // farthest from the opposite terminal set, ties to the lowest id
        let dist = self.bfs_distance(match cut.side {
            CutSide::Source => &self.target,
            CutSide::Target => &self.source,
        });
        candidates
            .into_iter()
            .min_by_key(|&c| (std::cmp::Reverse(dist[c as usize]), c))
    }

    fn bfs_distance(&self, from: &[VertexId]) -> Vec<u32> {
        let n = self.g.vertex_count();
        let mut dist = vec![u32::MAX; n];
        let mut queue = VecDeque::new();
        for &s in from {
            dist[s as usize] = 0;
            queue.push_back(s);
        }
        while let Some(v) = queue.pop_front() {
            for &w in self.g.neighbors(v) {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dist[v as usize] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Absorbs cut vertex `v` into the terminal set of `side`.
    ///
    /// The flow path through `v` is trimmed on the absorbed side so that
    /// the retained flow still consists of paths between the terminal
    /// sets; the flow value is unchanged.
    pub fn pierce(&mut self, v: VertexId, side: CutSide) {
        debug_assert!(!self.is_terminal(v));
        debug_assert!(self.saturated[v as usize], "cut vertices carry flow");
        match side {
            CutSide::Source => {
                let mut x = self.pred[v as usize];
                self.pred[v as usize] = NONE;
                while x != NONE && !self.in_source[x as usize] {
                    let next = self.pred[x as usize];
                    self.pred[x as usize] = NONE;
                    self.succ[x as usize] = NONE;
                    self.saturated[x as usize] = false;
                    x = next;
                }
                self.saturated[v as usize] = false;
                self.in_source[v as usize] = true;
                self.source.push(v);
                let s = self.succ[v as usize];
                if s != NONE && self.in_target[s as usize] {
                    self.direct_flow.insert((v, s));
                    self.succ[v as usize] = NONE;
                }
            }
            CutSide::Target => {
                let mut x = self.succ[v as usize];
                self.succ[v as usize] = NONE;
                while x != NONE && !self.in_target[x as usize] {
                    let next = self.succ[x as usize];
                    self.succ[x as usize] = NONE;
                    self.pred[x as usize] = NONE;
                    self.saturated[x as usize] = false;
                    x = next;
                }
                self.saturated[v as usize] = false;
                self.in_target[v as usize] = true;
                self.target.push(v);
                let p = self.pred[v as usize];
                if p != NONE && self.in_source[p as usize] {
                    self.direct_flow.insert((p, v));
                    self.pred[v as usize] = NONE;
                }
            }
        }
        let opposite = match side {
            CutSide::Source => &self.in_target,
            CutSide::Target => &self.in_source,
        };
        if self.g.neighbors(v).iter().any(|&w| opposite[w as usize]) {
            self.adjacent = true;
        }
        self.marks_fresh = false;
    }
}

/// Runs FlowCutter from `terminal_pairs` random seeded terminal pairs and
/// reports every extracted cut to `emit`.
///
/// Each pair's run stops once a cut reaches `balance_goal` (as `num/den`),
/// once the cut size reaches `size_limit`, when the pair is exhausted, or
/// when `emit` breaks; breaking abandons the remaining pairs too. Pairs
/// that come out adjacent are skipped. The graph must be connected with at
/// least two vertices.
pub fn enumerate_cuts(
    g: &Graph,
    terminal_pairs: u32,
    balance_goal: (u32, u32),
    size_limit: u32,
    seed: u64,
    policy: PiercingPolicy,
    mut emit: impl FnMut(&CutResult) -> ControlFlow<()>,
) {
    let n = g.vertex_count();
    assert!(n >= 2);
    debug_assert!(g.is_connected(), "cut enumeration expects a connected graph");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..terminal_pairs {
        let s = rng.gen_range(0..n) as VertexId;
        let mut t = rng.gen_range(0..n) as VertexId;
        while t == s {
            t = rng.gen_range(0..n) as VertexId;
        }
        if g.has_edge(s, t) {
            continue;
        }
        let mut state = VertexFlowState::new(g, s, t);
        loop {
            if !state.run_max_flow(size_limit) {
                break;
            }
            let side = state.smaller_reachable_side();
            let cut = state.extract_cut(side);
            if let ControlFlow::Break(()) = emit(&cut) {
                return;
            }
            if cut.meets_balance(balance_goal.0, balance_goal.1) || cut.size() >= size_limit as usize
            {
                break;
            }
            match state.select_piercing_vertex(&cut, policy) {
                None => break,
                Some(v) => state.pierce(v, side),
            }
        }
    }
}
