//! Addressable binary min-heap over dense vertex ids.

use crate::graph::VertexId;

const ABSENT: u32 = u32::MAX;

/// Min-heap keyed by `(score, vertex id)`, so equal scores break toward the
/// smaller id and every run is deterministic. Supports key updates in both
/// directions, which lazy-deletion heaps cannot do in place.
pub struct ScoredHeap {
    data: Vec<VertexId>,
    pos: Vec<u32>,
    key: Vec<i64>,
}

impl ScoredHeap {
    /// Heap containing every vertex `0..keys.len()` with the given keys.
    pub fn from_keys(keys: Vec<i64>) -> ScoredHeap {
        let n = keys.len();
        let mut h = ScoredHeap {
            data: (0..n as VertexId).collect(),
            pos: (0..n as u32).collect(),
            key: keys,
        };
        for i in (0..n / 2).rev() {
            h.sift_down(i);
        }
        h
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.pos[v as usize] != ABSENT
    }

    pub fn peek(&self) -> Option<VertexId> {
        self.data.first().copied()
    }

    /// Current key of a vertex still in the heap.
    pub fn key_of(&self, v: VertexId) -> i64 {
        debug_assert!(self.contains(v));
        self.key[v as usize]
    }

    pub fn pop_min(&mut self) -> Option<(VertexId, i64)> {
        let top = *self.data.first()?;
        let last = self.data.len() - 1;
        self.data.swap(0, last);
        self.pos[self.data[0] as usize] = 0;
        self.data.pop();
        self.pos[top as usize] = ABSENT;
        if !self.data.is_empty() {
            self.sift_down(0);
        }
        Some((top, self.key[top as usize]))
    }

    /// Re-keys `v`, restoring heap order whether the key rose or fell.
    pub fn update(&mut self, v: VertexId, key: i64) {
        debug_assert!(self.contains(v));
        let old = self.key[v as usize];
        if old == key {
            return;
        }
        self.key[v as usize] = key;
        let i = self.pos[v as usize] as usize;
        if key < old {
            self.sift_up(i);
        } else {
            self.sift_down(i);
        }
    }

    fn less(&self, a: VertexId, b: VertexId) -> bool {
        (self.key[a as usize], a) < (self.key[b as usize], b)
    }

    fn sift_up(&mut self, mut i: usize) {
        while i > 0 {
            let p = (i - 1) / 2;
            if self.less(self.data[i], self.data[p]) {
                self.swap(i, p);
                i = p;
            } else {
                break;
            }
        }
    }

    fn sift_down(&mut self, mut i: usize) {
        loop {
            let l = 2 * i + 1;
            if l >= self.data.len() {
                break;
            }
            let r = l + 1;
            let c = if r < self.data.len() && self.less(self.data[r], self.data[l]) {
                r
            } else {
                l
            };
            if self.less(self.data[c], self.data[i]) {
                self.swap(i, c);
                i = c;
            } else {
                break;
            }
        }
    }

    fn swap(&mut self, i: usize, j: usize) {
        self.data.swap(i, j);
        self.pos[self.data[i] as usize] = i as u32;
        self.pos[self.data[j] as usize] = j as u32;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pops_in_key_then_id_order() {
        let mut h = ScoredHeap::from_keys(vec![5, 3, 3, 1]);
        assert_eq!(h.pop_min(), Some((3, 1)));
        assert_eq!(h.pop_min(), Some((1, 3)));
        assert_eq!(h.pop_min(), Some((2, 3)));
        assert_eq!(h.pop_min(), Some((0, 5)));
        assert_eq!(h.pop_min(), None);
    }

    #[test]
    fn updates_both_directions() {
        let mut h = ScoredHeap::from_keys(vec![10, 20, 30]);
        h.update(2, 5);
        assert_eq!(h.peek(), Some(2));
        h.update(2, 100);
        assert_eq!(h.peek(), Some(0));
        h.update(0, 15);
        assert_eq!(h.pop_min(), Some((0, 15)));
        assert!(!h.contains(0));
        assert!(h.contains(1));
    }

    #[test]
    fn random_against_sort() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let n = rng.gen_range(1..60);
            let keys: Vec<i64> = (0..n).map(|_| rng.gen_range(-20..20)).collect();
            let mut h = ScoredHeap::from_keys(keys.clone());
            for _ in 0..n {
                let v = rng.gen_range(0..n) as VertexId;
                if h.contains(v) {
                    h.update(v, rng.gen_range(-20..20));
                }
            }
            let mut expect: Vec<(i64, VertexId)> = (0..n as u32)
                .filter(|&v| h.contains(v))
                .map(|v| (h.key_of(v), v))
                .collect();
            expect.sort_unstable();
            let mut got = Vec::new();
            while let Some((v, k)) = h.pop_min() {
                got.push((k, v));
            }
            assert_eq!(got, expect);
        }
    }
}
