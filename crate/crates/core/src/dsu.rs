//! Union-find over processed vertices used by the building process.
//!
//! Pointers always lead to some ancestor of the vertex in the
//! decomposition built so far, so the representative of a component is the
//! root of its subtree. Unions are deliberately unbalanced (the new root
//! becomes the parent pointer); trees are expected to stay shallow. Finds
//! use path halving.

use crate::graph::VertexId;

const NONE: VertexId = VertexId::MAX;

pub(crate) struct AncestorForest {
    up: Vec<VertexId>,
}

impl AncestorForest {
    pub fn new(n: usize) -> Self {
        AncestorForest { up: vec![NONE; n] }
    }

    /// Marks `v` processed, as the root of its own singleton component.
    pub fn activate(&mut self, v: VertexId) {
        debug_assert_eq!(self.up[v as usize], NONE);
        self.up[v as usize] = v;
    }

    pub fn is_active(&self, v: VertexId) -> bool {
        self.up[v as usize] != NONE
    }

    /// Root of `v`'s component. `v` must be active.
    pub fn find(&mut self, v: VertexId) -> VertexId {
        let mut x = v;
        loop {
            let p = self.up[x as usize];
            debug_assert_ne!(p, NONE);
            if p == x {
                return x;
            }
            let g = self.up[p as usize];
            self.up[x as usize] = g;
            x = g;
        }
    }

    /// Hangs the component rooted at `old_root` below `new_root`.
    pub fn link(&mut self, old_root: VertexId, new_root: VertexId) {
        debug_assert_eq!(self.up[old_root as usize], old_root);
        self.up[old_root as usize] = new_root;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn find_and_link() {
        let mut uf = AncestorForest::new(4);
        for v in 0..4 {
            uf.activate(v);
        }
        uf.link(0, 1);
        uf.link(1, 2);
        assert_eq!(uf.find(0), 2);
        assert_eq!(uf.find(3), 3);
        uf.link(3, 2);
        assert_eq!(uf.find(3), 2);
    }
}
