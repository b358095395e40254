//! Disjoint sets whose surviving label is chosen by the caller.
//!
//! The spanning-tree pairing decides which tree root survives a merge (the
//! `≺`-earliest vertex, the `≺`-latest triangle), so each set carries an
//! explicit label independent of the internal rank-based representative.

#[derive(Clone, Debug)]
pub struct LabeledDisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
    label: Vec<usize>,
}

impl LabeledDisjointSets {
    /// `n` singleton sets, each labelled by its own index.
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
            label: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut node: usize) -> usize {
        let mut root = node;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[node] != root {
            let next = self.parent[node];
            self.parent[node] = root;
            node = next;
        }
        root
    }

    pub fn label(&mut self, node: usize) -> usize {
        let r = self.find(node);
        self.label[r]
    }

    /// Merges the sets of `a` and `b` and labels the result `label`.
    /// Returns `false` if they were already one set.
    pub fn union_with_label(&mut self, a: usize, b: usize, label: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.rank[ra] < self.rank[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        if self.rank[ra] == self.rank[rb] {
            self.rank[ra] = self.rank[ra].saturating_add(1);
        }
        self.label[ra] = label;
        true
    }
}
