/// Disjoint sets where every element carries a parity relative to its
/// representative: `false` for "same side", `true` for "other side".
///
/// Adding a relation that closes an odd cycle is reported as a
/// [`ParityConflict`] and leaves the structure unchanged.
#[derive(Debug, Clone)]
pub struct ParityUnionFind {
    parent: Vec<usize>,
    // Parity to parent.
    parity: Vec<bool>,
    rank: Vec<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParityConflict {
    pub a: usize,
    pub b: usize,
}

impl ParityUnionFind {
    pub fn new(len: usize) -> Self {
        Self {
            parent: (0..len).collect(),
            parity: vec![false; len],
            rank: vec![0; len],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Representative of `x` and the parity of `x` relative to it.
    pub fn find(&mut self, x: usize) -> (usize, bool) {
        let mut root = x;
        let mut acc = false;
        while self.parent[root] != root {
            acc ^= self.parity[root];
            root = self.parent[root];
        }
        // Compress, rewriting each parity to point at the root.
        let mut cur = x;
        let mut cur_par = acc;
        while self.parent[cur] != root && cur != root {
            let next = self.parent[cur];
            let next_par = cur_par ^ self.parity[cur];
            self.parent[cur] = root;
            self.parity[cur] = cur_par;
            cur = next;
            cur_par = next_par;
        }
        (root, acc)
    }

    /// `Some(differ)` when `a` and `b` are in one set.
    pub fn relation(&mut self, a: usize, b: usize) -> Option<bool> {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        (ra == rb).then_some(pa ^ pb)
    }

    /// Records that `a` and `b` are on different sides (`differ`) or the same
    /// side. Returns whether two sets were merged.
    pub fn relate(&mut self, a: usize, b: usize, differ: bool) -> Result<bool, ParityConflict> {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return if pa ^ pb == differ {
                Ok(false)
            } else {
                Err(ParityConflict { a, b })
            };
        }
        let link = pa ^ pb ^ differ;
        let (child, root) = if self.rank[ra] < self.rank[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[child] = root;
        self.parity[child] = link;
        if self.rank[ra] == self.rank[rb] {
            self.rank[root] += 1;
        }
        Ok(true)
    }
}
