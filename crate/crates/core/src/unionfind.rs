//! Union-find with path compression and union by size.

#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; true when they were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    /// Maps each element to a class index; classes are numbered by their
    /// smallest member, in increasing order of that member.
    pub fn canonical_classes(&mut self) -> (Vec<usize>, usize) {
        let n = self.len();
        let mut least = vec![usize::MAX; n];
        for x in 0..n {
            let r = self.find(x);
            if least[r] == usize::MAX {
                least[r] = x;
            }
        }
        let mut roots: Vec<usize> = (0..n).filter(|&x| self.parent[x] == x).collect();
        roots.sort_by_key(|&r| least[r]);
        let mut class_of_root = vec![usize::MAX; n];
        for (c, &r) in roots.iter().enumerate() {
            class_of_root[r] = c;
        }
        let classes = (0..n).map(|x| class_of_root[self.find(x)]).collect();
        (classes, roots.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_in_least_member_order() {
        let mut uf = UnionFind::new(6);
        uf.union(4, 5);
        uf.union(1, 3);
        let (classes, n) = uf.canonical_classes();
        // Classes by least member: {0}, {1,3}, {2}, {4,5}.
        assert_eq!(n, 4);
        assert_eq!(classes, vec![0, 1, 2, 1, 3, 3]);
    }

    #[test]
    fn union_reports_novelty() {
        let mut uf = UnionFind::new(3);
        assert!(uf.union(0, 1));
        assert!(!uf.union(1, 0));
        assert!(uf.union(1, 2));
        let (_, n) = uf.canonical_classes();
        assert_eq!(n, 1);
    }
}
