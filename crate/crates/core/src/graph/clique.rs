//! `K_k` detection by backtracking over candidate bit rows.

use super::Graph;
use crate::bits;

impl Graph {
    /// Whether some `k` vertices are pairwise adjacent.
    pub fn contains_clique(&self, k: usize) -> bool {
        self.find_clique(k).is_some()
    }

    /// Some `K_k`, listed in ascending order.
    pub fn find_clique(&self, k: usize) -> Option<Vec<usize>> {
        self.find_clique_within(&self.vertex_mask(), k)
    }

    /// Some `K_k` using only vertices set in `mask`.
    pub fn find_clique_within(&self, mask: &[u64], k: usize) -> Option<Vec<usize>> {
        let mut out = Vec::with_capacity(k);
        if extend(self, mask.to_vec(), k, &mut out) {
            Some(out)
        } else {
            None
        }
    }

    /// Whether the vertices in `mask` contain a `K_k`.
    pub fn has_clique_within(&self, mask: &[u64], k: usize) -> bool {
        match k {
            0 => true,
            1 => !bits::is_empty(mask),
            2 => bits::ones(mask).any(|v| bits::intersects(self.row(v), mask)),
            _ => self.find_clique_within(mask, k).is_some(),
        }
    }
}

fn extend(g: &Graph, mut cand: Vec<u64>, k: usize, out: &mut Vec<usize>) -> bool {
    if k == 0 {
        return true;
    }
    if bits::count(&cand) < k {
        return false;
    }
    while let Some(v) = bits::first(&cand) {
        bits::clear(&mut cand, v);
        if k == 1 {
            out.push(v);
            return true;
        }
        let next = bits::and(&cand, g.row(v));
        if bits::count(&next) >= k - 1 {
            out.push(v);
            if extend(g, next, k - 1, out) {
                return true;
            }
            out.pop();
        }
        if bits::count(&cand) < k {
            return false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clique_examples() {
        assert!(!Graph::cycle(5).contains_clique(3));
        assert!(Graph::complete(4).contains_clique(4));
        assert!(!Graph::cycle(7).complement().contains_clique(4));
        assert!(Graph::cycle(7).complement().contains_clique(3));
        assert!(Graph::empty(3).contains_clique(1));
        assert!(Graph::empty(0).contains_clique(0));
        assert!(!Graph::empty(0).contains_clique(1));
        assert!(!Graph::empty(3).contains_clique(2));
    }

    #[test]
    fn witness_is_a_clique() {
        let g = Graph::cycle(5).cone(2);
        let c = g.find_clique(4).unwrap();
        for (i, &u) in c.iter().enumerate() {
            for &v in &c[i + 1..] {
                assert!(g.has_edge(u, v));
            }
        }
        assert!(!g.contains_clique(5));
    }

    #[test]
    fn restricted_search() {
        let g = Graph::complete(5);
        let mask = bits::from_indices(5, [1, 3]);
        assert!(g.has_clique_within(&mask, 2));
        assert!(!g.has_clique_within(&mask, 3));
        assert_eq!(g.find_clique_within(&mask, 2), Some(vec![1, 3]));
    }
}
