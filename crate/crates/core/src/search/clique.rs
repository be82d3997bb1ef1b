//! Maximum clique by branch and bound with a greedy colouring bound.

use super::BudgetExceeded;
use crate::bits;
use crate::graph::Graph;

struct Bnb<'a> {
    g: &'a Graph,
    cur: Vec<usize>,
    best: Vec<usize>,
    target: usize,
    nodes: u64,
    limit: u64,
}

impl Bnb<'_> {
    /// Vertices of `cand` in colour-class order with their running colour count.
    fn colour(&self, cand: &[u64]) -> Vec<(usize, usize)> {
        let mut left = cand.to_vec();
        let mut out = Vec::with_capacity(bits::count(cand));
        let mut colour = 0;
        while !bits::is_empty(&left) {
            colour += 1;
            let mut q = left.clone();
            while let Some(v) = bits::first(&q) {
                bits::clear(&mut left, v);
                bits::clear(&mut q, v);
                for (w, r) in q.iter_mut().zip(self.g.row(v)) {
                    *w &= !r;
                }
                out.push((v, colour));
            }
        }
        out
    }

    /// Returns `Ok(true)` once the target size is reached.
    fn expand(&mut self, mut cand: Vec<u64>) -> Result<bool, BudgetExceeded> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(BudgetExceeded::new(format!("clique search exceeded {} nodes", self.limit)));
        }
        let order = self.colour(&cand);
        for &(v, c) in order.iter().rev() {
            if self.cur.len() + c <= self.best.len() {
                return Ok(false);
            }
            self.cur.push(v);
            let next = bits::and(&cand, self.g.row(v));
            if bits::is_empty(&next) {
                if self.cur.len() > self.best.len() {
                    self.best = self.cur.clone();
                    if self.best.len() >= self.target {
                        return Ok(true);
                    }
                }
            } else if self.expand(next)? {
                return Ok(true);
            }
            self.cur.pop();
            bits::clear(&mut cand, v);
        }
        Ok(false)
    }
}

/// A maximum clique (sorted) and the node count, stopping early at `target`.
pub fn max_clique(g: &Graph, target: usize, limit: u64) -> Result<(Vec<usize>, u64), BudgetExceeded> {
    let mut s = Bnb { g, cur: Vec::new(), best: Vec::new(), target: target.max(1), nodes: 0, limit };
    if g.n() > 0 {
        s.expand(g.vertex_mask())?;
    }
    let mut best = s.best;
    best.sort_unstable();
    Ok((best, s.nodes))
}

/// Calls `visit` on every `k`-clique in lexicographic order until it returns `true`.
pub fn for_each_k_clique(
    g: &Graph,
    k: usize,
    limit: u64,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<(bool, u64), BudgetExceeded> {
    fn rec(
        g: &Graph,
        k: usize,
        cand: Vec<u64>,
        cur: &mut Vec<usize>,
        nodes: &mut u64,
        limit: u64,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Result<bool, BudgetExceeded> {
        *nodes += 1;
        if *nodes > limit {
            return Err(BudgetExceeded::new(format!("clique enumeration exceeded {limit} nodes")));
        }
        if cur.len() == k {
            return Ok(visit(cur));
        }
        if cur.len() + bits::count(&cand) < k {
            return Ok(false);
        }
        let mut cand = cand;
        while let Some(v) = bits::first(&cand) {
            bits::clear(&mut cand, v);
            cur.push(v);
            let next = bits::and(&cand, g.row(v));
            let stop = rec(g, k, next, cur, nodes, limit, visit)?;
            cur.pop();
            if stop {
                return Ok(true);
            }
            if cur.len() + bits::count(&cand) < k {
                break;
            }
        }
        Ok(false)
    }
    let mut nodes = 0;
    let stop = rec(g, k, g.vertex_mask(), &mut Vec::new(), &mut nodes, limit, visit)?;
    Ok((stop, nodes))
}
