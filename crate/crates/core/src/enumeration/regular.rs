//! Regular simple graphs up to isomorphism.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::par::{self, Budget, Exec};

/// Largest order accepted by [`regular_graphs`].
pub const MAX_REGULAR_ORDER: usize = 8;

/// Canonical form of `g`: the lexicographically greatest sequence of
/// adjacency rows `row_j = (adj(p_j, p_0), ..., adj(p_j, p_{j-1}))` over all
/// vertex orders `p`, found by branch and bound. Returns the rows and one
/// order attaining them.
pub fn canonical_form(g: &SimpleGraph, budget: &Budget) -> Result<(Vec<u64>, Vec<usize>)> {
    struct Search<'a> {
        g: &'a SimpleGraph,
        budget: &'a Budget,
        cur: Vec<u64>,
        order: Vec<usize>,
        best: Vec<u64>,
        best_order: Vec<usize>,
    }

    impl Search<'_> {
        fn row(&self, v: usize) -> u64 {
            let n = self.g.order();
            self.order
                .iter()
                .enumerate()
                .filter(|&(_, &u)| self.g.has_edge(v, u))
                .fold(0u64, |acc, (i, _)| acc | 1 << (n - 1 - i))
        }

        fn rec(&mut self, used: u64) -> Result<()> {
            self.budget.tick()?;
            let j = self.order.len();
            let n = self.g.order();
            if j == n {
                if self.best.is_empty() || self.cur > self.best {
                    self.best = self.cur.clone();
                    self.best_order = self.order.clone();
                }
                return Ok(());
            }
            let mut rows: Vec<(u64, usize)> = (0..n)
                .filter(|&v| used >> v & 1 == 0)
                .map(|v| (self.row(v), v))
                .collect();
            // most promising first
            rows.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
            for (row, v) in rows {
                self.cur.push(row);
                let keep = self.best.is_empty() || self.cur.as_slice() >= &self.best[..=j];
                if keep {
                    self.order.push(v);
                    let r = self.rec(used | 1 << v);
                    self.order.pop();
                    if let Err(e) = r {
                        self.cur.pop();
                        return Err(e);
                    }
                }
                self.cur.pop();
            }
            Ok(())
        }
    }

    let mut s = Search {
        g,
        budget,
        cur: Vec::new(),
        order: Vec::new(),
        best: Vec::new(),
        best_order: Vec::new(),
    };
    s.rec(0)?;
    Ok((s.best, s.best_order))
}

/// Relabel `g` so that its vertex order is the canonical one.
pub fn canonical_relabel(g: &SimpleGraph, budget: &Budget) -> Result<(Vec<u64>, SimpleGraph)> {
    let (form, order) = canonical_form(g, budget)?;
    let mut perm = vec![0; g.order()];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    Ok((form, g.permuted(&perm)))
}

/// All `s`-regular graphs on `q` vertices, one per isomorphism class,
/// canonically labeled.
pub fn regular_graphs_of(q: usize, s: usize, budget: &Budget) -> Result<Vec<SimpleGraph>> {
    if q > MAX_REGULAR_ORDER {
        return Err(Error::TooLarge(format!("regular graphs limited to {MAX_REGULAR_ORDER} vertices")));
    }
    if s >= q || (q * s) % 2 == 1 {
        return Ok(Vec::new());
    }
    let pairs: Vec<(usize, usize)> = (0..q).flat_map(|a| (a + 1..q).map(move |b| (a, b))).collect();
    let mut g = SimpleGraph::empty(q)?;
    let mut deg = vec![0usize; q];
    // Every class has a member where vertex 0 is adjacent to exactly 1..=s.
    for b in 1..=s {
        g.add_edge(0, b)?;
        deg[0] += 1;
        deg[b] += 1;
    }
    let start = pairs.iter().position(|&(a, _)| a == 1).unwrap_or(pairs.len());
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    extend(&pairs, start, s, &mut g, &mut deg, budget, &mut |h| {
        let (form, canon) = canonical_relabel(h, budget)?;
        if seen.insert(form) {
            out.push(canon);
        }
        Ok(())
    })?;
    Ok(out)
}

fn extend(
    pairs: &[(usize, usize)],
    at: usize,
    s: usize,
    g: &mut SimpleGraph,
    deg: &mut [usize],
    budget: &Budget,
    found: &mut dyn FnMut(&SimpleGraph) -> Result<()>,
) -> Result<()> {
    budget.tick()?;
    if at == pairs.len() {
        if deg.iter().all(|&d| d == s) {
            found(g)?;
        }
        return Ok(());
    }
    let (a, b) = pairs[at];
    // Row a is complete after its last pair; its degree must be s by then.
    let last_of_row = at + 1 == pairs.len() || pairs[at + 1].0 != a;
    let n = deg.len();
    // vertex b can still gain edges from pairs (x, b) with a < x < b and
    // (b, y) with y > b
    let remaining_b = |d: &[usize]| d[b] + (b - a - 1) + (n - b - 1) >= s;
    if deg[a] < s && deg[b] < s {
        add(g, deg, a, b, true);
        if !last_of_row || deg[a] == s {
            extend(pairs, at + 1, s, g, deg, budget, found)?;
        }
        add(g, deg, a, b, false);
    }
    if (!last_of_row || deg[a] == s) && remaining_b(deg) {
        extend(pairs, at + 1, s, g, deg, budget, found)?;
    }
    Ok(())
}

fn add(g: &mut SimpleGraph, deg: &mut [usize], a: usize, b: usize, on: bool) {
    if on {
        g.add_edge(a, b).expect("in range");
        deg[a] += 1;
        deg[b] += 1;
    } else {
        g.remove_edge(a, b);
        deg[a] -= 1;
        deg[b] -= 1;
    }
}

/// All regular graphs with `2 <= q <= q_max` vertices and degree `s >= 1`,
/// sorted by `(s, q)` and then by name.
pub fn regular_graphs(q_max: usize, exec: Exec, budget: &Budget) -> Result<Vec<SimpleGraph>> {
    if q_max > MAX_REGULAR_ORDER {
        return Err(Error::TooLarge(format!("regular graphs limited to {MAX_REGULAR_ORDER} vertices")));
    }
    let shapes: Vec<(usize, usize)> = (2..=q_max).flat_map(|q| (1..q).map(move |s| (s, q))).collect();
    let per_shape = par::try_map(exec, &shapes, |&(s, q)| {
        let mut gs = regular_graphs_of(q, s, budget)?;
        gs.sort_by_key(|g| g.describe());
        Ok(gs)
    })?;
    let mut all: Vec<SimpleGraph> = per_shape.into_iter().flatten().collect();
    all.sort_by_key(|g| (g.regular_degree().unwrap_or(0), g.order()));
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_shapes() {
        let b = Budget::default();
        assert_eq!(regular_graphs_of(4, 1, &b).unwrap().len(), 1);
        assert_eq!(regular_graphs_of(6, 2, &b).unwrap().len(), 2);
        assert_eq!(regular_graphs_of(6, 3, &b).unwrap().len(), 2);
        assert_eq!(regular_graphs_of(5, 3, &b).unwrap().len(), 0);
    }

    #[test]
    fn canonical_form_is_invariant() {
        let b = Budget::default();
        let c5 = SimpleGraph::cycle(5).unwrap();
        let shuffled = c5.permuted(&[3, 0, 4, 1, 2]);
        assert_eq!(canonical_form(&c5, &b).unwrap().0, canonical_form(&shuffled, &b).unwrap().0);
        let two_k2 = SimpleGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let c4 = SimpleGraph::cycle(4).unwrap();
        assert_ne!(canonical_form(&two_k2, &b).unwrap().0, canonical_form(&c4, &b).unwrap().0);
    }
}
