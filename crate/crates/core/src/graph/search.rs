//! Backtracking search for color-permuting isomorphisms between colored
//! digraphs.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use super::ColoredDigraph;
use crate::error::Result;
use crate::par::{self, Budget, Exec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Find {
    First,
    All,
}

/// Per-vertex invariant: degree, sorted sizes of incident color classes and,
/// for strict searches, the out-degree.
type Profile = (usize, Vec<usize>, usize);

fn profiles(g: &ColoredDigraph, strict: bool) -> Vec<Profile> {
    let counts = g.color_counts();
    (0..g.q())
        .map(|v| {
            let mut sizes: Vec<usize> = Vec::new();
            let mut out = 0;
            for w in g.neighbors(v) {
                if let Some(a) = g.arc_between(v, w) {
                    sizes.push(counts[a.color]);
                    if strict && a.tail == v {
                        out += 1;
                    }
                }
            }
            sizes.sort_unstable();
            (sizes.len(), sizes, out)
        })
        .collect()
}

/// Order in which `g1`'s vertices are assigned: breadth first from a vertex of
/// rarest profile, restarting in each new component.
fn search_order(g: &ColoredDigraph, prof: &[Profile]) -> Vec<usize> {
    let mut freq: HashMap<&Profile, usize> = HashMap::new();
    for p in prof {
        *freq.entry(p).or_default() += 1;
    }
    let q = g.q();
    let mut placed = vec![false; q];
    let mut order = Vec::with_capacity(q);
    while order.len() < q {
        let start = (0..q)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (freq[&prof[v]], v))
            .unwrap_or(0);
        placed[start] = true;
        let mut head = order.len();
        order.push(start);
        while head < order.len() {
            let v = order[head];
            head += 1;
            for w in g.neighbors(v) {
                if !placed[w] {
                    placed[w] = true;
                    order.push(w);
                }
            }
        }
    }
    order
}

struct Ctx<'a, F> {
    g1: &'a ColoredDigraph,
    g2: &'a ColoredDigraph,
    strict: bool,
    order: Vec<usize>,
    prof1: Vec<Profile>,
    prof2: Vec<Profile>,
    budget: &'a Budget,
    find: Find,
    // smallest first-level branch index that has produced a result
    found_at: AtomicUsize,
    emit: F,
}

struct State {
    vmap: Vec<usize>,
    used2: Vec<bool>,
    cmap: Vec<usize>,
    cinv: Vec<usize>,
}

const UNSET: usize = usize::MAX;

impl State {
    fn new(q: usize, p: usize) -> Self {
        State {
            vmap: vec![UNSET; q],
            used2: vec![false; q],
            cmap: vec![UNSET; p],
            cinv: vec![UNSET; p],
        }
    }
}

impl<'a, T, F> Ctx<'a, F>
where
    F: Fn(&[usize], &[usize]) -> Option<T> + Sync,
    T: Send,
{
    /// Try to map `u` to `w`. On success returns the colors newly bound so
    /// they can be released on backtrack.
    fn try_assign(&self, st: &mut State, depth: usize, u: usize, w: usize) -> Option<Vec<usize>> {
        let mut bound = Vec::new();
        for &x in &self.order[..depth] {
            let y = st.vmap[x];
            let a1 = self.g1.arc_between(u, x);
            let a2 = self.g2.arc_between(w, y);
            let ok = match (a1, a2) {
                (None, None) => true,
                (Some(a), Some(b)) => {
                    if self.strict && ((a.tail == u) != (b.tail == w)) {
                        false
                    } else if st.cmap[a.color] == b.color {
                        true
                    } else if st.cmap[a.color] == UNSET && st.cinv[b.color] == UNSET {
                        st.cmap[a.color] = b.color;
                        st.cinv[b.color] = a.color;
                        bound.push(a.color);
                        true
                    } else {
                        false
                    }
                }
                _ => false,
            };
            if !ok {
                release(st, &bound);
                return None;
            }
        }
        Some(bound)
    }

    fn finish(&self, st: &State) -> Option<T> {
        // Colors never used by an edge are matched up in index order.
        let mut cmap = st.cmap.clone();
        let mut free2 = (0..self.g2.p()).filter(|&c| st.cinv[c] == UNSET);
        for slot in cmap.iter_mut().filter(|c| **c == UNSET) {
            *slot = free2.next()?;
        }
        (self.emit)(&st.vmap, &cmap)
    }

    fn extend(&self, st: &mut State, depth: usize, branch: usize, out: &mut Vec<T>) -> Result<()> {
        if self.find == Find::First && self.found_at.load(Ordering::Relaxed) < branch {
            return Ok(());
        }
        self.budget.tick()?;
        if depth == self.order.len() {
            if let Some(t) = self.finish(st) {
                out.push(t);
                if self.find == Find::First {
                    self.found_at.fetch_min(branch, Ordering::Relaxed);
                }
            }
            return Ok(());
        }
        let u = self.order[depth];
        for w in 0..self.g2.q() {
            if st.used2[w] || self.prof1[u] != self.prof2[w] {
                continue;
            }
            if let Some(bound) = self.try_assign(st, depth, u, w) {
                st.vmap[u] = w;
                st.used2[w] = true;
                let r = self.extend(st, depth + 1, branch, out);
                st.vmap[u] = UNSET;
                st.used2[w] = false;
                release(st, &bound);
                r?;
                if self.find == Find::First && !out.is_empty() {
                    return Ok(());
                }
            }
        }
        Ok(())
    }
}

fn release(st: &mut State, bound: &[usize]) {
    for &c in bound {
        st.cinv[st.cmap[c]] = UNSET;
        st.cmap[c] = UNSET;
    }
}

/// Enumerate vertex/color bijections carrying `g1` onto `g2`. `emit` sees
/// each complete pair `(vertex_perm, color_perm)` and may reject it by
/// returning `None`. Results come back in a deterministic order that does
/// not depend on `exec`; with [`Find::First`] at most one is returned.
pub(crate) fn search_isomorphisms<T, F>(
    g1: &ColoredDigraph,
    g2: &ColoredDigraph,
    strict: bool,
    exec: Exec,
    budget: &Budget,
    find: Find,
    emit: F,
) -> Result<Vec<T>>
where
    F: Fn(&[usize], &[usize]) -> Option<T> + Sync + Send,
    T: Send,
{
    if g1.q() != g2.q() || g1.p() != g2.p() || g1.edge_count() != g2.edge_count() {
        return Ok(Vec::new());
    }
    let mut c1 = g1.color_counts();
    let mut c2 = g2.color_counts();
    c1.sort_unstable();
    c2.sort_unstable();
    if c1 != c2 {
        return Ok(Vec::new());
    }
    let prof1 = profiles(g1, strict);
    let prof2 = profiles(g2, strict);
    let mut s1 = prof1.clone();
    let mut s2 = prof2.clone();
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return Ok(Vec::new());
    }
    let q = g1.q();
    if q == 0 {
        let (vp, cp): (Vec<usize>, Vec<usize>) = (Vec::new(), (0..g1.p()).collect());
        return Ok(emit(&vp, &cp).into_iter().collect());
    }
    let order = search_order(g1, &prof1);
    let ctx = Ctx {
        g1,
        g2,
        strict,
        order,
        prof1,
        prof2,
        budget,
        find,
        found_at: AtomicUsize::new(usize::MAX),
        emit,
    };

    let u0 = ctx.order[0];
    let firsts: Vec<usize> = (0..q).filter(|&w| ctx.prof1[u0] == ctx.prof2[w]).collect();
    let branches: Vec<(usize, usize)> = firsts.into_iter().enumerate().collect();
    let per_branch = par::try_map(exec, &branches, |&(bi, w)| {
        let mut st = State::new(q, g1.p());
        let mut out = Vec::new();
        st.vmap[u0] = w;
        st.used2[w] = true;
        ctx.budget.tick()?;
        ctx.extend(&mut st, 1, bi, &mut out)?;
        Ok(out)
    })?;
    let mut all: Vec<T> = Vec::new();
    for mut chunk in per_branch {
        all.append(&mut chunk);
        if find == Find::First && !all.is_empty() {
            all.truncate(1);
            break;
        }
    }
    Ok(all)
}
