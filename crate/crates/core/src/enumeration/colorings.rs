//! Uniform edge colorings and (near-)one-factorizations up to equivalence.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{colorings_equivalent, ColoredDigraph, SimpleGraph};
use crate::par::{self, Budget, Exec};

/// Inequivalent uniform colorings of one graph.
#[derive(Debug, Clone)]
pub struct ColoringCensus {
    pub graph: SimpleGraph,
    /// One representative per equivalence class, sorted by `p`.
    pub colorings: Vec<ColoredDigraph>,
    /// Number of labeled colorings examined (color names ignored).
    pub labeled: u64,
    /// Number of classes under direction-preserving equivalence of the
    /// canonical orientations.
    pub strict_count: usize,
}

impl ColoringCensus {
    pub fn p_values(&self) -> Vec<usize> {
        self.colorings.iter().map(|c| c.p()).collect()
    }
}

/// Cheap equivalence invariant: for every pair of color classes, the shapes
/// of the components of their union (each a path or an even cycle).
type Invariant = (usize, Vec<Vec<(usize, bool)>>);

fn invariant(g: &ColoredDigraph) -> Invariant {
    let q = g.q();
    let p = g.p();
    let mut classes: Vec<Vec<(usize, usize)>> = vec![Vec::new(); p];
    for (a, b, c) in g.colored_edges() {
        classes[c].push((a, b));
    }
    let mut shapes = Vec::new();
    for x in 0..p {
        for y in x..p {
            let mut parent: Vec<usize> = (0..q).collect();
            fn find(parent: &mut [usize], v: usize) -> usize {
                let mut r = v;
                while parent[r] != r {
                    r = parent[r];
                }
                parent[v] = r;
                r
            }
            let edges: Vec<(usize, usize)> = if x == y {
                classes[x].clone()
            } else {
                classes[x].iter().chain(&classes[y]).copied().collect()
            };
            for &(a, b) in &edges {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
            let mut count: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
            let mut touched = vec![false; q];
            for &(a, b) in &edges {
                touched[a] = true;
                touched[b] = true;
                count.entry(find(&mut parent, a)).or_default().0 += 1;
            }
            for v in 0..q {
                if touched[v] {
                    let r = find(&mut parent, v);
                    count.entry(r).or_default().1 += 1;
                }
            }
            let mut comps: Vec<(usize, bool)> = count.values().map(|&(e, v)| (e, e == v)).collect();
            comps.sort_unstable();
            shapes.push(comps);
        }
    }
    shapes.sort();
    (p, shapes)
}

/// Keep one member of each equivalence class, in input order.
pub fn dedup_equivalent(
    items: Vec<ColoredDigraph>,
    strict: bool,
    exec: Exec,
    budget: &Budget,
) -> Result<Vec<ColoredDigraph>> {
    let keys = par::map(exec, &items, invariant);
    let mut buckets: Vec<(Invariant, Vec<usize>)> = Vec::new();
    let mut index: BTreeMap<Invariant, usize> = BTreeMap::new();
    for (i, k) in keys.into_iter().enumerate() {
        match index.get(&k) {
            Some(&b) => buckets[b].1.push(i),
            None => {
                index.insert(k.clone(), buckets.len());
                buckets.push((k, vec![i]));
            }
        }
    }
    let kept = par::try_map(exec, &buckets, |(_, members)| {
        let mut reps: Vec<usize> = Vec::new();
        for &i in members {
            let mut fresh = true;
            for &r in &reps {
                if colorings_equivalent(&items[r], &items[i], strict, budget)?.is_some() {
                    fresh = false;
                    break;
                }
            }
            if fresh {
                reps.push(i);
            }
        }
        Ok(reps)
    })?;
    let mut keep: Vec<usize> = kept.into_iter().flatten().collect();
    keep.sort_unstable();
    let mut items: Vec<Option<ColoredDigraph>> = items.into_iter().map(Some).collect();
    Ok(keep.into_iter().filter_map(|i| items[i].take()).collect())
}

/// Every partition of the edges of `g` into matchings of exactly `r` edges,
/// with colors numbered by first appearance along the lexicographic edge
/// list. Arcs point from smaller to larger endpoint.
pub fn labeled_colorings(g: &SimpleGraph, r: usize, budget: &Budget) -> Result<Vec<ColoredDigraph>> {
    let edges = g.edges();
    let m = edges.len();
    if r == 0 || m == 0 || m % r != 0 {
        return Ok(Vec::new());
    }
    let p = m / r;
    if p > 64 {
        return Err(Error::TooLarge(format!("{p} colors exceeds the limit of 64")));
    }
    struct St<'a> {
        edges: &'a [(usize, usize)],
        r: usize,
        p: usize,
        at_vertex: Vec<u64>,
        sizes: Vec<usize>,
        colors: Vec<usize>,
        out: Vec<ColoredDigraph>,
        q: usize,
        budget: &'a Budget,
    }
    fn rec(st: &mut St, e: usize, used: usize) -> Result<()> {
        st.budget.tick()?;
        if e == st.edges.len() {
            let colored: Vec<(usize, usize, usize)> =
                st.edges.iter().zip(&st.colors).map(|(&(a, b), &c)| (a, b, c)).collect();
            st.out.push(ColoredDigraph::from_undirected(st.q, st.p, &colored)?);
            return Ok(());
        }
        // Colors still to be opened need enough edges left.
        let left = st.edges.len() - e;
        let open_capacity: usize = st.sizes[..used].iter().map(|s| st.r - s).sum();
        if open_capacity + (st.p - used) * st.r < left {
            return Ok(());
        }
        let (a, b) = st.edges[e];
        let limit = (used + 1).min(st.p);
        for c in 0..limit {
            let bit = 1u64 << c;
            if st.sizes[c] == st.r || st.at_vertex[a] & bit != 0 || st.at_vertex[b] & bit != 0 {
                continue;
            }
            st.sizes[c] += 1;
            st.at_vertex[a] |= bit;
            st.at_vertex[b] |= bit;
            st.colors.push(c);
            let r = rec(st, e + 1, used.max(c + 1));
            st.colors.pop();
            st.at_vertex[a] &= !bit;
            st.at_vertex[b] &= !bit;
            st.sizes[c] -= 1;
            r?;
        }
        Ok(())
    }
    let mut st = St {
        edges: &edges,
        r,
        p,
        at_vertex: vec![0; g.order()],
        sizes: vec![0; p],
        colors: Vec::new(),
        out: Vec::new(),
        q: g.order(),
        budget,
    };
    rec(&mut st, 0, 0)?;
    Ok(st.out)
}

/// Largest graph order accepted by [`uniform_colorings`].
pub const MAX_COLORING_ORDER: usize = 8;

/// Inequivalent uniform colorings of the regular graph `g`, grouped by `p`.
/// Equivalence ignores arc directions unless `strict` is set; the strict
/// class count is reported either way.
pub fn uniform_colorings(g: &SimpleGraph, strict: bool, exec: Exec, budget: &Budget) -> Result<ColoringCensus> {
    if g.order() > MAX_COLORING_ORDER {
        return Err(Error::TooLarge(format!(
            "colorings limited to {MAX_COLORING_ORDER} vertices, got {}",
            g.order()
        )));
    }
    g.regular_degree()
        .ok_or_else(|| Error::InvalidParameter(format!("{} is not regular", g.describe())))?;
    let m = g.edge_count();
    let mut labeled = 0u64;
    let mut loose = Vec::new();
    let mut tight = Vec::new();
    // p >= s forces r <= m / s = q / 2.
    let r_values: Vec<usize> = (1..=m).rev().filter(|r| m % r == 0 && 2 * r <= g.order()).collect();
    for r in r_values {
        let all = labeled_colorings(g, r, budget)?;
        labeled += all.len() as u64;
        let strict_reps = dedup_equivalent(all.clone(), true, exec, budget)?;
        tight.push(strict_reps.len());
        let reps = if strict {
            strict_reps
        } else {
            dedup_equivalent(all, false, exec, budget)?
        };
        loose.extend(reps);
    }
    Ok(ColoringCensus {
        graph: g.clone(),
        colorings: loose,
        labeled,
        strict_count: tight.iter().sum(),
    })
}

/// Labeled count and equivalence classes of (near-)one-factorizations of
/// `K_n`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FactorizationCensus {
    pub n: usize,
    pub near: bool,
    pub labeled: u64,
    #[serde(skip)]
    pub classes: Vec<ColoredDigraph>,
}

fn perfect_matchings(
    verts: u64,
    used: &[u64],
    budget: &Budget,
    out: &mut Vec<Vec<(usize, usize)>>,
    cur: &mut Vec<(usize, usize)>,
) -> Result<()> {
    budget.tick()?;
    if verts == 0 {
        out.push(cur.clone());
        return Ok(());
    }
    let a = verts.trailing_zeros() as usize;
    let mut rest = verts & !(1 << a);
    while rest != 0 {
        let b = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if used[a] >> b & 1 == 0 {
            cur.push((a, b));
            perfect_matchings(verts & !(1 << a) & !(1 << b), used, budget, out, cur)?;
            cur.pop();
        }
    }
    Ok(())
}

/// All one-factorizations of `K_n` (`n` even, at most 8) and, with `near`,
/// all near-one-factorizations (`n` odd, at most 7). Factors are numbered so
/// that factor `k` contains the edge `{0, k+1}`, or misses vertex `k` in the
/// near case; each unordered factorization is listed once.
pub fn factorizations(n: usize, near: bool, exec: Exec, budget: &Budget) -> Result<FactorizationCensus> {
    let (limit, parity_ok) = if near { (7, n % 2 == 1) } else { (8, n % 2 == 0) };
    if !parity_ok {
        return Err(Error::InvalidParameter(if near {
            format!("near-one-factorizations need odd n, got {n}")
        } else {
            format!("one-factorizations need even n, got {n}")
        }));
    }
    if n > limit {
        return Err(Error::TooLarge(format!("factorizations limited to n <= {limit}, got {n}")));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!("K{n} has no edges")));
    }
    let all_verts: u64 = (1u64 << n) - 1;
    let factors = n - 1 + near as usize;
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut color = vec![vec![usize::MAX; n]; n];

    fn rec(
        n: usize,
        near: bool,
        all_verts: u64,
        k: usize,
        factors: usize,
        used: &mut Vec<u64>,
        color: &mut Vec<Vec<usize>>,
        found: &mut Vec<Vec<usize>>,
        budget: &Budget,
    ) -> Result<()> {
        if k == factors {
            let mut flat = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    flat.push(color[a][b]);
                }
            }
            found.push(flat);
            return Ok(());
        }
        let mut options = Vec::new();
        let mut cur = Vec::new();
        if near {
            perfect_matchings(all_verts & !(1 << k), used, budget, &mut options, &mut cur)?;
        } else {
            let b = k + 1;
            if used[0] >> b & 1 == 1 {
                return Ok(());
            }
            cur.push((0, b));
            perfect_matchings(all_verts & !1 & !(1 << b), used, budget, &mut options, &mut cur)?;
        }
        for m in options {
            for &(a, b) in &m {
                used[a] |= 1 << b;
                used[b] |= 1 << a;
                color[a][b] = k;
            }
            let r = rec(n, near, all_verts, k + 1, factors, used, color, found, budget);
            for &(a, b) in &m {
                used[a] &= !(1 << b);
                used[b] &= !(1 << a);
            }
            r?;
        }
        Ok(())
    }

    let mut used = vec![0u64; n];
    rec(n, near, all_verts, 0, factors, &mut used, &mut color, &mut found, budget)?;
    let labeled = found.len() as u64;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let graphs = found
        .iter()
        .map(|flat| {
            let edges: Vec<(usize, usize, usize)> =
                pairs.iter().zip(flat).map(|(&(a, b), &c)| (a, b, c)).collect();
            ColoredDigraph::from_undirected(n, factors, &edges)
        })
        .collect::<Result<Vec<_>>>()?;
    let classes = dedup_equivalent(graphs, false, exec, budget)?;
    Ok(FactorizationCensus {
        n,
        near,
        labeled,
        classes,
    })
}

pub fn one_factorizations(n: usize, exec: Exec, budget: &Budget) -> Result<FactorizationCensus> {
    factorizations(n, false, exec, budget)
}

pub fn near_one_factorizations(n: usize, exec: Exec, budget: &Budget) -> Result<FactorizationCensus> {
    factorizations(n, true, exec, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate_uniform;

    #[test]
    fn k4_colorings() {
        let k4 = SimpleGraph::complete(4).unwrap();
        let c = uniform_colorings(&k4, false, Exec::Sequential, &Budget::default()).unwrap();
        assert_eq!(c.p_values(), vec![3, 6]);
        for g in &c.colorings {
            assert!(validate_uniform(g).is_uniform);
        }
    }

    #[test]
    fn c3_has_only_the_rainbow_coloring() {
        let c3 = SimpleGraph::cycle(3).unwrap();
        let c = uniform_colorings(&c3, false, Exec::Sequential, &Budget::default()).unwrap();
        assert_eq!(c.p_values(), vec![3]);
    }

    #[test]
    fn parity_errors() {
        let b = Budget::default();
        assert!(matches!(one_factorizations(5, Exec::Sequential, &b), Err(Error::InvalidParameter(_))));
        assert!(matches!(near_one_factorizations(4, Exec::Sequential, &b), Err(Error::InvalidParameter(_))));
        assert!(matches!(one_factorizations(10, Exec::Sequential, &b), Err(Error::TooLarge(_))));
    }

    #[test]
    fn small_factorization_counts() {
        let b = Budget::default();
        let k4 = one_factorizations(4, Exec::Sequential, &b).unwrap();
        assert_eq!((k4.labeled, k4.classes.len()), (1, 1));
        let k6 = one_factorizations(6, Exec::Parallel, &b).unwrap();
        assert_eq!((k6.labeled, k6.classes.len()), (6, 1));
        let k5 = near_one_factorizations(5, Exec::Sequential, &b).unwrap();
        assert_eq!((k5.labeled, k5.classes.len()), (6, 1));
        assert_eq!(validate_uniform(&k5.classes[0]).pqr(), Some((5, 5, 2)));
    }
}
