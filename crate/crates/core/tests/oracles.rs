//! Brute-force cross-checks for the enumeration counts.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use unilie::enumeration::*;
use unilie::families::{cyclic, free_two_step, quaternionic, ring_algebra};
use unilie::graph::SimpleGraph;
use unilie::lie::{NVector, StructureTensor};
use unilie::linalg::Rat;
use unilie::par::{Budget, Exec};

use common::binom2;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn pairs(q: usize) -> Vec<(usize, usize)> {
    (0..q).flat_map(|a| (a + 1..q).map(move |b| (a, b))).collect()
}

/// Smallest edge bitmask over all relabelings.
fn min_label(q: usize, edges: &[(usize, usize)], perms: &[Vec<usize>]) -> u64 {
    let index: BTreeMap<(usize, usize), usize> = pairs(q).into_iter().enumerate().map(|(i, e)| (e, i)).collect();
    perms
        .iter()
        .map(|p| {
            edges.iter().fold(0u64, |m, &(a, b)| {
                let (x, y) = (p[a].min(p[b]), p[a].max(p[b]));
                m | 1 << index[&(x, y)]
            })
        })
        .min()
        .unwrap()
}

#[test]
fn regular_graph_counts_match_exhaustive_search() {
    let b = Budget::default();
    let found = regular_graphs(6, Exec::Parallel, &b).unwrap();
    let mut ours: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for g in &found {
        *ours.entry((g.regular_degree().unwrap(), g.order())).or_default() += 1;
    }
    let mut oracle: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for q in 2..=6 {
        let ps = pairs(q);
        let perms = permutations(q);
        let mut seen = BTreeSet::new();
        for mask in 1u64..1 << ps.len() {
            let edges: Vec<(usize, usize)> = (0..ps.len()).filter(|i| mask >> i & 1 == 1).map(|i| ps[i]).collect();
            let mut deg = vec![0; q];
            for &(a, c) in &edges {
                deg[a] += 1;
                deg[c] += 1;
            }
            if deg.iter().any(|&d| d != deg[0]) {
                continue;
            }
            if seen.insert(min_label(q, &edges, &perms)) {
                *oracle.entry((deg[0], q)).or_default() += 1;
            }
        }
    }
    assert_eq!(ours, oracle);
    assert_eq!(found.len(), 14);
}

#[test]
fn regular_graphs_up_to_eight_vertices() {
    let b = Budget::default();
    let found = regular_graphs(8, Exec::Parallel, &b).unwrap();
    let eight = found.iter().filter(|g| g.order() == 8).count();
    assert_eq!(eight, 21);
    assert_eq!(found.len(), 40);
}

/// Classes of uniform colorings by exhaustive partition of the edge set and
/// minimization over vertex relabelings, colors renamed by first use.
fn coloring_oracle(g: &SimpleGraph) -> Vec<usize> {
    let edges = g.edges();
    let q = g.order();
    let perms = permutations(q);
    let index: BTreeMap<(usize, usize), usize> = pairs(q).into_iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut classes: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut assign = vec![0usize; edges.len()];
    fn partitions(e: usize, used: usize, assign: &mut Vec<usize>, out: &mut dyn FnMut(&[usize], usize)) {
        if e == assign.len() {
            out(assign, used);
            return;
        }
        for c in 0..=used {
            assign[e] = c;
            partitions(e + 1, used.max(c + 1), assign, out);
        }
    }
    partitions(0, 0, &mut assign, &mut |a, p| {
        let mut size = vec![0; p];
        let mut at = vec![vec![false; p]; q];
        for (&(x, y), &c) in edges.iter().zip(a) {
            if at[x][c] || at[y][c] {
                return;
            }
            at[x][c] = true;
            at[y][c] = true;
            size[c] += 1;
        }
        if size.iter().any(|&s| s != size[0]) {
            return;
        }
        let key = perms
            .iter()
            .map(|pm| {
                let mut cells = vec![usize::MAX; binom2(q)];
                for (&(x, y), &c) in edges.iter().zip(a) {
                    cells[index[&(pm[x].min(pm[y]), pm[x].max(pm[y]))]] = c;
                }
                let mut rename = vec![usize::MAX; p];
                let mut next = 0;
                for cell in cells.iter_mut().filter(|c| **c != usize::MAX) {
                    if rename[*cell] == usize::MAX {
                        rename[*cell] = next;
                        next += 1;
                    }
                    *cell = rename[*cell];
                }
                cells
            })
            .min()
            .unwrap();
        let mut tagged = key;
        tagged.push(p);
        classes.insert(tagged);
    });
    let mut ps: Vec<usize> = classes.iter().map(|k| *k.last().unwrap()).collect();
    ps.sort_unstable();
    ps
}

#[test]
fn coloring_counts_match_exhaustive_partitions() {
    let b = Budget::default();
    for g in regular_graphs(6, Exec::Parallel, &b).unwrap() {
        if g.edge_count() > 10 {
            continue;
        }
        let mut ours = uniform_colorings(&g, false, Exec::Sequential, &b).unwrap().p_values();
        ours.sort_unstable();
        assert_eq!(ours, coloring_oracle(&g), "{}", g.describe());
    }
}

/// Exact covers of the edges of `K_n` by (near-)perfect matchings.
fn cover_count(n: usize) -> usize {
    fn matchings(verts: &[usize], skip_one: bool) -> Vec<u64> {
        fn rec(verts: &[usize], skip: bool, n: usize, acc: u64, out: &mut Vec<u64>) {
            match verts.split_first() {
                None => out.push(acc),
                Some((&a, rest)) => {
                    if skip {
                        rec(rest, false, n, acc, out);
                    }
                    for (i, &b) in rest.iter().enumerate() {
                        let mut r = rest.to_vec();
                        r.remove(i);
                        rec(&r, skip, n, acc | 1 << (a * n + b), out);
                    }
                }
            }
        }
        let mut out = Vec::new();
        let n = verts.len();
        rec(verts, skip_one, n, 0, &mut out);
        out
    }
    let verts: Vec<usize> = (0..n).collect();
    let ms = matchings(&verts, n % 2 == 1);
    let full = pairs(n).iter().fold(0u64, |m, &(a, b)| m | 1 << (a * n + b));
    fn count(ms: &[u64], from: usize, covered: u64, full: u64) -> usize {
        if covered == full {
            return 1;
        }
        // the lowest uncovered edge must be covered by the next matching
        let low = (!covered & full).trailing_zeros();
        (from..ms.len())
            .filter(|&i| ms[i] & covered == 0 && ms[i] >> low & 1 == 1)
            .map(|i| count(ms, 0, covered | ms[i], full))
            .sum()
    }
    count(&ms, 0, 0, full)
}

#[test]
fn factorization_counts_match_exact_covers() {
    let b = Budget::default();
    for n in [4, 6, 8] {
        let c = one_factorizations(n, Exec::Parallel, &b).unwrap();
        assert_eq!(c.labeled as usize, cover_count(n), "K{n}");
    }
    for n in [3, 5, 7] {
        let c = near_one_factorizations(n, Exec::Parallel, &b).unwrap();
        assert_eq!(c.labeled as usize, cover_count(n), "K{n} near");
    }
    assert_eq!(cover_count(8), 6240);
    assert_eq!(one_factorizations(8, Exec::Parallel, &b).unwrap().classes.len(), 6);
}

/// Subalgebra and totally geodesic tests straight from brackets and J maps.
fn geodesic_oracle(t: &StructureTensor, vs: &[usize], ss: &[usize]) -> (bool, bool) {
    let (q, p) = (t.q(), t.p());
    let in_z = |z: &[Rat]| (0..p).all(|k| z[k] == Rat::from_integer(0) || ss.contains(&k));
    let mut subalgebra = true;
    for &a in vs {
        for &b in vs {
            let x = t
                .bracket(&NVector::generator(q, p, a), &NVector::generator(q, p, b))
                .unwrap();
            subalgebra &= in_z(&x.z);
        }
    }
    let mut invariant = true;
    for &k in ss {
        let mut z = vec![Rat::from_integer(0); p];
        z[k] = Rat::from_integer(1);
        let j = t.j_map(&z).unwrap();
        for &a in vs {
            let mut x = vec![Rat::from_integer(0); q];
            x[a] = Rat::from_integer(1);
            let y = j.mul_vec(&x).unwrap();
            invariant &= (0..q).all(|i| y[i] == Rat::from_integer(0) || vs.contains(&i));
        }
    }
    (subalgebra, subalgebra && invariant)
}

#[test]
fn totally_geodesic_matches_direct_computation() {
    for g in [
        quaternionic(false).unwrap(),
        quaternionic(true).unwrap(),
        ring_algebra(2, false).unwrap(),
        cyclic(5).unwrap(),
        free_two_step(4).unwrap(),
    ] {
        let t = StructureTensor::from_graph(&g);
        let (q, p) = (t.q(), t.p());
        for vm in 0u32..1 << q {
            for sm in 0u32..1 << p {
                if vm == 0 && sm == 0 {
                    continue;
                }
                let vs: Vec<usize> = (0..q).filter(|i| vm >> i & 1 == 1).collect();
                let ss: Vec<usize> = (0..p).filter(|k| sm >> k & 1 == 1).collect();
                let got = t.totally_geodesic(&vs, &ss).unwrap();
                assert_eq!((got.is_subalgebra, got.is_tg), geodesic_oracle(&t, &vs, &ss), "{vs:?} {ss:?}");
            }
        }
    }
    let t = StructureTensor::from_graph(&quaternionic(false).unwrap());
    let tg = t.totally_geodesic(&[0, 1], &[0]).unwrap();
    assert!(tg.is_subalgebra && tg.is_tg);
}
