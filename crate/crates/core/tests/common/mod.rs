#![allow(dead_code)]

use unilie::enumeration::{regular_graphs, uniform_colorings};
use unilie::families::*;
use unilie::graph::{ColoredArc, ColoredDigraph};
use unilie::par::{Budget, Exec};

/// Uniform colorings available without heavy search: family instances plus
/// every inequivalent uniform coloring of a regular graph on at most five
/// vertices.
pub fn uniform_pool() -> Vec<ColoredDigraph> {
    let mut pool = vec![
        heisenberg(1).unwrap(),
        heisenberg(2).unwrap(),
        heisenberg(3).unwrap(),
        free_two_step(3).unwrap(),
        free_two_step(4).unwrap(),
        cyclic(3).unwrap(),
        cyclic(4).unwrap(),
        cyclic(6).unwrap(),
        ring_algebra(2, false).unwrap(),
        ring_algebra(3, true).unwrap(),
        quaternionic(false).unwrap(),
        quaternionic(true).unwrap(),
        k5_near_one_factorization().unwrap(),
        heisenberg_sum().unwrap(),
        dihedral_bipartite(3).unwrap(),
    ];
    let b = Budget::default();
    for g in regular_graphs(5, Exec::Sequential, &b).unwrap() {
        pool.extend(uniform_colorings(&g, false, Exec::Sequential, &b).unwrap().colorings);
    }
    pool
}

/// Rename vertices by `vp`, colors by `cp`, and reverse arcs whose index
/// bit is set in `flips`.
pub fn relabel(g: &ColoredDigraph, vp: &[usize], cp: &[usize], flips: u64) -> ColoredDigraph {
    let arcs = g.arcs().iter().enumerate().map(|(i, a)| {
        let (t, h) = (vp[a.tail], vp[a.head]);
        if flips >> (i % 64) & 1 == 1 {
            ColoredArc::new(h, t, cp[a.color])
        } else {
            ColoredArc::new(t, h, cp[a.color])
        }
    });
    ColoredDigraph::new(g.q(), g.p(), arcs).unwrap()
}

/// Permutation of `0..n` from a sequence of swap choices.
pub fn perm_from(n: usize, choices: &[usize]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = choices.get(i).copied().unwrap_or(0) % (i + 1);
        p.swap(i, j);
    }
    p
}

pub fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}
