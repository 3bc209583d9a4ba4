//! Constructors for the named uniformly colored graphs and the algebras
//! they define. Vertex and color numbering is fixed so labels are
//! reproducible.

mod group;
mod spec;

use crate::error::{Error, Result};
use crate::graph::{identity_coloring, ColoredArc, ColoredDigraph, SimpleGraph};
use crate::linalg::{Rat, RatMatrix};
use crate::lie::{IsoWitness, StructureTensor};

pub use group::FiniteGroup;
pub use spec::{FamilySpec, FAMILY_NAMES};

/// `h_{2n+1}`: `[v_{2i-1}, v_{2i}] = z_1` for `i = 1..n`.
pub fn heisenberg(n: usize) -> Result<ColoredDigraph> {
    if n == 0 {
        return Err(Error::InvalidParameter("heisenberg needs n >= 1".into()));
    }
    ColoredDigraph::new(2 * n, 1, (0..n).map(|i| ColoredArc::new(2 * i, 2 * i + 1, 0)))
}

/// Free two-step nilpotent algebra on `n` generators: `K_n` with every edge
/// its own color, colors in lexicographic pair order.
pub fn free_two_step(n: usize) -> Result<ColoredDigraph> {
    if n < 2 {
        return Err(Error::InvalidParameter("free_two_step needs n >= 2".into()));
    }
    identity_coloring(&SimpleGraph::complete(n)?)
}

/// Even cycle `C_{2r}` colored alternately: `[v_{2i-1}, v_{2i}] = z_1`,
/// `[v_{2i}, v_{2i+1}] = z_2`, closed by `[v_1, v_{2r}] = z_2`, or by
/// `[v_{2r}, v_1] = z_2` when `primed`.
pub fn ring_algebra(r: usize, primed: bool) -> Result<ColoredDigraph> {
    if r < 2 {
        return Err(Error::InvalidParameter("ring_algebra needs r >= 2".into()));
    }
    let q = 2 * r;
    let mut arcs: Vec<ColoredArc> = (0..r).map(|i| ColoredArc::new(2 * i, 2 * i + 1, 0)).collect();
    arcs.extend((0..r - 1).map(|i| ColoredArc::new(2 * i + 1, 2 * i + 2, 1)));
    arcs.push(if primed {
        ColoredArc::new(q - 1, 0, 1)
    } else {
        ColoredArc::new(0, q - 1, 1)
    });
    ColoredDigraph::new(q, 2, arcs)
}

/// The one-factorization of `K_4` with `[v1,v2] = [v3,v4] = z1`,
/// `[v1,v3] = [v4,v2] = z2`, `[v1,v4] = [v2,v3] = z3`; the associate
/// reverses the last arc, `[v1,v4] = -[v2,v3] = z3`, and has
/// `[v2,v4] = z2`.
pub fn quaternionic(associate: bool) -> Result<ColoredDigraph> {
    let arcs: &[(usize, usize, usize)] = if associate {
        &[(1, 2, 1), (3, 4, 1), (1, 3, 2), (2, 4, 2), (1, 4, 3), (3, 2, 3)]
    } else {
        &[(1, 2, 1), (3, 4, 1), (1, 3, 2), (4, 2, 2), (1, 4, 3), (2, 3, 3)]
    };
    ColoredDigraph::from_one_based(4, 3, arcs)
}

/// `m(q)`: `[v_i, v_{i+1}] = z_i` with indices mod `q`.
pub fn cyclic(q: usize) -> Result<ColoredDigraph> {
    if q < 3 {
        return Err(Error::InvalidParameter("cyclic needs q >= 3".into()));
    }
    ColoredDigraph::new(q, q, (0..q).map(|i| ColoredArc::new(i, (i + 1) % q, i)))
}

/// `k`-subsets of `0..n` as bitmasks in colexicographic order.
pub fn colex_subsets(n: usize, k: usize) -> Vec<u32> {
    let mut out: Vec<u32> = (0u32..1 << n).filter(|m| m.count_ones() as usize == k).collect();
    // colex order on sets is numeric order on masks
    out.sort_unstable();
    out
}

/// Kneser graph `K(n, m)`: vertices are `m`-subsets of `[n]`, adjacent when
/// disjoint, and each edge colored by the complement of the union. Vertices
/// and colors are numbered in colex order; arcs run from lower to higher
/// index.
pub fn kneser(n: usize, m: usize) -> Result<ColoredDigraph> {
    if m == 0 || 2 * m >= n {
        return Err(Error::InvalidParameter(format!("kneser needs 1 <= m < n/2, got n={n} m={m}")));
    }
    if n > 12 {
        return Err(Error::TooLarge(format!("kneser limited to n <= 12, got {n}")));
    }
    let verts = colex_subsets(n, m);
    let colors = colex_subsets(n, n - 2 * m);
    let full = (1u32 << n) - 1;
    let mut arcs = Vec::new();
    for (a, &x) in verts.iter().enumerate() {
        for (b, &y) in verts.iter().enumerate().skip(a + 1) {
            if x & y == 0 {
                let c = full & !(x | y);
                let k = colors.binary_search(&c).expect("complement has the right size");
                arcs.push(ColoredArc::new(a, b, k));
            }
        }
    }
    ColoredDigraph::new(verts.len(), colors.len(), arcs)
}

/// Cayley graph of `group` on the involutions `ts`: edge `{g, t g}` colored
/// by the position of `t` in `ts`, oriented from lower to higher element
/// index.
pub fn cayley(group: &FiniteGroup, ts: &[usize]) -> Result<ColoredDigraph> {
    if ts.is_empty() {
        return Err(Error::InvalidParameter("cayley needs at least one involution".into()));
    }
    let mut seen = std::collections::HashSet::new();
    for &t in ts {
        if t >= group.order() {
            return Err(Error::IndexOutOfRange {
                what: "group element",
                index: t,
                max: group.order() - 1,
            });
        }
        if group.element_order(t) != 2 {
            return Err(Error::InvalidParameter(format!(
                "element {t} of {} has order {}, not 2",
                group.name(),
                group.element_order(t)
            )));
        }
        if !seen.insert(t) {
            return Err(Error::InvalidParameter(format!("element {t} listed twice")));
        }
    }
    let mut arcs = Vec::new();
    for g in 0..group.order() {
        for (k, &t) in ts.iter().enumerate() {
            let h = group.mul(t, g);
            if g < h {
                arcs.push(ColoredArc::new(g, h, k));
            }
        }
    }
    ColoredDigraph::new(group.order(), ts.len(), arcs)
}

/// Cayley graph of the dihedral group of order `2p` on its `p`
/// reflections, which is `K_{p,p}`.
pub fn dihedral_bipartite(p: usize) -> Result<ColoredDigraph> {
    let g = FiniteGroup::dihedral(p)?;
    let reflections: Vec<usize> = (p..2 * p).collect();
    cayley(&g, &reflections)
}

/// Color the edges of `g` by factor index. Factors must partition the edge
/// set into perfect or near-perfect matchings.
pub fn from_factorization(g: &SimpleGraph, factors: &[Vec<(usize, usize)>]) -> Result<ColoredDigraph> {
    let n = g.order();
    for (k, f) in factors.iter().enumerate() {
        let covered = 2 * f.len();
        if covered + 1 < n {
            return Err(Error::InvalidParameter(format!(
                "factor {} covers {covered} of {n} vertices",
                k + 1
            )));
        }
    }
    from_decomposition(g, factors)
}

/// Color the edges of `g` by part index; the parts must partition the edge
/// set into matchings.
pub fn from_decomposition(g: &SimpleGraph, parts: &[Vec<(usize, usize)>]) -> Result<ColoredDigraph> {
    let mut used = std::collections::HashSet::new();
    let mut edges = Vec::new();
    for (k, part) in parts.iter().enumerate() {
        let mut touched = vec![false; g.order()];
        for &(a, b) in part {
            if a >= g.order() || b >= g.order() || !g.has_edge(a, b) {
                return Err(Error::InvalidParameter(format!("{{{}, {}}} is not an edge", a + 1, b + 1)));
            }
            if !used.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidParameter(format!("edge {{{}, {}}} used twice", a + 1, b + 1)));
            }
            if std::mem::replace(&mut touched[a], true) || std::mem::replace(&mut touched[b], true) {
                return Err(Error::InvalidParameter(format!("part {} is not a matching", k + 1)));
            }
            edges.push((a, b, k));
        }
    }
    if used.len() != g.edge_count() {
        return Err(Error::InvalidParameter(format!(
            "parts cover {} of {} edges",
            used.len(),
            g.edge_count()
        )));
    }
    ColoredDigraph::from_undirected(g.order(), parts.len(), &edges)
}

/// Each edge of a regular graph gets its own color.
pub fn trivial_coloring(g: &SimpleGraph) -> Result<ColoredDigraph> {
    if g.edge_count() == 0 || g.regular_degree().is_none() {
        return Err(Error::InvalidParameter(format!("{} is not a regular graph with edges", g.describe())));
    }
    identity_coloring(g)
}

/// The near-one-factorization of `K_5` with the orientation
/// `[v3,v4] = [v2,v5] = z1`, `[v4,v5] = [v3,v1] = z2`,
/// `[v5,v1] = [v4,v2] = z3`, `[v1,v2] = [v5,v3] = z4`,
/// `[v2,v3] = [v1,v4] = z5`.
pub fn k5_near_one_factorization() -> Result<ColoredDigraph> {
    ColoredDigraph::from_one_based(
        5,
        5,
        &[
            (3, 4, 1),
            (2, 5, 1),
            (4, 5, 2),
            (3, 1, 2),
            (5, 1, 3),
            (4, 2, 3),
            (1, 2, 4),
            (5, 3, 4),
            (2, 3, 5),
            (1, 4, 5),
        ],
    )
}

/// The associate of [`k5_near_one_factorization`] with
/// `[x2,x3] = -[x1,x4] = w5`.
pub fn k5_associate() -> Result<StructureTensor> {
    let t = StructureTensor::from_graph(&k5_near_one_factorization()?);
    let entries = t.brackets().into_iter().map(|b| {
        let flip = (b.i, b.j) == (0, 3);
        (b.i, b.j, b.k, if flip { -b.sign } else { b.sign })
    });
    StructureTensor::new(5, 5, entries)
}

/// Signed permutation from [`k5_associate`] onto the algebra of
/// [`k5_near_one_factorization`]:
/// `x1 -> -v2, x2 -> -v5, x3 -> -v3, x4 -> -v1, x5 -> v4`,
/// `w1 -> z2, w2 -> -z5, w3 -> -z3, w4 -> z1, w5 -> z4`.
pub fn k5_witness() -> IsoWitness {
    IsoWitness::SignedPerm {
        vertex_perm: vec![1, 4, 2, 0, 3],
        color_perm: vec![1, 4, 2, 0, 3],
        vertex_signs: vec![-1, -1, -1, -1, 1],
        color_signs: vec![1, -1, -1, 1, 1],
    }
}

/// `h3 + h3` with `[x1,x2] = z1`, `[x3,x4] = z2`.
pub fn heisenberg_sum() -> Result<ColoredDigraph> {
    ColoredDigraph::from_one_based(4, 2, &[(1, 2, 1), (3, 4, 2)])
}

/// Change of basis from the presentation `ring_algebra(2, true)`
/// (`[u1,u2] = [u3,u4] = w1`, `[u2,u3] = [u4,u1] = w2`) onto
/// [`heisenberg_sum`]: `u1 = x1 + x3`, `u2 = x2 + x4`, `u3 = x1 - x3`,
/// `u4 = x2 - x4`, `w1 = z1 + z2`, `w2 = z2 - z1`.
pub fn ring_to_heisenberg_sum_witness() -> IsoWitness {
    let r = |v: i64| Rat::from_integer(v);
    let cols = vec![
        vec![r(1), r(0), r(1), r(0), r(0), r(0)],
        vec![r(0), r(1), r(0), r(1), r(0), r(0)],
        vec![r(1), r(0), r(-1), r(0), r(0), r(0)],
        vec![r(0), r(1), r(0), r(-1), r(0), r(0)],
        vec![r(0), r(0), r(0), r(0), r(1), r(1)],
        vec![r(0), r(0), r(0), r(0), r(-1), r(1)],
    ];
    IsoWitness::GeneralLinear {
        matrix: RatMatrix::from_columns(&cols).expect("square"),
        block_respecting: true,
    }
}

/// Build a tensor directly from a family graph.
pub fn algebra(g: &ColoredDigraph) -> StructureTensor {
    StructureTensor::from_graph(g)
}
