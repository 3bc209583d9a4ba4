//! Edge-colored directed graphs and uniform colorings.
//!
//! A [`ColoredDigraph`] is a loop-free digraph on vertices `0..q` in which
//! every unordered pair carries at most one arc, and every arc carries a
//! color in `0..p`. Externally (text formats, reports) vertices are named
//! `v1..vq` and colors `z1..zp`.

mod search;
mod simple;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::par::{Budget, Exec};

pub(crate) use search::{search_isomorphisms, Find};
pub use simple::SimpleGraph;

/// One arc `tail -> head` with its color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ColoredArc {
    pub tail: usize,
    pub head: usize,
    pub color: usize,
}

impl ColoredArc {
    pub fn new(tail: usize, head: usize, color: usize) -> Self {
        ColoredArc { tail, head, color }
    }

    /// Endpoints as `(min, max)`.
    pub fn pair(&self) -> (usize, usize) {
        (self.tail.min(self.head), self.tail.max(self.head))
    }
}

/// Directed loop-free graph with an edge coloring.
///
/// Arcs are kept sorted by their unordered endpoint pair, so two graphs with
/// the same arc set compare equal regardless of construction order. Colors
/// need not all be used; an unused color is reported by
/// [`validate_uniform`] as [`Violation::NotSurjective`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredDigraph {
    q: usize,
    p: usize,
    arcs: Vec<ColoredArc>,
    // index into `arcs` for the pair (i, j), stored at i * q + j and j * q + i
    lookup: Vec<u32>,
}

const NO_ARC: u32 = u32::MAX;

impl ColoredDigraph {
    /// Build from 0-based arcs.
    pub fn new(q: usize, p: usize, arcs: impl IntoIterator<Item = ColoredArc>) -> Result<Self> {
        let mut arcs: Vec<ColoredArc> = arcs.into_iter().collect();
        for a in &arcs {
            if a.tail >= q || a.head >= q {
                return Err(Error::IndexOutOfRange {
                    what: "vertex",
                    index: a.tail.max(a.head) + 1,
                    max: q,
                });
            }
            if a.color >= p {
                return Err(Error::IndexOutOfRange {
                    what: "color",
                    index: a.color + 1,
                    max: p,
                });
            }
            if a.tail == a.head {
                return Err(Error::InvalidGraph(format!("loop at v{}", a.tail + 1)));
            }
        }
        arcs.sort_by_key(|a| (a.pair(), a.tail, a.color));
        if let Some(w) = arcs.windows(2).find(|w| w[0].pair() == w[1].pair()) {
            let (a, b) = w[0].pair();
            return Err(Error::InvalidGraph(format!(
                "more than one arc between v{} and v{}",
                a + 1,
                b + 1
            )));
        }
        let mut lookup = vec![NO_ARC; q * q];
        for (idx, a) in arcs.iter().enumerate() {
            lookup[a.tail * q + a.head] = idx as u32;
            lookup[a.head * q + a.tail] = idx as u32;
        }
        Ok(ColoredDigraph { q, p, arcs, lookup })
    }

    /// Build from 1-based `(tail, head, color)` triples.
    pub fn from_one_based(q: usize, p: usize, arcs: &[(usize, usize, usize)]) -> Result<Self> {
        let arcs = arcs
            .iter()
            .map(|&(t, h, c)| {
                if t == 0 || h == 0 || c == 0 {
                    Err(Error::InvalidGraph("indices are 1-based".into()))
                } else {
                    Ok(ColoredArc::new(t - 1, h - 1, c - 1))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(q, p, arcs)
    }

    /// Build from undirected 0-based colored edges; each edge is oriented
    /// from its smaller endpoint to its larger one.
    pub fn from_undirected(q: usize, p: usize, edges: &[(usize, usize, usize)]) -> Result<Self> {
        Self::new(
            q,
            p,
            edges
                .iter()
                .map(|&(a, b, c)| ColoredArc::new(a.min(b), a.max(b), c)),
        )
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn arcs(&self) -> &[ColoredArc] {
        &self.arcs
    }

    pub fn edge_count(&self) -> usize {
        self.arcs.len()
    }

    /// The arc joining `i` and `j`, in whichever direction it runs.
    pub fn arc_between(&self, i: usize, j: usize) -> Option<&ColoredArc> {
        match self.lookup[i * self.q + j] {
            NO_ARC => None,
            idx => Some(&self.arcs[idx as usize]),
        }
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.lookup[i * self.q + j] != NO_ARC
    }

    /// Color of the edge `{i, j}`, if present.
    pub fn color_between(&self, i: usize, j: usize) -> Option<usize> {
        self.arc_between(i, j).map(|a| a.color)
    }

    pub fn degree(&self, v: usize) -> usize {
        (0..self.q).filter(|&w| self.adjacent(v, w)).count()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.q).filter(move |&w| self.adjacent(v, w))
    }

    /// Underlying uncolored undirected graph.
    pub fn underlying(&self) -> Result<SimpleGraph> {
        let edges: Vec<_> = self.arcs.iter().map(|a| a.pair()).collect();
        SimpleGraph::from_edges(self.q, &edges)
    }

    /// Same colored graph with every arc oriented from smaller to larger
    /// endpoint.
    pub fn canonical_orientation(&self) -> ColoredDigraph {
        let arcs = self.arcs.iter().map(|a| {
            let (t, h) = a.pair();
            ColoredArc::new(t, h, a.color)
        });
        // Structure is unchanged, so construction cannot fail.
        Self::new(self.q, self.p, arcs).unwrap_or_else(|_| self.clone())
    }

    /// Undirected colored edges `(min, max, color)`.
    pub fn colored_edges(&self) -> Vec<(usize, usize, usize)> {
        self.arcs
            .iter()
            .map(|a| {
                let (x, y) = a.pair();
                (x, y, a.color)
            })
            .collect()
    }

    /// Number of arcs of each color.
    pub fn color_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.p];
        for a in &self.arcs {
            counts[a.color] += 1;
        }
        counts
    }
}

impl fmt::Display for ColoredDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs: Vec<String> = self
            .arcs
            .iter()
            .map(|a| format!("({},{},{})", a.tail + 1, a.head + 1, a.color + 1))
            .collect();
        write!(f, "q={} p={} {}", self.q, self.p, arcs.join(" "))
    }
}

/// One reason a coloring fails to be uniform. Indices are 0-based; the
/// `Display` form is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Violation {
    /// Two edges of `color` meet at `vertex`.
    NonProper { vertex: usize, color: usize },
    /// `color` occurs `count` times while the majority of colors occur a
    /// different number of times.
    ColorCountMismatch { color: usize, count: usize },
    /// `vertex` has a degree different from the majority degree.
    NotRegular { vertex: usize, degree: usize },
    /// `color` is never used.
    NotSurjective { color: usize },
    /// `vertex` has no incident edges.
    IsolatedVertex { vertex: usize },
    /// The coloring has no colors at all.
    NoColors,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::NonProper { vertex, color } => {
                write!(f, "NonProper: two edges colored z{} meet at v{}", color + 1, vertex + 1)
            }
            Violation::ColorCountMismatch { color, count } => {
                write!(f, "ColorCountMismatch: z{} occurs {} times", color + 1, count)
            }
            Violation::NotRegular { vertex, degree } => {
                write!(f, "NotRegular: v{} has degree {}", vertex + 1, degree)
            }
            Violation::NotSurjective { color } => {
                write!(f, "NotSurjective: z{} is never used", color + 1)
            }
            Violation::IsolatedVertex { vertex } => {
                write!(f, "IsolatedVertex: v{} has no edges", vertex + 1)
            }
            Violation::NoColors => write!(f, "NoColors: the color set is empty"),
        }
    }
}

/// Verdict of a uniformity check together with the parameters `(p, q, r)`
/// and degree `s`. `r` and `s` are only set for uniform inputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformityReport {
    pub is_uniform: bool,
    pub p: usize,
    pub q: usize,
    pub r: Option<usize>,
    pub s: Option<usize>,
    pub violations: Vec<Violation>,
}

impl UniformityReport {
    /// `(p, q, r)` when uniform.
    pub fn pqr(&self) -> Option<(usize, usize, usize)> {
        self.r.map(|r| (self.p, self.q, r))
    }
}

impl fmt::Display for UniformityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.r, self.s) {
            (Some(r), Some(s)) if self.is_uniform => {
                write!(f, "uniform of type ({},{},{}), s={}", self.p, self.q, r, s)
            }
            _ => {
                write!(f, "not uniform (p={}, q={})", self.p, self.q)?;
                for v in &self.violations {
                    write!(f, "\n  {v}")?;
                }
                Ok(())
            }
        }
    }
}

/// Most frequent value; ties go to the smallest.
pub(crate) fn majority(values: impl IntoIterator<Item = usize>) -> Option<usize> {
    let mut freq: BTreeMap<usize, usize> = BTreeMap::new();
    for v in values {
        *freq.entry(v).or_default() += 1;
    }
    let best = freq.values().copied().max()?;
    freq.into_iter().find(|&(_, c)| c == best).map(|(v, _)| v)
}

/// Check whether the coloring of `g` is uniform, collecting every violation.
pub fn validate_uniform(g: &ColoredDigraph) -> UniformityReport {
    let mut violations = Vec::new();
    if g.p == 0 {
        violations.push(Violation::NoColors);
    }

    for v in 0..g.q {
        let mut seen = vec![0usize; g.p];
        for w in g.neighbors(v) {
            if let Some(c) = g.color_between(v, w) {
                seen[c] += 1;
            }
        }
        for (c, &n) in seen.iter().enumerate() {
            if n > 1 {
                violations.push(Violation::NonProper { vertex: v, color: c });
            }
        }
    }

    let degrees: Vec<usize> = (0..g.q).map(|v| g.degree(v)).collect();
    let s = majority(degrees.iter().copied().filter(|&d| d > 0));
    for (v, &d) in degrees.iter().enumerate() {
        if d == 0 {
            violations.push(Violation::IsolatedVertex { vertex: v });
        } else if Some(d) != s {
            violations.push(Violation::NotRegular { vertex: v, degree: d });
        }
    }

    let counts = g.color_counts();
    let r = majority(counts.iter().copied().filter(|&c| c > 0));
    for (c, &n) in counts.iter().enumerate() {
        if n == 0 {
            violations.push(Violation::NotSurjective { color: c });
        } else if Some(n) != r {
            violations.push(Violation::ColorCountMismatch { color: c, count: n });
        }
    }

    let is_uniform = violations.is_empty() && g.q > 0;
    UniformityReport {
        is_uniform,
        p: g.p,
        q: g.q,
        r: if is_uniform { r } else { None },
        s: if is_uniform { s } else { None },
        violations,
    }
}

/// Arcs grouped by color; entry `k` holds the arcs colored `k`.
pub fn color_classes(g: &ColoredDigraph) -> Vec<Vec<ColoredArc>> {
    let mut classes = vec![Vec::new(); g.p];
    for a in &g.arcs {
        classes[a.color].push(*a);
    }
    classes
}

/// True when `arcs` share no endpoint.
pub fn is_matching(arcs: &[ColoredArc]) -> bool {
    let mut used = std::collections::HashSet::new();
    arcs.iter().all(|a| used.insert(a.tail) && used.insert(a.head))
}

/// Skew-adjacency matrix of color class `k`: entry `(i, j)` is `1` for an arc
/// `i -> j` colored `k`, `-1` for an arc `j -> i` colored `k`.
pub fn skew_adjacency(g: &ColoredDigraph, k: usize) -> Result<IntMatrix> {
    if k >= g.p {
        return Err(Error::IndexOutOfRange {
            what: "color",
            index: k + 1,
            max: g.p,
        });
    }
    let mut m = IntMatrix::zeros(g.q, g.q);
    for a in g.arcs.iter().filter(|a| a.color == k) {
        m.set(a.tail, a.head, 1);
        m.set(a.head, a.tail, -1);
    }
    Ok(m)
}

/// A vertex permutation together with a color permutation. Used both for
/// automorphisms of one colored graph and for equivalences between two.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ColorPermAutomorphism {
    pub vertex_perm: Vec<usize>,
    pub color_perm: Vec<usize>,
}

impl ColorPermAutomorphism {
    pub fn identity(q: usize, p: usize) -> Self {
        ColorPermAutomorphism {
            vertex_perm: (0..q).collect(),
            color_perm: (0..p).collect(),
        }
    }

    /// `self` after `other`: `x -> self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        ColorPermAutomorphism {
            vertex_perm: other.vertex_perm.iter().map(|&v| self.vertex_perm[v]).collect(),
            color_perm: other.color_perm.iter().map(|&c| self.color_perm[c]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut vp = vec![0; self.vertex_perm.len()];
        for (i, &v) in self.vertex_perm.iter().enumerate() {
            vp[v] = i;
        }
        let mut cp = vec![0; self.color_perm.len()];
        for (i, &c) in self.color_perm.iter().enumerate() {
            cp[c] = i;
        }
        ColorPermAutomorphism {
            vertex_perm: vp,
            color_perm: cp,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.vertex_perm.iter().enumerate().all(|(i, &v)| i == v)
            && self.color_perm.iter().enumerate().all(|(i, &c)| i == c)
    }

    /// Does this map every colored edge of `from` onto a colored edge of
    /// `to`? With `strict`, arc directions must be preserved too.
    pub fn maps(&self, from: &ColoredDigraph, to: &ColoredDigraph, strict: bool) -> bool {
        if from.q != to.q
            || from.p != to.p
            || from.edge_count() != to.edge_count()
            || !is_permutation(&self.vertex_perm, from.q)
            || !is_permutation(&self.color_perm, from.p)
        {
            return false;
        }
        from.arcs.iter().all(|a| {
            let (t, h) = (self.vertex_perm[a.tail], self.vertex_perm[a.head]);
            match to.arc_between(t, h) {
                Some(b) => b.color == self.color_perm[a.color] && (!strict || b.tail == t),
                None => false,
            }
        })
    }

    pub fn is_automorphism_of(&self, g: &ColoredDigraph, strict: bool) -> bool {
        self.maps(g, g, strict)
    }
}

pub(crate) fn is_permutation(perm: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    perm.len() == n
        && perm.iter().all(|&x| {
            x < n && !std::mem::replace(&mut seen[x], true)
        })
}

/// Guard shared by the exhaustive searches.
pub const MAX_SEARCH_VERTICES: usize = 64;

fn guard(g: &ColoredDigraph) -> Result<()> {
    if g.q > MAX_SEARCH_VERTICES {
        return Err(Error::TooLarge(format!(
            "exhaustive search limited to {MAX_SEARCH_VERTICES} vertices, got {}",
            g.q
        )));
    }
    Ok(())
}

/// All color-permuting automorphisms of `g`, sorted lexicographically by
/// vertex permutation word. With `strict`, arc directions are preserved.
pub fn automorphisms(
    g: &ColoredDigraph,
    strict: bool,
    exec: Exec,
    budget: &Budget,
) -> Result<Vec<ColorPermAutomorphism>> {
    guard(g)?;
    let mut all = search_isomorphisms(g, g, strict, exec, budget, Find::All, |vp, cp| {
        Some(ColorPermAutomorphism {
            vertex_perm: vp.to_vec(),
            color_perm: cp.to_vec(),
        })
    })?;
    all.sort();
    Ok(all)
}

/// A vertex and color bijection carrying `g1`'s colored edges onto `g2`'s,
/// if one exists. With `strict`, arc directions must match as well.
pub fn colorings_equivalent(
    g1: &ColoredDigraph,
    g2: &ColoredDigraph,
    strict: bool,
    budget: &Budget,
) -> Result<Option<ColorPermAutomorphism>> {
    guard(g1)?;
    if g1.q != g2.q || g1.p != g2.p {
        return Ok(None);
    }
    let found = search_isomorphisms(g1, g2, strict, Exec::Sequential, budget, Find::First, |vp, cp| {
        Some(ColorPermAutomorphism {
            vertex_perm: vp.to_vec(),
            color_perm: cp.to_vec(),
        })
    })?;
    Ok(found.into_iter().next())
}

/// How the color sets of two graphs combine in a union.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColorMode {
    /// Colors of the second graph are renumbered after the first's.
    Disjoint,
    /// Colors are identified index by index; requires equal `p`.
    Shared,
}

/// Disjoint union `g1 + g2`; the vertices of `g2` follow those of `g1`.
pub fn disjoint_union(g1: &ColoredDigraph, g2: &ColoredDigraph, mode: ColorMode) -> Result<ColoredDigraph> {
    let (p, color_offset) = match mode {
        ColorMode::Disjoint => (g1.p + g2.p, g1.p),
        ColorMode::Shared => {
            if g1.p != g2.p {
                return Err(Error::ColorCountMismatch { p1: g1.p, p2: g2.p });
            }
            (g1.p, 0)
        }
    };
    let arcs = g1.arcs.iter().copied().chain(
        g2.arcs
            .iter()
            .map(|a| ColoredArc::new(a.tail + g1.q, a.head + g1.q, a.color + color_offset)),
    );
    ColoredDigraph::new(g1.q + g2.q, p, arcs)
}

/// Each edge of `g` gets its own color, in lexicographic edge order; arcs
/// run from smaller to larger endpoint.
pub fn identity_coloring(g: &SimpleGraph) -> Result<ColoredDigraph> {
    let edges: Vec<(usize, usize, usize)> = g
        .edges()
        .into_iter()
        .enumerate()
        .map(|(k, (a, b))| (a, b, k))
        .collect();
    ColoredDigraph::from_undirected(g.order(), edges.len(), &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quaternionic_graph() -> ColoredDigraph {
        ColoredDigraph::from_one_based(
            4,
            3,
            &[(1, 2, 1), (3, 4, 1), (1, 3, 2), (4, 2, 2), (1, 4, 3), (2, 3, 3)],
        )
        .unwrap()
    }

    fn c4_alternating() -> ColoredDigraph {
        ColoredDigraph::from_one_based(4, 2, &[(1, 2, 1), (3, 4, 1), (2, 3, 2), (1, 4, 2)]).unwrap()
    }

    #[test]
    fn quaternionic_is_uniform_342() {
        let rep = validate_uniform(&quaternionic_graph());
        assert!(rep.is_uniform, "{rep}");
        assert_eq!(rep.pqr(), Some((3, 4, 2)));
        assert_eq!(rep.s, Some(3));
        assert_eq!(rep.to_string(), "uniform of type (3,4,2), s=3");
    }

    #[test]
    fn single_arc_is_h3() {
        let g = ColoredDigraph::from_one_based(2, 1, &[(1, 2, 1)]).unwrap();
        let rep = validate_uniform(&g);
        assert_eq!(rep.pqr(), Some((1, 2, 1)));
        assert_eq!(rep.s, Some(1));
    }

    #[test]
    fn monochrome_path_is_not_proper() {
        let g = ColoredDigraph::from_one_based(3, 1, &[(1, 2, 1), (2, 3, 1)]).unwrap();
        let rep = validate_uniform(&g);
        assert!(!rep.is_uniform);
        assert_eq!(rep.r, None);
        assert!(rep.violations.contains(&Violation::NonProper { vertex: 1, color: 0 }));
        assert!(rep.violations.contains(&Violation::NotRegular { vertex: 1, degree: 2 }));
    }

    #[test]
    fn unused_color_and_isolated_vertex_reported() {
        let g = ColoredDigraph::from_one_based(3, 2, &[(1, 2, 1)]).unwrap();
        let rep = validate_uniform(&g);
        assert!(rep.violations.contains(&Violation::NotSurjective { color: 1 }));
        assert!(rep.violations.contains(&Violation::IsolatedVertex { vertex: 2 }));
        assert!(!rep.is_uniform);
    }

    #[test]
    fn structural_errors() {
        assert!(ColoredDigraph::from_one_based(2, 1, &[(1, 1, 1)]).is_err());
        assert!(ColoredDigraph::from_one_based(2, 1, &[(1, 2, 1), (2, 1, 1)]).is_err());
        assert!(ColoredDigraph::from_one_based(2, 1, &[(1, 3, 1)]).is_err());
        assert!(ColoredDigraph::from_one_based(2, 1, &[(1, 2, 2)]).is_err());
    }

    #[test]
    fn color_classes_are_matchings() {
        let classes = color_classes(&quaternionic_graph());
        assert_eq!(classes.len(), 3);
        assert!(classes.iter().all(|c| c.len() == 2 && is_matching(c)));

        let cyc = ColoredDigraph::from_one_based(4, 4, &[(1, 2, 1), (2, 3, 2), (3, 4, 3), (4, 1, 4)]).unwrap();
        assert!(color_classes(&cyc).iter().all(|c| c.len() == 1));
    }

    #[test]
    fn skew_adjacency_of_single_arc() {
        let g = ColoredDigraph::from_one_based(2, 1, &[(1, 2, 1)]).unwrap();
        let m = skew_adjacency(&g, 0).unwrap();
        assert_eq!(m.to_rows(), vec![vec![0, 1], vec![-1, 0]]);
        assert!(skew_adjacency(&g, 1).is_err());
    }

    #[test]
    fn skew_adjacency_rank_is_twice_r() {
        let g = quaternionic_graph();
        for k in 0..3 {
            let m = skew_adjacency(&g, k).unwrap();
            assert!(m.is_antisymmetric());
            assert_eq!(m.rank().unwrap(), 4);
        }
        let m1 = skew_adjacency(&g, 0).unwrap();
        assert_eq!(m1.get(0, 1), 1);
        assert_eq!(m1.get(2, 3), 1);
    }

    #[test]
    fn single_arc_automorphisms() {
        let g = ColoredDigraph::from_one_based(2, 1, &[(1, 2, 1)]).unwrap();
        let b = Budget::default();
        assert_eq!(automorphisms(&g, false, Exec::Sequential, &b).unwrap().len(), 2);
        assert_eq!(automorphisms(&g, true, Exec::Sequential, &b).unwrap().len(), 1);
    }

    #[test]
    fn k4_one_factorization_automorphisms_form_transitive_group() {
        let g = quaternionic_graph();
        let auts = automorphisms(&g, false, Exec::Parallel, &Budget::default()).unwrap();
        // Brute force over all 4! * 3! candidate pairs.
        let mut brute = Vec::new();
        for vp in permutations(4) {
            for cp in permutations(3) {
                let a = ColorPermAutomorphism {
                    vertex_perm: vp.clone(),
                    color_perm: cp,
                };
                if a.is_automorphism_of(&g, false) {
                    brute.push(a);
                }
            }
        }
        brute.sort();
        assert_eq!(auts, brute);
        assert_eq!(auts.len(), 24);
        let images: std::collections::BTreeSet<usize> = auts.iter().map(|a| a.vertex_perm[0]).collect();
        assert_eq!(images.len(), 4);
    }

    #[test]
    fn c4_alternating_has_dihedral_group() {
        let g = c4_alternating();
        let auts = automorphisms(&g, false, Exec::Sequential, &Budget::default()).unwrap();
        let mut brute = 0;
        for vp in permutations(4) {
            for cp in permutations(2) {
                let a = ColorPermAutomorphism {
                    vertex_perm: vp.clone(),
                    color_perm: cp,
                };
                brute += a.is_automorphism_of(&g, false) as usize;
            }
        }
        assert_eq!(brute, 8);
        assert_eq!(auts.len(), 8);
    }

    #[test]
    fn automorphism_list_is_a_group() {
        let g = c4_alternating();
        let auts = automorphisms(&g, false, Exec::Sequential, &Budget::default()).unwrap();
        assert!(auts.iter().any(|a| a.is_identity()));
        for a in &auts {
            assert!(auts.contains(&a.inverse()));
            for b in &auts {
                assert!(auts.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn equivalence_of_k4_relabelings() {
        let g1 = quaternionic_graph();
        let g2 = ColoredDigraph::from_one_based(
            4,
            3,
            &[(1, 3, 2), (2, 4, 2), (1, 2, 3), (3, 4, 3), (1, 4, 1), (2, 3, 1)],
        )
        .unwrap();
        let b = Budget::default();
        let w = colorings_equivalent(&g1, &g2, false, &b).unwrap().expect("equivalent");
        assert!(w.maps(&g1, &g2, false));
        let id = colorings_equivalent(&g1, &g1, false, &b).unwrap().unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn equivalence_rejects_p_mismatch() {
        let one = ColoredDigraph::from_one_based(4, 1, &[(1, 2, 1), (3, 4, 1)]).unwrap();
        let two = ColoredDigraph::from_one_based(4, 2, &[(1, 2, 1), (3, 4, 2)]).unwrap();
        assert_eq!(colorings_equivalent(&one, &two, false, &Budget::default()).unwrap(), None);
    }

    #[test]
    fn union_examples() {
        let k2a = ColoredDigraph::from_one_based(2, 1, &[(1, 2, 1)]).unwrap();
        let h5 = disjoint_union(&k2a, &k2a, ColorMode::Shared).unwrap();
        assert_eq!(validate_uniform(&h5).pqr(), Some((1, 4, 2)));
        let sum = disjoint_union(&k2a, &k2a, ColorMode::Disjoint).unwrap();
        assert_eq!(validate_uniform(&sum).pqr(), Some((2, 4, 1)));
        let mixed = disjoint_union(&c4_alternating(), &k2a, ColorMode::Disjoint).unwrap();
        assert!(!validate_uniform(&mixed).is_uniform);
        assert_eq!(
            disjoint_union(&c4_alternating(), &k2a, ColorMode::Shared),
            Err(Error::ColorCountMismatch { p1: 2, p2: 1 })
        );
    }

    #[test]
    fn identity_coloring_of_regular_graph() {
        let c5 = SimpleGraph::cycle(5).unwrap();
        let g = identity_coloring(&c5).unwrap();
        let rep = validate_uniform(&g);
        assert_eq!(rep.pqr(), Some((5, 5, 1)));
    }

    #[test]
    fn budget_guard_stops_search() {
        let g = quaternionic_graph();
        let tiny = Budget::new(3);
        assert!(matches!(
            automorphisms(&g, false, Exec::Sequential, &tiny),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
        fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == used.len() {
                out.push(cur.clone());
                return;
            }
            for i in 0..used.len() {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    rec(cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }
}
