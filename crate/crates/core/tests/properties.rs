mod common;

use std::sync::OnceLock;

use proptest::prelude::*;

use unilie::families::heisenberg;
use unilie::graph::{disjoint_union, validate_uniform, ColorMode, ColoredArc, ColoredDigraph};
use unilie::io::{self, Document};
use unilie::lie::{check_witness, sign_orbit_canonical, signed_perm_isomorphic, SignVector, StructureTensor};
use unilie::linalg::{IntMatrix, Rat, RatMatrix};
use unilie::par::{Budget, Exec};

use common::{perm_from, relabel, uniform_pool};

fn pool() -> &'static [ColoredDigraph] {
    static POOL: OnceLock<Vec<ColoredDigraph>> = OnceLock::new();
    POOL.get_or_init(uniform_pool)
}

/// Arbitrary colored digraph, not necessarily uniform.
fn any_digraph() -> impl Strategy<Value = ColoredDigraph> {
    (2usize..8, 1usize..6).prop_flat_map(|(q, p)| {
        let pairs = q * (q - 1) / 2;
        proptest::collection::vec((any::<bool>(), any::<bool>(), 0..p), pairs).prop_map(move |cells| {
            let mut arcs = Vec::new();
            let mut e = 0;
            for a in 0..q {
                for b in a + 1..q {
                    let (present, flip, c) = cells[e];
                    e += 1;
                    if present {
                        arcs.push(if flip { ColoredArc::new(b, a, c) } else { ColoredArc::new(a, b, c) });
                    }
                }
            }
            ColoredDigraph::new(q, p, arcs).unwrap()
        })
    })
}

/// A pool member together with a random relabeling of it.
fn relabeled() -> impl Strategy<Value = (ColoredDigraph, ColoredDigraph)> {
    (
        0..pool().len(),
        proptest::collection::vec(any::<usize>(), 16),
        proptest::collection::vec(any::<usize>(), 16),
        any::<u64>(),
    )
        .prop_map(|(i, vc, cc, flips)| {
            let g = pool()[i].clone();
            let h = relabel(&g, &perm_from(g.q(), &vc), &perm_from(g.p(), &cc), flips);
            (g, h)
        })
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-4i64..5, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn graph_text_round_trip(g in any_digraph()) {
        prop_assert_eq!(io::read_graph(&io::write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn dot_round_trip(g in any_digraph()) {
        prop_assert_eq!(io::read_dot(&io::write_dot(&g)).unwrap(), g);
    }

    #[test]
    fn data_round_trip(g in any_digraph()) {
        let text = io::graph_data(&g).to_string();
        match io::read_data(&text).unwrap() {
            Document::Graph(h) => prop_assert_eq!(h, g),
            other => prop_assert!(false, "unexpected document {:?}", other),
        }
    }

    #[test]
    fn algebra_round_trip(g in any_digraph()) {
        let t = StructureTensor::from_graph(&g);
        prop_assert_eq!(&io::read_algebra(&io::write_algebra(&t)).unwrap(), &t);
        match io::read_data(&io::algebra_data(&t).to_string()).unwrap() {
            Document::Algebra(u) => prop_assert_eq!(u, t),
            other => prop_assert!(false, "unexpected document {:?}", other),
        }
    }

    #[test]
    fn integer_rank_and_determinant_agree_with_rationals(rows in small_matrix()) {
        let m = IntMatrix::from_rows(&rows).unwrap();
        let r = RatMatrix::from_int_rows(&rows).unwrap();
        prop_assert_eq!(m.rank().unwrap(), r.rank());
        if m.rows() == m.cols() {
            let d = m.determinant().unwrap();
            prop_assert_eq!(Rat::from_integer(d as i64), r.determinant().unwrap());
        }
    }

    #[test]
    fn sign_orbit_canonical_ignores_diagonal_changes(
        i in 0..pool().len(),
        vs in any::<u64>(),
        cs in any::<u64>(),
        start in any::<u64>(),
    ) {
        let base = StructureTensor::from_graph(&pool()[i]);
        let br = base.brackets();
        let sign = |bits: u64, n: usize| if bits >> (n % 64) & 1 == 1 { -1i8 } else { 1 };
        let s0 = SignVector::from_signs((0..br.len()).map(|e| sign(start, e)));
        let t = base.with_signs(&s0).unwrap();
        let changed = SignVector::from_signs(
            br.iter().enumerate().map(|(e, b)| sign(start, e) * sign(vs, b.i) * sign(vs, b.j) * sign(cs, b.k)),
        );
        let u = base.with_signs(&changed).unwrap();
        prop_assert_eq!(sign_orbit_canonical(&t), sign_orbit_canonical(&u));
    }

    #[test]
    fn relabeled_tensors_are_signed_perm_isomorphic(
        i in 0..pool().len(),
        vc in proptest::collection::vec(any::<usize>(), 16),
        cc in proptest::collection::vec(any::<usize>(), 16),
        vs in any::<u64>(),
        cs in any::<u64>(),
    ) {
        // arbitrary arc reversals can change the sign class, so the signs
        // of the copy come from a diagonal change of basis
        let g = &pool()[i];
        let h = relabel(g, &perm_from(g.q(), &vc), &perm_from(g.p(), &cc), 0);
        let base = StructureTensor::from_graph(&h);
        let sign = |bits: u64, n: usize| if bits >> (n % 64) & 1 == 1 { -1i8 } else { 1 };
        let signs = SignVector::from_signs(base.brackets().iter().map(|b| b.sign * sign(vs, b.i) * sign(vs, b.j) * sign(cs, b.k)));
        let (t1, t2) = (StructureTensor::from_graph(g), base.with_signs(&signs).unwrap());
        let w = signed_perm_isomorphic(&t1, &t2, Exec::Sequential, &Budget::default()).unwrap();
        prop_assert!(w.is_some());
        prop_assert!(check_witness(&t1, &t2, &w.unwrap()).unwrap().ok);
    }

    #[test]
    fn uniformity_is_invariant_under_relabeling((g, h) in relabeled()) {
        let (a, b) = (validate_uniform(&g), validate_uniform(&h));
        prop_assert!(a.is_uniform && b.is_uniform);
        prop_assert_eq!((a.p, a.q, a.r, a.s), (b.p, b.q, b.r, b.s));
    }

    #[test]
    fn single_matching_is_heisenberg(r in 1usize..5, choices in proptest::collection::vec(any::<usize>(), 10), flips in any::<u64>()) {
        let q = 2 * r;
        let vp = perm_from(q, &choices);
        let arcs = (0..r).map(|k| {
            let (a, b) = (vp[2 * k], vp[2 * k + 1]);
            if flips >> k & 1 == 1 { ColoredArc::new(b, a, 0) } else { ColoredArc::new(a, b, 0) }
        });
        let g = ColoredDigraph::new(q, 1, arcs).unwrap();
        prop_assert!(validate_uniform(&g).is_uniform);
        let t = StructureTensor::from_graph(&g);
        let h = StructureTensor::from_graph(&heisenberg(r).unwrap());
        prop_assert!(signed_perm_isomorphic(&t, &h, Exec::Sequential, &Budget::default()).unwrap().is_some());
    }

    #[test]
    fn concatenation_matches_graph_union(i in 0..pool().len(), j in 0..pool().len(), shared in any::<bool>()) {
        let (g1, g2) = (&pool()[i], &pool()[j]);
        let mode = if shared && g1.p() == g2.p() { ColorMode::Shared } else { ColorMode::Disjoint };
        let u = disjoint_union(g1, g2, mode).unwrap();
        let t = StructureTensor::from_graph(g1).concatenate(&StructureTensor::from_graph(g2), mode).unwrap();
        prop_assert_eq!(&t, &StructureTensor::from_graph(&u));
        prop_assert_eq!(&t.to_graph(), &u);
        // degrees must agree; with separate colors so must the matching sizes
        let (a, b) = (validate_uniform(g1), validate_uniform(g2));
        let expect = a.s == b.s && (mode == ColorMode::Shared || a.r == b.r);
        prop_assert_eq!(validate_uniform(&u).is_uniform, expect);
    }
}
