//! Isomorphism witnesses between presentations and the signed-permutation
//! search.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{NVector, StructureTensor};
use crate::error::{Error, Result};
use crate::graph::{is_permutation, search_isomorphisms, ColorPermAutomorphism, Find};
use crate::linalg::{format_rat, gf2_solve, Gf2Vec, Rat, RatMatrix};
use crate::par::{Budget, Exec};

/// A linear map `n1 -> n2` claimed to be a Lie algebra isomorphism.
///
/// For a signed permutation, `v_i -> vertex_signs[i] * v_{vertex_perm[i]}`
/// and `z_k -> color_signs[k] * z_{color_perm[k]}`. A general matrix has the
/// image of the `a`-th basis vector of `v1..vq, z1..zp` as its column `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoWitness {
    SignedPerm {
        vertex_perm: Vec<usize>,
        color_perm: Vec<usize>,
        vertex_signs: Vec<i8>,
        color_signs: Vec<i8>,
    },
    GeneralLinear {
        matrix: RatMatrix,
        block_respecting: bool,
    },
}

impl IsoWitness {
    pub fn identity(q: usize, p: usize) -> IsoWitness {
        IsoWitness::SignedPerm {
            vertex_perm: (0..q).collect(),
            color_perm: (0..p).collect(),
            vertex_signs: vec![1; q],
            color_signs: vec![1; p],
        }
    }

    /// Matrix form; `q` is needed to place the central block.
    pub fn matrix(&self, q: usize) -> RatMatrix {
        match self {
            IsoWitness::GeneralLinear { matrix, .. } => matrix.clone(),
            IsoWitness::SignedPerm {
                vertex_perm,
                color_perm,
                vertex_signs,
                color_signs,
            } => {
                let n = vertex_perm.len() + color_perm.len();
                let mut m = RatMatrix::zeros(n, n);
                for (i, (&t, &s)) in vertex_perm.iter().zip(vertex_signs).enumerate() {
                    m.set(t, i, Rat::from_integer(s as i64));
                }
                for (k, (&t, &s)) in color_perm.iter().zip(color_signs).enumerate() {
                    m.set(q + t, q + k, Rat::from_integer(s as i64));
                }
                m
            }
        }
    }

    /// `self` applied after `first`, as a general matrix.
    pub fn after(&self, first: &IsoWitness, q: usize) -> Result<IsoWitness> {
        let m = self.matrix(q).mul(&first.matrix(q))?;
        let block_respecting = is_block_respecting(&m, q);
        Ok(IsoWitness::GeneralLinear {
            matrix: m,
            block_respecting,
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            IsoWitness::SignedPerm { .. } => "signed-perm",
            IsoWitness::GeneralLinear { .. } => "general-linear",
        }
    }

    /// Human description: `v1 -> -v2, ..., z1 -> z1 + z2, ...`.
    pub fn describe(&self, q: usize) -> Vec<String> {
        let m = self.matrix(q);
        let name = |a: usize| {
            if a < q {
                format!("v{}", a + 1)
            } else {
                format!("z{}", a - q + 1)
            }
        };
        (0..m.cols())
            .map(|c| {
                let mut terms = String::new();
                for r in 0..m.rows() {
                    let x = m.get(r, c);
                    if x.is_zero() {
                        continue;
                    }
                    let neg = x < Rat::zero();
                    let mag = if neg { -x } else { x };
                    let coef = if mag.is_one() { String::new() } else { format!("{}*", format_rat(&mag)) };
                    if terms.is_empty() {
                        terms.push_str(if neg { "-" } else { "" });
                    } else {
                        terms.push_str(if neg { " - " } else { " + " });
                    }
                    terms.push_str(&coef);
                    terms.push_str(&name(r));
                }
                if terms.is_empty() {
                    terms.push('0');
                }
                format!("{} -> {}", name(c), terms)
            })
            .collect()
    }
}

fn is_block_respecting(m: &RatMatrix, q: usize) -> bool {
    m.nonzero_positions().iter().all(|&(r, c)| (r < q) == (c < q))
}

/// Result of [`check_witness`]; `failure` names the first basis pair whose
/// bracket is not intertwined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCheck {
    pub ok: bool,
    pub failure: Option<String>,
}

impl WitnessCheck {
    fn pass() -> Self {
        WitnessCheck { ok: true, failure: None }
    }

    fn fail(msg: String) -> Self {
        WitnessCheck {
            ok: false,
            failure: Some(msg),
        }
    }
}

/// Does `w` satisfy `w([x, y]_1) = [w x, w y]_2` on all basis pairs?
/// Exact rational arithmetic throughout.
pub fn check_witness(t1: &StructureTensor, t2: &StructureTensor, w: &IsoWitness) -> Result<WitnessCheck> {
    if t1.q() != t2.q() || t1.p() != t2.p() {
        return Err(Error::DimensionMismatch(format!(
            "witness between q={} p={} and q={} p={}",
            t1.q(),
            t1.p(),
            t2.q(),
            t2.p()
        )));
    }
    let (q, p) = (t1.q(), t1.p());
    let n = q + p;
    if let IsoWitness::SignedPerm {
        vertex_perm,
        color_perm,
        vertex_signs,
        color_signs,
    } = w
    {
        if !is_permutation(vertex_perm, q)
            || !is_permutation(color_perm, p)
            || vertex_signs.len() != q
            || color_signs.len() != p
            || vertex_signs.iter().chain(color_signs).any(|s| *s != 1 && *s != -1)
        {
            return Err(Error::InvalidParameter("malformed signed permutation".into()));
        }
    }
    let m = w.matrix(q);
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "witness matrix is {}x{}, expected {n}x{n}",
            m.rows(),
            m.cols()
        )));
    }
    if !m.is_invertible() {
        return Err(Error::Singular);
    }
    if let IsoWitness::GeneralLinear {
        block_respecting: true,
        ..
    } = w
    {
        if !is_block_respecting(&m, q) {
            return Ok(WitnessCheck::fail("matrix is flagged block-respecting but mixes v and z".into()));
        }
    }
    let image: Vec<NVector> = (0..n).map(|a| NVector::from_coords(q, &m.column(a))).collect();
    for a in 0..n {
        for b in a + 1..n {
            let lhs_src = t1.bracket(&NVector::basis(q, p, a), &NVector::basis(q, p, b))?;
            let lhs = NVector::from_coords(q, &m.mul_vec(&lhs_src.coords())?);
            let rhs = t2.bracket(&image[a], &image[b])?;
            if lhs != rhs {
                let name = |x: usize| {
                    if x < q {
                        format!("v{}", x + 1)
                    } else {
                        format!("z{}", x - q + 1)
                    }
                };
                return Ok(WitnessCheck::fail(format!(
                    "bracket of {} and {} is not preserved",
                    name(a),
                    name(b)
                )));
            }
        }
    }
    Ok(WitnessCheck::pass())
}

/// Signs making `(vertex_perm, color_perm)` an isomorphism `t1 -> t2`, given
/// that it already maps supports onto each other. Free sign choices are `+`.
fn solve_signs(
    t1: &StructureTensor,
    t2: &StructureTensor,
    vertex_perm: &[usize],
    color_perm: &[usize],
) -> Option<(Vec<i8>, Vec<i8>)> {
    let q = t1.q();
    let vars = q + t1.p();
    let mut eqs = Vec::new();
    for b in t1.brackets() {
        let (k2, s2) = t2.bracket_basis(vertex_perm[b.i], vertex_perm[b.j])?;
        if k2 != color_perm[b.k] {
            return None;
        }
        let mut row = Gf2Vec::zeros(vars);
        row.set(b.i, true);
        row.set(b.j, true);
        row.set(q + b.k, true);
        eqs.push((row, (b.sign < 0) ^ (s2 < 0)));
    }
    let x = gf2_solve(vars, &eqs)?;
    let sign = |a: usize| if x.get(a) { -1 } else { 1 };
    Some(((0..q).map(sign).collect(), (q..vars).map(sign).collect()))
}

/// Lift a direction-preserving color-permuting automorphism of
/// `t.to_graph()` to the basis permutation it induces.
pub fn lift_automorphism(t: &StructureTensor, a: &ColorPermAutomorphism) -> Result<IsoWitness> {
    check_shape(t, a)?;
    for b in t.brackets() {
        let (i2, j2, k2) = (a.vertex_perm[b.i], a.vertex_perm[b.j], a.color_perm[b.k]);
        if t.bracket_basis(i2, j2) != Some((k2, b.sign)) {
            return Err(Error::NotAutomorphism(format!(
                "[v{}, v{}] = {}z{} is sent to [v{}, v{}], which is not {}z{}",
                b.i + 1,
                b.j + 1,
                if b.sign > 0 { "+" } else { "-" },
                b.k + 1,
                i2 + 1,
                j2 + 1,
                if b.sign > 0 { "+" } else { "-" },
                k2 + 1
            )));
        }
    }
    Ok(IsoWitness::SignedPerm {
        vertex_perm: a.vertex_perm.clone(),
        color_perm: a.color_perm.clone(),
        vertex_signs: vec![1; t.q()],
        color_signs: vec![1; t.p()],
    })
}

/// Lift an automorphism of the undirected colored support, compensating
/// reversed arcs with basis sign changes when possible.
pub fn lift_automorphism_signed(t: &StructureTensor, a: &ColorPermAutomorphism) -> Result<IsoWitness> {
    check_shape(t, a)?;
    if !a.is_automorphism_of(&t.support(), false) {
        return Err(Error::NotAutomorphism(
            "the permutation does not preserve the colored support".into(),
        ));
    }
    let (vertex_signs, color_signs) = solve_signs(t, t, &a.vertex_perm, &a.color_perm).ok_or_else(|| {
        Error::NotAutomorphism("no choice of basis signs makes the permutation preserve brackets".into())
    })?;
    Ok(IsoWitness::SignedPerm {
        vertex_perm: a.vertex_perm.clone(),
        color_perm: a.color_perm.clone(),
        vertex_signs,
        color_signs,
    })
}

fn check_shape(t: &StructureTensor, a: &ColorPermAutomorphism) -> Result<()> {
    if !is_permutation(&a.vertex_perm, t.q()) || !is_permutation(&a.color_perm, t.p()) {
        return Err(Error::InvalidParameter(format!(
            "expected permutations of {} generators and {} central vectors",
            t.q(),
            t.p()
        )));
    }
    Ok(())
}

/// Search for a signed permutation isomorphism `t1 -> t2`. `None` only means
/// no witness of this form exists; it says nothing about general linear
/// isomorphisms.
pub fn signed_perm_isomorphic(
    t1: &StructureTensor,
    t2: &StructureTensor,
    exec: Exec,
    budget: &Budget,
) -> Result<Option<IsoWitness>> {
    if t1.q() != t2.q() || t1.p() != t2.p() || t1.brackets().len() != t2.brackets().len() {
        return Ok(None);
    }
    // Signed permutations preserve the orthonormal basis, hence J-map identities.
    if t1.anticommutator_identity()? != t2.anticommutator_identity()? {
        return Ok(None);
    }
    let s1 = t1.support();
    let s2 = t2.support();
    let found = search_isomorphisms(&s1, &s2, false, exec, budget, Find::First, |vp, cp| {
        let (vertex_signs, color_signs) = solve_signs(t1, t2, vp, cp)?;
        Some(IsoWitness::SignedPerm {
            vertex_perm: vp.to_vec(),
            color_perm: cp.to_vec(),
            vertex_signs,
            color_signs,
        })
    })?;
    match found.into_iter().next() {
        Some(w) => {
            let check = check_witness(t1, t2, &w)?;
            debug_assert!(check.ok, "{:?}", check.failure);
            Ok(check.ok.then_some(w))
        }
        None => Ok(None),
    }
}
