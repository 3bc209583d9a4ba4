//! Sign vectors of a fixed support and the action of diagonal basis changes.
//!
//! Negating `v_i` flips the sign of every bracket at `v_i`; negating `z_k`
//! flips every bracket landing on `z_k`. Over GF(2) that is `x -> x + M d`,
//! so orbits are cosets of the column space of `M`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::StructureTensor;
use crate::error::{Error, Result};
use crate::graph::ColoredDigraph;
use crate::linalg::{Gf2Basis, Gf2Vec};

/// One sign per nonzero bracket, in lexicographic pair order. A set bit
/// means `-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignVector {
    bits: Vec<bool>,
}

impl SignVector {
    pub fn all_plus(len: usize) -> Self {
        SignVector { bits: vec![false; len] }
    }

    pub fn from_signs(signs: impl IntoIterator<Item = i8>) -> Self {
        SignVector {
            bits: signs.into_iter().map(|s| s < 0).collect(),
        }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        SignVector { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn sign(&self, e: usize) -> i8 {
        if self.bits[e] {
            -1
        } else {
            1
        }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn negative_count(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    fn to_gf2(&self) -> Gf2Vec {
        Gf2Vec::from_bits(&self.bits)
    }
}

impl PartialOrd for SignVector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic with `+` before `-`.
impl Ord for SignVector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.bits.cmp(&other.bits)
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "-" } else { "+" })?;
        }
        Ok(())
    }
}

/// Row-reduced span of the diagonal action on sign vectors of `support`.
/// Edges are taken in lexicographic pair order.
pub fn sign_action_basis(support: &ColoredDigraph) -> Gf2Basis {
    let edges = support.colored_edges();
    let m = edges.len();
    let vertex_gens = (0..support.q()).map(|v| {
        let bits: Vec<bool> = edges.iter().map(|&(a, b, _)| a == v || b == v).collect();
        Gf2Vec::from_bits(&bits)
    });
    let color_gens = (0..support.p()).map(|k| {
        let bits: Vec<bool> = edges.iter().map(|&(_, _, c)| c == k).collect();
        Gf2Vec::from_bits(&bits)
    });
    Gf2Basis::span(m, vertex_gens.chain(color_gens))
}

/// Least sign vector in the orbit of `t`'s signs under diagonal basis
/// changes. Two tensors with the same support are related by a diagonal
/// change of basis exactly when these agree.
pub fn sign_orbit_canonical(t: &StructureTensor) -> SignVector {
    let basis = sign_action_basis(&t.support());
    let reduced = basis.reduce(t.signs().to_gf2());
    SignVector::from_bits(reduced.to_bits())
}

/// Largest number of orbits [`sign_class_representatives`] will list.
pub const MAX_ORBITS_LOG2: usize = 20;

/// One canonical sign vector per diagonal orbit on the sign vectors of
/// `support`, sorted. These are the vectors vanishing on every pivot
/// position of the action basis.
pub fn sign_class_representatives(support: &ColoredDigraph) -> Result<Vec<SignVector>> {
    let basis = sign_action_basis(support);
    let m = basis.ambient();
    let pivots = basis.pivots();
    let free: Vec<usize> = (0..m).filter(|e| pivots.binary_search(e).is_err()).collect();
    if free.len() > MAX_ORBITS_LOG2 {
        return Err(Error::TooLarge(format!(
            "2^{} sign orbits exceeds the listing limit of 2^{MAX_ORBITS_LOG2}",
            free.len()
        )));
    }
    let mut out: Vec<SignVector> = (0u64..1 << free.len())
        .map(|mask| {
            let mut bits = vec![false; m];
            for (b, &e) in free.iter().enumerate() {
                bits[e] = mask >> b & 1 == 1;
            }
            SignVector::from_bits(bits)
        })
        .collect();
    out.sort();
    Ok(out)
}
