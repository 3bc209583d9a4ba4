//! Two-step nilpotent Lie algebras given by structure constants in
//! `{-1, 0, 1}` relative to a basis `v1..vq, z1..zp`.

mod signs;
mod structure;
mod witness;

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{self, ColorMode, ColoredArc, ColoredDigraph, UniformityReport, Violation};
use crate::linalg::Rat;

pub use signs::{sign_class_representatives, sign_orbit_canonical, sign_action_basis, SignVector};
pub use structure::{Subspace, TotallyGeodesic};
pub use witness::{
    check_witness, lift_automorphism, lift_automorphism_signed, signed_perm_isomorphic, IsoWitness,
    WitnessCheck,
};

/// Structure constants `alpha_{ij}^k`. For each generator pair at most one
/// `k` is nonzero, so the tensor is stored as a dense pair table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StructureTensor {
    q: usize,
    p: usize,
    // entry i * q + j: Some((k, sign)) when [v_i, v_j] = sign * z_k
    table: Vec<Option<(usize, i8)>>,
}

/// One nonzero structure constant with `i < j`, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bracket {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub sign: i8,
}

impl StructureTensor {
    /// Build from 0-based `(i, j, k, sign)` entries. Entries with `i > j` are
    /// stored as their antisymmetric partner.
    pub fn new(q: usize, p: usize, entries: impl IntoIterator<Item = (usize, usize, usize, i8)>) -> Result<Self> {
        let mut table = vec![None; q * q];
        for (i, j, k, sign) in entries {
            if i >= q || j >= q {
                return Err(Error::IndexOutOfRange {
                    what: "generator",
                    index: i.max(j) + 1,
                    max: q,
                });
            }
            if k >= p {
                return Err(Error::IndexOutOfRange {
                    what: "center",
                    index: k + 1,
                    max: p,
                });
            }
            if i == j {
                return Err(Error::InvalidTensor(format!("[v{0}, v{0}] must vanish", i + 1)));
            }
            if sign != 1 && sign != -1 {
                return Err(Error::InvalidTensor(format!("sign {sign} is not +1 or -1")));
            }
            if table[i * q + j].is_some() {
                return Err(Error::InvalidTensor(format!(
                    "[v{}, v{}] assigned twice",
                    i.min(j) + 1,
                    i.max(j) + 1
                )));
            }
            table[i * q + j] = Some((k, sign));
            table[j * q + i] = Some((k, -sign));
        }
        Ok(StructureTensor { q, p, table })
    }

    /// Build from 1-based `(i, j, k, sign)` entries.
    pub fn from_one_based(q: usize, p: usize, entries: &[(usize, usize, usize, i8)]) -> Result<Self> {
        let entries = entries
            .iter()
            .map(|&(i, j, k, s)| {
                if i == 0 || j == 0 || k == 0 {
                    Err(Error::InvalidTensor("indices are 1-based".into()))
                } else {
                    Ok((i - 1, j - 1, k - 1, s))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(q, p, entries)
    }

    /// `alpha_{ij}^k = +1` for each arc `i -> j` colored `k`.
    pub fn from_graph(g: &ColoredDigraph) -> StructureTensor {
        let entries = g.arcs().iter().map(|a| (a.tail, a.head, a.color, 1i8));
        // A valid graph has no loops and one arc per pair, so this cannot fail.
        Self::new(g.q(), g.p(), entries).expect("valid graph gives a valid tensor")
    }

    /// Arc `i -> j` colored `k` for each `alpha_{ij}^k = +1`.
    pub fn to_graph(&self) -> ColoredDigraph {
        let arcs = self.brackets().into_iter().map(|b| {
            if b.sign > 0 {
                ColoredArc::new(b.i, b.j, b.k)
            } else {
                ColoredArc::new(b.j, b.i, b.k)
            }
        });
        ColoredDigraph::new(self.q, self.p, arcs).expect("valid tensor gives a valid graph")
    }

    /// Underlying colored graph with arcs oriented from smaller to larger
    /// index; all sign information is dropped.
    pub fn support(&self) -> ColoredDigraph {
        self.to_graph().canonical_orientation()
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// Total dimension `p + q`.
    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    /// `[v_i, v_j]` as `(k, sign)`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Option<(usize, i8)> {
        self.table[i * self.q + j]
    }

    pub fn alpha(&self, i: usize, j: usize, k: usize) -> i64 {
        match self.bracket_basis(i, j) {
            Some((c, s)) if c == k => s as i64,
            _ => 0,
        }
    }

    /// Nonzero constants with `i < j`, in lexicographic pair order.
    pub fn brackets(&self) -> Vec<Bracket> {
        let mut out = Vec::new();
        for i in 0..self.q {
            for j in i + 1..self.q {
                if let Some((k, sign)) = self.bracket_basis(i, j) {
                    out.push(Bracket { i, j, k, sign });
                }
            }
        }
        out
    }

    /// Signs of the nonzero brackets in canonical pair order.
    pub fn signs(&self) -> SignVector {
        SignVector::from_signs(self.brackets().iter().map(|b| b.sign))
    }

    /// Same support with the given signs, in canonical pair order.
    pub fn with_signs(&self, signs: &SignVector) -> Result<StructureTensor> {
        let br = self.brackets();
        if signs.len() != br.len() {
            return Err(Error::DimensionMismatch(format!(
                "sign vector of length {} for {} brackets",
                signs.len(),
                br.len()
            )));
        }
        Self::new(
            self.q,
            self.p,
            br.iter()
                .enumerate()
                .map(|(e, b)| (b.i, b.j, b.k, signs.sign(e))),
        )
    }

    /// Check the uniform-basis conditions directly on the constants.
    pub fn verify_uniform_basis(&self) -> UniformityReport {
        let mut violations = Vec::new();
        if self.p == 0 {
            violations.push(Violation::NoColors);
        }
        let mut degrees = vec![0usize; self.q];
        for i in 0..self.q {
            let mut hits = vec![0usize; self.p];
            for j in 0..self.q {
                if let Some((k, _)) = self.bracket_basis(i, j) {
                    hits[k] += 1;
                    degrees[i] += 1;
                }
            }
            for (k, &h) in hits.iter().enumerate() {
                if h > 1 {
                    violations.push(Violation::NonProper { vertex: i, color: k });
                }
            }
        }
        let s = graph::majority(degrees.iter().copied().filter(|&d| d > 0));
        for (i, &d) in degrees.iter().enumerate() {
            if d == 0 {
                violations.push(Violation::IsolatedVertex { vertex: i });
            } else if Some(d) != s {
                violations.push(Violation::NotRegular { vertex: i, degree: d });
            }
        }
        let mut counts = vec![0usize; self.p];
        for b in self.brackets() {
            counts[b.k] += 1;
        }
        let r = graph::majority(counts.iter().copied().filter(|&c| c > 0));
        for (k, &c) in counts.iter().enumerate() {
            if c == 0 {
                violations.push(Violation::NotSurjective { color: k });
            } else if Some(c) != r {
                violations.push(Violation::ColorCountMismatch { color: k, count: c });
            }
        }
        let is_uniform = violations.is_empty() && self.q > 0;
        UniformityReport {
            is_uniform,
            p: self.p,
            q: self.q,
            r: if is_uniform { r } else { None },
            s: if is_uniform { s } else { None },
            violations,
        }
    }

    pub fn is_uniform(&self) -> bool {
        self.verify_uniform_basis().is_uniform
    }

    pub(crate) fn require_uniform(&self) -> Result<UniformityReport> {
        let rep = self.verify_uniform_basis();
        if rep.is_uniform {
            Ok(rep)
        } else {
            Err(Error::NotUniform(rep.to_string()))
        }
    }

    /// Lie bracket of two arbitrary elements.
    pub fn bracket(&self, x: &NVector, y: &NVector) -> Result<NVector> {
        self.check_dims(x)?;
        self.check_dims(y)?;
        let mut out = NVector::zero(self.q, self.p);
        for b in self.brackets() {
            let c = x.v[b.i] * y.v[b.j] - x.v[b.j] * y.v[b.i];
            if !c.is_zero() {
                out.z[b.k] += c * Rat::from_integer(b.sign as i64);
            }
        }
        Ok(out)
    }

    fn check_dims(&self, x: &NVector) -> Result<()> {
        if x.v.len() != self.q || x.z.len() != self.p {
            return Err(Error::DimensionMismatch(format!(
                "vector of shape ({}, {}) in an algebra with q={} p={}",
                x.v.len(),
                x.z.len(),
                self.q,
                self.p
            )));
        }
        Ok(())
    }

    /// Concatenation of two algebras: direct sum in disjoint mode, direct sum
    /// modulo identified center vectors in shared mode.
    pub fn concatenate(&self, other: &StructureTensor, mode: ColorMode) -> Result<StructureTensor> {
        let g = graph::disjoint_union(&self.to_graph(), &other.to_graph(), mode)?;
        Ok(StructureTensor::from_graph(&g))
    }

    /// Bracket table lines `[v_i, v_j] = +z_k`.
    pub fn bracket_table(&self) -> Vec<String> {
        self.brackets()
            .iter()
            .map(|b| {
                format!(
                    "[v{}, v{}] = {}z{}",
                    b.i + 1,
                    b.j + 1,
                    if b.sign > 0 { "+" } else { "-" },
                    b.k + 1
                )
            })
            .collect()
    }
}

impl fmt::Display for StructureTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bracket_table().join(", "))
    }
}

/// Element of `v + z` with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NVector {
    pub v: Vec<Rat>,
    pub z: Vec<Rat>,
}

impl NVector {
    pub fn zero(q: usize, p: usize) -> Self {
        NVector {
            v: vec![Rat::zero(); q],
            z: vec![Rat::zero(); p],
        }
    }

    pub fn from_ints(v: &[i64], z: &[i64]) -> Self {
        NVector {
            v: v.iter().map(|&x| Rat::from_integer(x)).collect(),
            z: z.iter().map(|&x| Rat::from_integer(x)).collect(),
        }
    }

    /// Generator `v_i`, 0-based.
    pub fn generator(q: usize, p: usize, i: usize) -> Self {
        let mut x = Self::zero(q, p);
        x.v[i] = Rat::from_integer(1);
        x
    }

    /// Central basis vector `z_k`, 0-based.
    pub fn central(q: usize, p: usize, k: usize) -> Self {
        let mut x = Self::zero(q, p);
        x.z[k] = Rat::from_integer(1);
        x
    }

    /// Basis vector `e_a` of the combined basis `v1..vq, z1..zp`.
    pub fn basis(q: usize, p: usize, a: usize) -> Self {
        if a < q {
            Self::generator(q, p, a)
        } else {
            Self::central(q, p, a - q)
        }
    }

    pub fn coords(&self) -> Vec<Rat> {
        self.v.iter().chain(&self.z).copied().collect()
    }

    pub fn from_coords(q: usize, coords: &[Rat]) -> Self {
        NVector {
            v: coords[..q].to_vec(),
            z: coords[q..].to_vec(),
        }
    }

    pub fn add(&self, other: &NVector) -> NVector {
        NVector {
            v: self.v.iter().zip(&other.v).map(|(a, b)| a + b).collect(),
            z: self.z.iter().zip(&other.z).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: Rat) -> NVector {
        NVector {
            v: self.v.iter().map(|a| a * c).collect(),
            z: self.z.iter().map(|a| a * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.v.iter().chain(&self.z).all(|a| a.is_zero())
    }
}
