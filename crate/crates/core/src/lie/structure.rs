//! Linear-algebra data of a structure tensor: center, centralizers, ad-ranks,
//! J-maps and related invariants.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::StructureTensor;
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, Rat, RatMatrix};

/// Subspace of `n` given by an integer basis in the coordinates
/// `v1..vq, z1..zp`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subspace {
    pub ambient: usize,
    pub basis: Vec<Vec<i64>>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The span of the given coordinate vectors.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Subspace {
        let basis = indices
            .into_iter()
            .map(|a| {
                let mut e = vec![0; ambient];
                e[a] = 1;
                e
            })
            .collect();
        Subspace { ambient, basis }
    }

    pub fn contains(&self, x: &[i64]) -> Result<bool> {
        let mut rows = self.basis.clone();
        let before = if rows.is_empty() {
            0
        } else {
            IntMatrix::from_rows(&rows)?.rank()?
        };
        rows.push(x.to_vec());
        Ok(IntMatrix::from_rows(&rows)?.rank()? == before)
    }

    /// Same subspace, possibly given by a different basis.
    pub fn same_as(&self, other: &Subspace) -> Result<bool> {
        if self.dim() != other.dim() || self.ambient != other.ambient {
            return Ok(false);
        }
        for b in &other.basis {
            if !self.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Outcome of the combinatorial subalgebra tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotallyGeodesic {
    pub is_subalgebra: bool,
    pub is_tg: bool,
}

impl StructureTensor {
    /// Matrix of `y -> [v_i, y]` from `n` (dimension q+p) to `z`.
    fn ad_matrix(&self, i: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.p, self.dim());
        for j in 0..self.q {
            if let Some((k, s)) = self.bracket_basis(i, j) {
                m.set(k, j, s as i64);
            }
        }
        m
    }

    fn check_generator(&self, i: usize) -> Result<()> {
        if i >= self.q {
            return Err(Error::IndexOutOfRange {
                what: "generator",
                index: i + 1,
                max: self.q,
            });
        }
        Ok(())
    }

    /// Center, computed as the common kernel of `x -> [x, v_j]` over all
    /// generators `v_j`.
    pub fn center(&self) -> Result<Subspace> {
        let n = self.dim();
        // Row (j, k): coefficient of z_k in [x, v_j].
        let mut m = IntMatrix::zeros(self.q * self.p, n);
        for j in 0..self.q {
            for i in 0..self.q {
                if let Some((k, s)) = self.bracket_basis(i, j) {
                    m.set(j * self.p + k, i, s as i64);
                }
            }
        }
        Ok(Subspace {
            ambient: n,
            basis: m.kernel()?,
        })
    }

    /// Derived algebra `[n, n]`.
    pub fn commutator(&self) -> Subspace {
        let mut ks: Vec<usize> = self.brackets().iter().map(|b| b.k).collect();
        ks.sort_unstable();
        ks.dedup();
        Subspace::coordinate(self.dim(), ks.into_iter().map(|k| self.q + k))
    }

    /// Centralizer of the generator `v_i`.
    pub fn centralizer(&self, i: usize) -> Result<Subspace> {
        self.check_generator(i)?;
        Ok(Subspace {
            ambient: self.dim(),
            basis: self.ad_matrix(i).kernel()?,
        })
    }

    /// Rank of `ad_{v_i}`.
    pub fn ad_rank(&self, i: usize) -> Result<usize> {
        self.check_generator(i)?;
        self.ad_matrix(i).rank()
    }

    /// `J_{z_k}` as a `q x q` integer matrix acting on coordinate columns:
    /// entry `(j, i)` is the coefficient of `v_j` in `J(v_i)`.
    pub fn j_basis(&self, k: usize) -> Result<IntMatrix> {
        if k >= self.p {
            return Err(Error::IndexOutOfRange {
                what: "center",
                index: k + 1,
                max: self.p,
            });
        }
        let mut m = IntMatrix::zeros(self.q, self.q);
        for b in self.brackets().iter().filter(|b| b.k == k) {
            m.set(b.j, b.i, b.sign as i64);
            m.set(b.i, b.j, -(b.sign as i64));
        }
        Ok(m)
    }

    /// `J_z` for `z = sum z_k b_k`.
    pub fn j_map(&self, z: &[Rat]) -> Result<RatMatrix> {
        if z.len() != self.p {
            return Err(Error::DimensionMismatch(format!(
                "central vector of length {} for p={}",
                z.len(),
                self.p
            )));
        }
        let mut m = RatMatrix::zeros(self.q, self.q);
        for b in self.brackets() {
            let c = z[b.k] * Rat::from_integer(b.sign as i64);
            if !c.is_zero() {
                m.set(b.j, b.i, m.get(b.j, b.i) + c);
                m.set(b.i, b.j, m.get(b.i, b.j) - c);
            }
        }
        Ok(m)
    }

    /// Frobenius products `trace(J_k J_l^T)`.
    pub fn j_gram(&self) -> Result<IntMatrix> {
        self.require_uniform()?;
        let js = self.j_all()?;
        let mut g = IntMatrix::zeros(self.p, self.p);
        for k in 0..self.p {
            for l in 0..self.p {
                g.set(k, l, js[k].frobenius(&js[l]));
            }
        }
        Ok(g)
    }

    fn j_all(&self) -> Result<Vec<IntMatrix>> {
        (0..self.p).map(|k| self.j_basis(k)).collect()
    }

    /// Whether `J_k J_l + J_l J_k = -2 delta_{kl} I` for all basis pairs.
    pub fn is_heisenberg_type(&self) -> Result<bool> {
        self.require_uniform()?;
        Ok(self.anticommutator_identity()?)
    }

    pub(crate) fn anticommutator_identity(&self) -> Result<bool> {
        let js = self.j_all()?;
        let minus_two = IntMatrix::identity(self.q).scale(-2);
        for k in 0..self.p {
            for l in k..self.p {
                let ac = js[k].mul(&js[l])?.add(&js[l].mul(&js[k])?)?;
                let ok = if k == l { ac == minus_two } else { ac.is_zero() };
                if !ok {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether `J_z` is invertible for every nonzero `z`, equivalently every
    /// `ad_x` with `x` outside the center maps onto `z`. `None` when the
    /// exact test is not implemented for this shape.
    pub fn nonsingular(&self) -> Result<Option<bool>> {
        let q = self.q;
        if self.p == 0 || q % 2 == 1 {
            return Ok(Some(false));
        }
        if self.p == 1 {
            return Ok(Some(self.j_basis(0)?.determinant()? != 0));
        }
        // Pf(J_z) is homogeneous of odd degree q/2, so it has a nonzero root.
        if (q / 2) % 2 == 1 {
            return Ok(Some(false));
        }
        if q == 4 {
            return Ok(Some(self.pfaffian_form_definite()?));
        }
        Ok(None)
    }

    /// For `q = 4`: is the quadratic form `Pf(J_z)` definite?
    fn pfaffian_form_definite(&self) -> Result<bool> {
        let js = self.j_all()?;
        let a = |k: usize, i: usize, j: usize| Rat::from_integer(js[k].get(i, j));
        // Pf(A) = a01 a23 - a02 a13 + a03 a12, bilinear in two copies of z.
        let pf = |k: usize, l: usize| {
            a(k, 0, 1) * a(l, 2, 3) - a(k, 0, 2) * a(l, 1, 3) + a(k, 0, 3) * a(l, 1, 2)
        };
        let p = self.p;
        let half = Rat::new(1, 2);
        let mut s = RatMatrix::zeros(p, p);
        for k in 0..p {
            for l in 0..p {
                s.set(k, l, (pf(k, l) + pf(l, k)) * half);
            }
        }
        let mut pos = true;
        let mut neg = true;
        for m in 1..=p {
            let d = s.leading(m).determinant()?;
            pos &= d.is_positive();
            let want_neg = m % 2 == 1;
            neg &= if want_neg { d.is_negative() } else { d.is_positive() };
        }
        Ok(pos || neg)
    }

    /// Dimension of the derivation algebra, an invariant of the isomorphism
    /// class that does not depend on the basis.
    pub fn derivation_dimension(&self) -> Result<usize> {
        let n = self.dim();
        let q = self.q;
        // brackets of combined basis vectors as (index in n, sign)
        let br = |a: usize, b: usize| -> Option<(usize, i64)> {
            if a < q && b < q {
                self.bracket_basis(a, b).map(|(k, s)| (q + k, s as i64))
            } else {
                None
            }
        };
        let var = |row: usize, col: usize| row * n + col;
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for out in 0..n {
                    let mut row = vec![0i64; n * n];
                    if let Some((c, s)) = br(a, b) {
                        row[var(out, c)] += s;
                    }
                    for r in 0..n {
                        if let Some((c, s)) = br(r, b) {
                            if c == out {
                                row[var(r, a)] -= s;
                            }
                        }
                        if let Some((c, s)) = br(a, r) {
                            if c == out {
                                row[var(r, b)] -= s;
                            }
                        }
                    }
                    if row.iter().any(|&x| x != 0) {
                        rows.push(row);
                    }
                }
            }
        }
        rows.sort();
        rows.dedup();
        if rows.is_empty() {
            return Ok(n * n);
        }
        Ok(n * n - IntMatrix::from_rows(&rows)?.rank()?)
    }

    /// Combinatorial subalgebra and totally geodesic tests for the span of
    /// generators `vs` and central vectors `ss`.
    pub fn totally_geodesic(&self, vs: &[usize], ss: &[usize]) -> Result<TotallyGeodesic> {
        if vs.is_empty() && ss.is_empty() {
            return Err(Error::InvalidParameter("empty subspace".into()));
        }
        let mut in_v = vec![false; self.q];
        for &i in vs {
            self.check_generator(i)?;
            in_v[i] = true;
        }
        let mut in_s = vec![false; self.p];
        for &k in ss {
            if k >= self.p {
                return Err(Error::IndexOutOfRange {
                    what: "center",
                    index: k + 1,
                    max: self.p,
                });
            }
            in_s[k] = true;
        }
        let br = self.brackets();
        let is_subalgebra = br.iter().all(|b| !(in_v[b.i] && in_v[b.j]) || in_s[b.k]);
        let closed = br.iter().all(|b| !in_s[b.k] || in_v[b.i] == in_v[b.j]);
        Ok(TotallyGeodesic {
            is_subalgebra,
            is_tg: is_subalgebra && closed,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn quaternionic(associate: bool) -> StructureTensor {
        let s = if associate { -1 } else { 1 };
        StructureTensor::from_one_based(
            4,
            3,
            &[(1, 2, 1, 1), (3, 4, 1, 1), (1, 3, 2, 1), (4, 2, 2, 1), (1, 4, 3, 1), (2, 3, 3, s)],
        )
        .unwrap()
    }

    fn h3() -> StructureTensor {
        StructureTensor::from_one_based(2, 1, &[(1, 2, 1, 1)]).unwrap()
    }

    #[test]
    fn h3_center_and_centralizer() {
        let t = h3();
        let c = t.center().unwrap();
        assert_eq!(c.dim(), 1);
        assert!(c.same_as(&Subspace::coordinate(3, [2])).unwrap());
        assert_eq!(t.centralizer(0).unwrap().dim(), 2);
        assert_eq!(t.ad_rank(1).unwrap(), 1);
        assert!(t.ad_rank(2).is_err());
    }

    #[test]
    fn unused_generator_is_central() {
        let t = StructureTensor::from_one_based(3, 1, &[(1, 2, 1, 1)]).unwrap();
        let c = t.center().unwrap();
        assert_eq!(c.dim(), 2);
        assert!(c.contains(&[0, 0, 1, 0]).unwrap());
    }

    #[test]
    fn h3_j_map() {
        let j = h3().j_map(&[Rat::one()]).unwrap();
        // J(v1) = v2, J(v2) = -v1
        assert_eq!(j.column(0), vec![Rat::zero(), Rat::one()]);
        assert_eq!(j.column(1), vec![-Rat::one(), Rat::zero()]);
    }

    #[test]
    fn j_is_minus_skew_adjacency() {
        let t = quaternionic(false);
        let g = t.to_graph();
        for k in 0..3 {
            let a = crate::graph::skew_adjacency(&g, k).unwrap();
            assert_eq!(t.j_basis(k).unwrap(), a.scale(-1));
            assert_eq!(t.j_basis(k).unwrap(), a.transpose());
        }
    }

    #[test]
    fn quaternionic_gram_and_type() {
        let t = quaternionic(false);
        assert_eq!(t.j_gram().unwrap(), IntMatrix::identity(3).scale(4));
        assert!(t.is_heisenberg_type().unwrap());
        assert!(!quaternionic(true).is_heisenberg_type().unwrap());
        assert_eq!(t.nonsingular().unwrap(), Some(true));
        assert_eq!(quaternionic(true).nonsingular().unwrap(), Some(false));
    }

    #[test]
    fn non_uniform_gram_is_an_error() {
        let t = StructureTensor::from_one_based(3, 1, &[(1, 2, 1, 1)]).unwrap();
        assert!(matches!(t.j_gram(), Err(Error::NotUniform(_))));
    }

    #[test]
    fn derivations_of_h3() {
        // gl(2) acting on v, plus maps v -> z: 4 + 2 = 6.
        assert_eq!(h3().derivation_dimension().unwrap(), 6);
    }

    #[test]
    fn derivations_of_abelian() {
        let t = StructureTensor::new(2, 1, []).unwrap();
        assert_eq!(t.derivation_dimension().unwrap(), 9);
    }

    #[test]
    fn totally_geodesic_examples() {
        let sum = StructureTensor::from_one_based(4, 2, &[(1, 2, 1, 1), (3, 4, 2, 1)]).unwrap();
        let tg = sum.totally_geodesic(&[0, 1], &[0]).unwrap();
        assert!(tg.is_subalgebra && tg.is_tg);
        let q = quaternionic(false);
        let tg = q.totally_geodesic(&[0, 1], &[0]).unwrap();
        assert!(tg.is_subalgebra && tg.is_tg);
        let tg = q.totally_geodesic(&[0, 1], &[1]).unwrap();
        assert!(!tg.is_subalgebra && !tg.is_tg);
        assert!(q.totally_geodesic(&[], &[]).is_err());
    }
}
