//! Exact linear algebra: integer matrices with fraction-free elimination,
//! small rational matrices for change-of-basis witnesses, and GF(2) row
//! reduction for the sign action.

use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = Rational64;

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

/// Fraction-free reduced echelon form. Every pivot entry equals `scale`.
#[derive(Debug, Clone)]
struct Echelon {
    rows: Vec<Vec<i128>>,
    pivots: Vec<usize>,
    scale: i128,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = a
                        .checked_mul(other.get(k, j))
                        .and_then(|x| x.checked_add(out.get(i, j)))
                        .ok_or(Error::Overflow)?;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, k: i64) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * k).collect(),
        }
    }

    pub fn trace(&self) -> i64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == -self.get(j, i)))
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|v| **v != 0).count()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| *v == 0)
    }

    /// Frobenius product `trace(A Bᵀ)`.
    pub fn frobenius(&self, other: &IntMatrix) -> i64 {
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    /// Fraction-free Gauss-Jordan (Bareiss). Each step replaces every other
    /// row by `(pivot * a_ij - a_ic * a_rj) / previous_pivot`; the division
    /// is exact, and at the end all pivots share one value.
    fn echelon(&self) -> Result<Echelon> {
        let mut a: Vec<Vec<i128>> = (0..self.rows)
            .map(|r| self.row(r).iter().map(|&v| v as i128).collect())
            .collect();
        let mut prev: i128 = 1;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(found) = (r..self.rows).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(r, found);
            let piv = a[r][c];
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = a[i][c];
                for j in 0..self.cols {
                    let num = piv
                        .checked_mul(a[i][j])
                        .and_then(|x| f.checked_mul(a[r][j]).and_then(|y| x.checked_sub(y)))
                        .ok_or(Error::Overflow)?;
                    debug_assert_eq!(num % prev, 0, "Bareiss division must be exact");
                    a[i][j] = num / prev;
                }
            }
            prev = piv;
            pivots.push(c);
            r += 1;
        }
        Ok(Echelon {
            rows: a,
            pivots,
            scale: prev,
        })
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.echelon()?.pivots.len())
    }

    /// Pivot columns: the indices of a maximal independent set of columns,
    /// chosen greedily left to right.
    pub fn pivot_columns(&self) -> Result<Vec<usize>> {
        Ok(self.echelon()?.pivots)
    }

    /// Integer basis of the right kernel; each vector is primitive with a
    /// positive entry at its free coordinate.
    pub fn kernel(&self) -> Result<Vec<Vec<i64>>> {
        let ech = self.echelon()?;
        let mut is_pivot = vec![false; self.cols];
        for &c in &ech.pivots {
            is_pivot[c] = true;
        }
        let sign = if ech.scale < 0 { -1 } else { 1 };
        let mut basis = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![0i128; self.cols];
            x[f] = ech.scale * sign;
            for (k, &pc) in ech.pivots.iter().enumerate() {
                x[pc] = -ech.rows[k][f] * sign;
            }
            let g = x.iter().fold(0i128, |g, v| g.gcd(v));
            let g = if g == 0 { 1 } else { g };
            basis.push(
                x.into_iter()
                    .map(|v| i64::try_from(v / g).map_err(|_| Error::Overflow))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(basis)
    }

    /// Exact determinant of a square matrix.
    pub fn determinant(&self) -> Result<i128> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of non-square matrix".into()));
        }
        if self.rows == 0 {
            return Ok(1);
        }
        // Forward Bareiss with explicit row-swap sign tracking.
        let n = self.rows;
        let mut a: Vec<Vec<i128>> = self.to_rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect();
        let mut prev: i128 = 1;
        let mut sign = 1;
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| a[i][k] != 0) else {
                return Ok(0);
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[k][k]
                        .checked_mul(a[i][j])
                        .and_then(|x| a[i][k].checked_mul(a[k][j]).and_then(|y| x.checked_sub(y)))
                        .ok_or(Error::Overflow)?;
                    a[i][j] = num / prev;
                }
                a[i][k] = 0;
            }
            prev = a[k][k];
        }
        Ok(sign * a[n - 1][n - 1])
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|v| format!("{v:>2}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Dense rational matrix, row-major. Used for general change-of-basis
/// witnesses. Columns are images of basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rat>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(RatMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let rows: Vec<Vec<Rat>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Rat::from_integer(v)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    /// Build from column images: `columns[c]` is the image of basis vector `c`.
    pub fn from_columns(columns: &[Vec<Rat>]) -> Result<Self> {
        let n = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != n) {
            return Err(Error::DimensionMismatch("ragged columns".into()));
        }
        let mut m = Self::zeros(n, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, *v);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn mul_vec(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch("rational matrix product".into()));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let v = (0..self.cols).map(|k| self.get(i, k) * other.get(k, j)).sum();
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for c in 0..a.cols {
            let Some(p) = (rank..a.rows).find(|&r| !a.get(r, c).is_zero()) else {
                continue;
            };
            a.swap_rows(rank, p);
            let piv = a.get(rank, c);
            for r in 0..a.rows {
                if r != rank {
                    let f = a.get(r, c) / piv;
                    if !f.is_zero() {
                        for j in 0..a.cols {
                            let v = a.get(r, j) - f * a.get(rank, j);
                            a.set(r, j, v);
                        }
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn determinant(&self) -> Result<Rat> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a.get(r, c).is_zero()) else {
                return Ok(Rat::zero());
            };
            if p != c {
                a.swap_rows(c, p);
                det = -det;
            }
            let piv = a.get(c, c);
            det *= piv;
            for r in c + 1..n {
                let f = a.get(r, c) / piv;
                if !f.is_zero() {
                    for j in c..n {
                        a.set(r, j, a.get(r, j) - f * a.get(c, j));
                    }
                }
            }
        }
        Ok(det)
    }

    /// Leading `k x k` principal submatrix.
    pub fn leading(&self, k: usize) -> RatMatrix {
        let mut out = RatMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                out.set(i, j, self.get(i, j));
            }
        }
        out
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a.get(r, c).is_zero()).ok_or(Error::Singular)?;
            a.swap_rows(c, p);
            inv.swap_rows(c, p);
            let piv = a.get(c, c);
            for j in 0..n {
                a.set(c, j, a.get(c, j) / piv);
                inv.set(c, j, inv.get(c, j) / piv);
            }
            for r in 0..n {
                if r != c {
                    let f = a.get(r, c);
                    if !f.is_zero() {
                        for j in 0..n {
                            a.set(r, j, a.get(r, j) - f * a.get(c, j));
                            inv.set(r, j, inv.get(r, j) - f * inv.get(c, j));
                        }
                    }
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn nonzero_positions(&self) -> Vec<(usize, usize)> {
        (0..self.rows)
            .flat_map(|r| (0..self.cols).map(move |c| (r, c)))
            .filter(|&(r, c)| !self.get(r, c).is_zero())
            .collect()
    }
}

/// Render a rational as `a` or `a/b`.
pub fn format_rat(v: &Rat) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Parse `a` or `a/b`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.strip_prefix('+').unwrap_or(s);
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.parse().ok()?;
            let d: i64 = d.parse().ok()?;
            (d != 0).then(|| Rat::new(n, d))
        }
        None => s.parse::<i64>().ok().map(Rat::from_integer),
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn rat_signum(v: &Rat) -> i64 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Bit vector over GF(2). Index 0 is the most significant position for the
/// lexicographic order used by the sign action.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vec {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vec {
    pub fn zeros(len: usize) -> Self {
        Gf2Vec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        if b {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &Gf2Vec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        (0..self.len).find(|&i| self.get(i))
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

/// Reduced row echelon basis of a GF(2) subspace, with pivots at the first
/// set position of each row. Reducing a vector against it yields the unique
/// lexicographically least element of its coset.
#[derive(Debug, Clone)]
pub struct Gf2Basis {
    len: usize,
    rows: Vec<Gf2Vec>,
    pivots: Vec<usize>,
}

impl Gf2Basis {
    pub fn span(len: usize, generators: impl IntoIterator<Item = Gf2Vec>) -> Self {
        let mut basis = Gf2Basis {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        };
        for g in generators {
            basis.insert(g);
        }
        basis
    }

    fn insert(&mut self, mut v: Gf2Vec) {
        v = self.reduce(v);
        let Some(p) = v.first_one() else { return };
        for row in &mut self.rows {
            if row.get(p) {
                row.xor_assign(&v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.len
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn reduce(&self, mut v: Gf2Vec) -> Gf2Vec {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
        v
    }

    pub fn contains(&self, v: &Gf2Vec) -> bool {
        self.reduce(v.clone()).is_zero()
    }
}

/// Solve `A x = b` over GF(2), where `equations[i]` is row `i` of `A` over
/// `vars` unknowns. Free variables are set to zero, so the solution is the
/// least one with respect to the pivot ordering.
pub fn gf2_solve(vars: usize, equations: &[(Gf2Vec, bool)]) -> Option<Gf2Vec> {
    let mut rows: Vec<(Gf2Vec, bool)> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for (eq, rhs) in equations {
        let mut e = eq.clone();
        let mut b = *rhs;
        for ((row, rb), &p) in rows.iter().zip(&pivots) {
            if e.get(p) {
                e.xor_assign(row);
                b ^= rb;
            }
        }
        match e.first_one() {
            None if b => return None,
            None => {}
            Some(p) => {
                for ((row, rb), _) in rows.iter_mut().zip(&pivots) {
                    if row.get(p) {
                        row.xor_assign(&e);
                        *rb ^= b;
                    }
                }
                rows.push((e, b));
                pivots.push(p);
            }
        }
    }
    let mut x = Gf2Vec::zeros(vars);
    for ((_, b), &p) in rows.iter().zip(&pivots) {
        x.set(p, *b);
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_skew_block() {
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap();
        assert_eq!(m.rank().unwrap(), 2);
        assert!(m.kernel().unwrap().is_empty());
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 6], vec![1, 2, 3]]).unwrap();
        assert_eq!(m.rank().unwrap(), 1);
        let k = m.kernel().unwrap();
        assert_eq!(k.len(), 2);
        for v in &k {
            for r in 0..2 {
                let dot: i64 = m.row(r).iter().zip(v).map(|(a, b)| a * b).sum();
                assert_eq!(dot, 0);
            }
        }
    }

    #[test]
    fn zero_matrix_kernel_is_standard_basis() {
        let k = IntMatrix::zeros(2, 3).kernel().unwrap();
        assert_eq!(k, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn determinant_small() {
        let m = IntMatrix::from_rows(&[vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 9]]).unwrap();
        assert_eq!(m.determinant().unwrap(), -3);
    }

    #[test]
    fn rational_inverse_round_trip() {
        let m = RatMatrix::from_int_rows(&[vec![1, 1], vec![-1, 1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RatMatrix::identity(2));
        assert_eq!(inv.get(0, 0), Rat::new(1, 2));
        let sing = RatMatrix::from_int_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(sing.inverse(), Err(Error::Singular));
    }

    #[test]
    fn rat_text_round_trip() {
        for s in ["3", "-1/2", "0", "7/3"] {
            assert_eq!(format_rat(&parse_rat(s).unwrap()), s);
        }
        assert_eq!(parse_rat("+1"), Some(Rat::one()));
        assert_eq!(parse_rat("1/0"), None);
    }

    #[test]
    fn gf2_coset_minimum() {
        // span{110, 011}; coset of 100 = {100, 010, 111, 001}, min is 001.
        let basis = Gf2Basis::span(
            3,
            [Gf2Vec::from_bits(&[true, true, false]), Gf2Vec::from_bits(&[false, true, true])],
        );
        assert_eq!(basis.dim(), 2);
        let r = basis.reduce(Gf2Vec::from_bits(&[true, false, false]));
        assert_eq!(r.to_bits(), vec![false, false, true]);
    }

    #[test]
    fn gf2_solve_consistent_and_not() {
        let eqs = vec![
            (Gf2Vec::from_bits(&[true, true, false]), true),
            (Gf2Vec::from_bits(&[false, true, true]), false),
        ];
        let x = gf2_solve(3, &eqs).unwrap();
        for (e, b) in &eqs {
            let v = (0..3).filter(|&i| e.get(i) && x.get(i)).count() % 2 == 1;
            assert_eq!(v, *b);
        }
        let bad = vec![
            (Gf2Vec::from_bits(&[true, false]), true),
            (Gf2Vec::from_bits(&[true, false]), false),
        ];
        assert!(gf2_solve(2, &bad).is_none());
    }
}
