use std::fmt;

use crate::error::{Error, Result};

/// Finite group given by its multiplication table; element 0 is the
/// identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
}

/// Associativity is checked exhaustively up to this order.
pub const MAX_CHECKED_ORDER: usize = 64;

impl FiniteGroup {
    /// Validate a multiplication table: Latin square, 0 is the identity, and
    /// (for order at most 64) associativity.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidParameter("a group needs at least one element".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidParameter(format!("row {a} has length {}", row.len())));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidParameter(format!("row {a} is not a permutation")));
                }
            }
        }
        for b in 0..n {
            let mut seen = vec![false; n];
            for row in &table {
                if std::mem::replace(&mut seen[row[b]], true) {
                    return Err(Error::InvalidParameter(format!("column {b} is not a permutation")));
                }
            }
        }
        if (0..n).any(|a| table[0][a] != a || table[a][0] != a) {
            return Err(Error::InvalidParameter("element 0 is not the identity".into()));
        }
        if n <= MAX_CHECKED_ORDER {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if table[table[a][b]][c] != table[a][table[b][c]] {
                            return Err(Error::InvalidParameter(format!(
                                "not associative at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(FiniteGroup {
            name: name.into(),
            table,
        })
    }

    /// Cyclic group `Z_n`; element `i` is `i mod n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(format!("z{n}"), table)
    }

    /// `Z_2^k`; element `i` is the bit vector of `i`.
    pub fn elementary_abelian(k: u32) -> Result<Self> {
        if k > 6 {
            return Err(Error::TooLarge(format!("z2^{k} is larger than {MAX_CHECKED_ORDER}")));
        }
        let n = 1usize << k;
        let table = (0..n).map(|a| (0..n).map(|b| a ^ b).collect()).collect();
        Self::from_table(format!("z2^{k}"), table)
    }

    /// Dihedral group of order `2p`; element `i + p*e` is `r^i s^e`.
    pub fn dihedral(p: usize) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidParameter("dihedral group needs p >= 2".into()));
        }
        let n = 2 * p;
        let table = (0..n)
            .map(|x| {
                let (a, e) = (x % p, x / p);
                (0..n)
                    .map(|y| {
                        let (b, f) = (y % p, y / p);
                        // r^a s^e r^b s^f = r^(a + (-1)^e b) s^(e+f)
                        let rot = if e == 0 { (a + b) % p } else { (a + p - b) % p };
                        rot + p * ((e + f) % 2)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(format!("dihedral{p}"), table)
    }

    /// Symmetric group on `n <= 5` letters; elements are permutations in
    /// lexicographic order and `(ab)(x) = a(b(x))`.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 5 {
            return Err(Error::InvalidParameter(format!("symmetric group needs 1 <= n <= 5, got {n}")));
        }
        let perms = lex_permutations(n);
        let index = |p: &Vec<usize>| perms.binary_search(p).expect("closed under composition");
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index(&b.iter().map(|&x| a[x]).collect()))
                    .collect()
            })
            .collect();
        Self::from_table(format!("s{n}"), table)
    }

    /// Built-in group by name: `z<n>`, `z2^<k>`, `dihedral<p>`, `s<n>`.
    pub fn by_name(name: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unknown group '{name}'"));
        if let Some(k) = name.strip_prefix("z2^") {
            return Self::elementary_abelian(k.parse().map_err(|_| bad())?);
        }
        if let Some(p) = name.strip_prefix("dihedral") {
            return Self::dihedral(p.parse().map_err(|_| bad())?);
        }
        if let Some(n) = name.strip_prefix('z') {
            return Self::cyclic(n.parse().map_err(|_| bad())?);
        }
        if let Some(n) = name.strip_prefix('s') {
            return Self::symmetric(n.parse().map_err(|_| bad())?);
        }
        Err(bad())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == 0).unwrap_or(0)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.table[a][x];
            k += 1;
        }
        k
    }

    /// Elements of order 2, ascending.
    pub fn involutions(&self) -> Vec<usize> {
        (1..self.order()).filter(|&a| self.element_order(a) == 2).collect()
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order())
    }
}

pub(crate) fn lex_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap_or(i);
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_orders() {
        assert_eq!(FiniteGroup::cyclic(5).unwrap().order(), 5);
        assert_eq!(FiniteGroup::elementary_abelian(2).unwrap().order(), 4);
        assert_eq!(FiniteGroup::dihedral(3).unwrap().order(), 6);
        assert_eq!(FiniteGroup::symmetric(4).unwrap().order(), 24);
    }

    #[test]
    fn involution_counts() {
        assert_eq!(FiniteGroup::elementary_abelian(2).unwrap().involutions(), vec![1, 2, 3]);
        assert_eq!(FiniteGroup::symmetric(3).unwrap().involutions().len(), 3);
        assert_eq!(FiniteGroup::dihedral(4).unwrap().involutions().len(), 5);
        assert!(FiniteGroup::cyclic(5).unwrap().involutions().is_empty());
    }

    #[test]
    fn s3_and_dihedral3_are_nonabelian() {
        for g in [FiniteGroup::symmetric(3).unwrap(), FiniteGroup::dihedral(3).unwrap()] {
            let n = g.order();
            assert!((0..n).any(|a| (0..n).any(|b| g.mul(a, b) != g.mul(b, a))));
            for a in 0..n {
                assert_eq!(g.mul(a, g.inverse(a)), 0);
            }
        }
    }

    #[test]
    fn bad_tables_rejected() {
        assert!(FiniteGroup::from_table("x", vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table("x", vec![vec![1, 0], vec![0, 1]]).is_err());
        // Latin square with identity 0 that is not associative (order 5).
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::from_table("loop", t).is_err());
        assert!(FiniteGroup::by_name("q8").is_err());
        assert_eq!(FiniteGroup::by_name("z2^3").unwrap().order(), 8);
    }
}
