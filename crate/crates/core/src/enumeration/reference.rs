//! Known presentations of the uniform algebras with at most five generators.

use crate::error::Result;
use crate::lie::StructureTensor;

/// One published bracket presentation.
#[derive(Debug, Clone)]
pub struct ReferenceRow {
    /// Regular graph case the presentation comes from.
    pub case: usize,
    pub pqr: (usize, usize, usize),
    pub family: &'static str,
    /// 1-based `(i, j, k, sign)` meaning `[v_i, v_j] = sign * z_k`.
    pub relations: Vec<(usize, usize, usize, i8)>,
}

impl ReferenceRow {
    pub fn tensor(&self) -> Result<StructureTensor> {
        StructureTensor::from_one_based(self.pqr.1, self.pqr.0, &self.relations)
    }
}

fn free(n: usize) -> Vec<(usize, usize, usize, i8)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push((i, j, out.len() + 1, 1));
        }
    }
    out
}

/// The thirteen presentations, in table order. Rows 3 and 4 present the same
/// algebra.
pub fn reference_rows() -> Vec<ReferenceRow> {
    let row = |case, pqr, family, relations| ReferenceRow {
        case,
        pqr,
        family,
        relations,
    };
    vec![
        row(1, (1, 2, 1), "h3", vec![(1, 2, 1, 1)]),
        row(2, (1, 4, 2), "h5", vec![(1, 2, 1, 1), (3, 4, 1, 1)]),
        row(2, (2, 4, 1), "h3+h3", vec![(1, 2, 1, 1), (3, 4, 2, 1)]),
        row(
            4,
            (2, 4, 2),
            "h3+h3",
            vec![(1, 3, 1, 1), (2, 4, 1, 1), (1, 4, 2, 1), (2, 3, 2, 1)],
        ),
        row(3, (3, 3, 1), "f(3,2)", free(3)),
        row(
            4,
            (4, 4, 1),
            "m(4)",
            vec![(1, 2, 1, 1), (2, 3, 2, 1), (3, 4, 3, 1), (4, 1, 4, 1)],
        ),
        row(
            4,
            (2, 4, 2),
            "damek-ricci",
            vec![(1, 2, 1, 1), (3, 4, 1, 1), (2, 3, 2, 1), (1, 4, 2, 1)],
        ),
        row(
            5,
            (5, 5, 1),
            "m(5)",
            vec![(1, 2, 1, 1), (2, 3, 2, 1), (3, 4, 3, 1), (4, 5, 4, 1), (5, 1, 5, 1)],
        ),
        row(
            6,
            (3, 4, 2),
            "quaternionic",
            vec![(1, 2, 1, 1), (3, 4, 1, 1), (1, 3, 2, 1), (2, 4, 2, -1), (1, 4, 3, 1), (2, 3, 3, 1)],
        ),
        row(
            6,
            (3, 4, 2),
            "quaternionic-associate",
            vec![(1, 2, 1, 1), (3, 4, 1, 1), (1, 3, 2, 1), (2, 4, 2, 1), (1, 4, 3, 1), (2, 3, 3, -1)],
        ),
        row(6, (6, 4, 1), "f(4,2)", free(4)),
        row(
            7,
            (5, 5, 2),
            "k5-near-one-factorization",
            vec![
                (1, 5, 1, 1),
                (2, 4, 1, 1),
                (2, 5, 2, 1),
                (3, 4, 2, 1),
                (1, 3, 3, 1),
                (4, 5, 3, 1),
                (3, 5, 4, 1),
                (1, 2, 4, 1),
                (1, 4, 5, 1),
                (2, 3, 5, 1),
            ],
        ),
        row(7, (10, 5, 1), "f(5,2)", free(5)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_are_uniform_with_stated_type() {
        for (i, row) in reference_rows().iter().enumerate() {
            let t = row.tensor().unwrap();
            assert_eq!(t.verify_uniform_basis().pqr(), Some(row.pqr), "row {i}");
        }
    }

    #[test]
    fn quaternionic_rows() {
        let rows = reference_rows();
        assert!(rows[8].tensor().unwrap().is_heisenberg_type().unwrap());
        assert!(!rows[9].tensor().unwrap().is_heisenberg_type().unwrap());
        assert_eq!(rows[6].tensor().unwrap().nonsingular().unwrap(), Some(true));
        assert_eq!(rows[3].tensor().unwrap().nonsingular().unwrap(), Some(false));
    }
}
