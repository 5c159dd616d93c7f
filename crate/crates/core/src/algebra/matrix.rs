use super::field::{inv_with, FieldElem, MulImpl};

/// Dense row-major `d x d` matrix over GF(2^64).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SquareMatrix {
    d: usize,
    data: Vec<FieldElem>,
}

impl SquareMatrix {
    pub fn zeros(d: usize) -> Self {
        SquareMatrix {
            d,
            data: vec![FieldElem::ZERO; d * d],
        }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = SquareMatrix::zeros(d);
        for i in 0..d {
            m.set(i, i, FieldElem::ONE);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Self {
        let d = rows.len();
        let mut m = SquareMatrix::zeros(d);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), d, "row {i} has the wrong length");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, FieldElem(x));
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.data[i * self.d + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: FieldElem) {
        self.data[i * self.d + j] = x;
    }

    pub fn fill_zero(&mut self) {
        self.data.fill(FieldElem::ZERO);
    }

    pub fn mul_matrix(&self, o: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.d, o.d);
        let d = self.d;
        let mut out = SquareMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = FieldElem::ZERO;
                for t in 0..d {
                    acc += self.get(i, t) * o.get(t, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn determinant(&self) -> FieldElem {
        crate::with_mul_impl!(|m| determinant_with(m, &mut self.data.clone(), self.d))
    }

    /// Determinant that destroys `self`, avoiding a copy.
    pub fn determinant_in_place(&mut self) -> FieldElem {
        let d = self.d;
        crate::with_mul_impl!(|m| determinant_with(m, &mut self.data, d))
    }
}

/// Gaussian elimination on a row-major buffer. Row swaps need no sign
/// change in characteristic 2.
pub fn determinant_with<M: MulImpl>(m: M, a: &mut [FieldElem], d: usize) -> FieldElem {
    debug_assert_eq!(a.len(), d * d);
    let mut det = FieldElem::ONE;
    for col in 0..d {
        let Some(p) = (col..d).find(|&r| !a[r * d + col].is_zero()) else {
            return FieldElem::ZERO;
        };
        if p != col {
            for j in col..d {
                a.swap(p * d + j, col * d + j);
            }
        }
        let pivot = a[col * d + col];
        det = m.mul(det, pivot);
        let inv = inv_with(m, pivot);
        let (top, rest) = a.split_at_mut((col + 1) * d);
        let prow = &top[col * d..];
        for row in rest.chunks_exact_mut(d) {
            let lead = row[col];
            if lead.is_zero() {
                continue;
            }
            let f = m.mul(lead, inv);
            for j in col..d {
                row[j] += m.mul(f, prow[j]);
            }
        }
    }
    det
}
