//! Exact dense linear algebra by fraction-free (Bareiss) elimination.

use crate::error::{Error, Result};
use crate::exactpoly::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize, like: &F) -> Self {
        Matrix { rows, cols, data: vec![like.zero_like(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        let nrows = rows.len();
        Ok(Matrix { rows: nrows, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Row echelon form by Bareiss elimination. Every division is exact,
    /// so integer input stays integral throughout.
    pub fn echelon(&self) -> Echelon<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let Some(one) = m.data.first().map(F::one_like) else {
            return Echelon { matrix: m, pivots };
        };
        let mut prev = one;
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let piv = m.get(row, col).clone();
            let prev_inv = prev.inverse().expect("Bareiss pivots are nonzero");
            for r in row + 1..m.rows {
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = piv.times(m.get(r, c)).minus(&factor.times(m.get(row, c)));
                    m.set(r, c, v.times(&prev_inv));
                }
            }
            // entries left of the pivot column in rows below are already zero;
            // rows above keep their values, which is all back substitution needs
            pivots.push(col);
            prev = piv;
            row += 1;
        }
        Echelon { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right kernel `{x : A x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let ech = self.echelon();
        let Some(like) = self.data.first() else {
            return Vec::new();
        };
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &c) in ech.pivots.iter().enumerate() {
                v[c] = Some(i);
            }
            v
        };
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| pivot_set[c].is_none()) {
            let mut x = vec![like.zero_like(); self.cols];
            x[free] = like.one_like();
            for (i, &pc) in ech.pivots.iter().enumerate().rev() {
                let mut acc = like.zero_like();
                for c in pc + 1..self.cols {
                    if !x[c].is_zero() {
                        acc = acc.plus(&ech.matrix.get(i, c).times(&x[c]));
                    }
                }
                let piv = ech.matrix.get(i, pc);
                x[pc] = acc.negated().divide(piv).expect("nonzero pivot");
            }
            basis.push(x);
        }
        basis
    }

    pub fn mul_vec(&self, x: &[F]) -> Result<Vec<F>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        let Some(like) = x.first() else {
            return Ok(Vec::new());
        };
        Ok((0..self.rows)
            .map(|r| {
                (0..self.cols).fold(like.zero_like(), |acc, c| acc.plus(&self.get(r, c).times(&x[c])))
            })
            .collect())
    }

    /// Determinant of a square matrix: the last Bareiss pivot, with row-swap sign.
    pub fn determinant(&self) -> Result<F> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let Some(like) = self.data.first() else {
            return Err(Error::DimensionMismatch("empty matrix".into()));
        };
        // Track swaps by redoing elimination with a sign counter.
        let mut m = self.clone();
        let mut sign = like.one_like();
        let mut prev = like.one_like();
        for k in 0..m.rows {
            let Some(p) = (k..m.rows).find(|&r| !m.get(r, k).is_zero()) else {
                return Ok(like.zero_like());
            };
            if p != k {
                m.swap_rows(p, k);
                sign = sign.negated();
            }
            let piv = m.get(k, k).clone();
            let prev_inv = prev.inverse()?;
            for r in k + 1..m.rows {
                let factor = m.get(r, k).clone();
                for c in k..m.cols {
                    let v = piv.times(m.get(r, c)).minus(&factor.times(m.get(k, c)));
                    m.set(r, c, v.times(&prev_inv));
                }
            }
            prev = piv;
        }
        Ok(sign.times(&prev))
    }
}

/// Result of [`Matrix::echelon`].
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::Rat;

    fn m(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rat::from(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).unwrap().iter().all(Rat::is_zero));
    }

    #[test]
    fn integer_input_stays_integral() {
        let a = m(&[&[2, 3, 5], &[7, 11, 13], &[17, 19, 23]]);
        let e = a.echelon();
        for r in 0..3 {
            for c in 0..3 {
                assert!(e.matrix.get(r, c).is_integer());
            }
        }
        assert_eq!(a.determinant().unwrap(), Rat::from(-78));
    }

    #[test]
    fn determinant_with_swap() {
        let a = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.determinant().unwrap(), Rat::from(-1));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).determinant().unwrap(), Rat::zero());
    }

    #[test]
    fn wide_and_tall() {
        let wide = m(&[&[1, 1, 1, 1]]);
        assert_eq!(wide.kernel().len(), 3);
        let tall = m(&[&[1], &[2], &[3]]);
        assert_eq!(tall.rank(), 1);
        assert!(tall.kernel().is_empty());
        assert!(Matrix::<Rat>::from_rows(vec![vec![Rat::one()], vec![]]).is_err());
    }
}
