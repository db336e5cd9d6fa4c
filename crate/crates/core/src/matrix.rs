//! Dense matrices over an arbitrary ring context.

use crate::ring::Ring;

/// Row-major dense matrix. Arithmetic goes through a [`Ring`] context so the
/// same type serves rationals, rational functions, series and operator blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut E {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: E) {
        self.data[i * self.cols + j] = value;
    }

    pub fn map<F: Clone>(&self, f: impl FnMut(&E) -> F) -> Matrix<F> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Submatrix on the given (zero-based) row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// The matrix with row `i` and column `j` deleted.
    pub fn minor(&self, i: usize, j: usize) -> Self {
        let rows: Vec<usize> = (0..self.rows).filter(|&r| r != i).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&c| c != j).collect();
        self.select(&rows, &cols)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &E> {
        self.data.iter()
    }

    pub fn zeros<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| ring.zero())
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| ring.add(a, b)).collect(),
        }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| ring.sub(a, b)).collect(),
        }
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = ring.zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if ring.is_zero(a) || ring.is_zero(b) {
                    continue;
                }
                acc = ring.add(&acc, &ring.mul(a, b));
            }
            acc
        })
    }

    pub fn is_zero<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.data.iter().all(|x| ring.is_zero(x))
    }

    /// Two-sided inverse by Gauss-Jordan elimination. Pivots are searched
    /// downwards in each column, so the elimination works over division rings
    /// and over local rings such as series with invertible constant terms.
    pub fn inverse<R: Ring<Elem = E>>(&self, ring: &R) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(ring, n);
        for col in 0..n {
            let (pivot_row, pivot_inv) = (col..n).find_map(|r| ring.try_inv(a.get(r, col)).map(|p| (r, p)))?;
            a.swap_rows(col, pivot_row);
            inv.swap_rows(col, pivot_row);
            for c in 0..n {
                let x = ring.mul(&pivot_inv, a.get(col, c));
                a.set(col, c, x);
                let y = ring.mul(&pivot_inv, inv.get(col, c));
                inv.set(col, c, y);
            }
            for r in 0..n {
                if r == col || ring.is_zero(a.get(r, col)) {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for c in 0..n {
                    let x = ring.sub(a.get(r, c), &ring.mul(&factor, a.get(col, c)));
                    a.set(r, c, x);
                    let y = ring.sub(inv.get(r, c), &ring.mul(&factor, inv.get(col, c)));
                    inv.set(r, c, y);
                }
            }
        }
        Some(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};
    use crate::ring::Rationals;

    #[test]
    fn rational_inverse_round_trip() {
        let a =
            Matrix::from_rows(vec![vec![qi(0), qi(2), qi(1)], vec![qi(1), qi(1), qi(0)], vec![q(1, 2), qi(0), qi(3)]]);
        let inv = a.inverse(&Rationals).expect("invertible");
        assert_eq!(a.mul(&Rationals, &inv), Matrix::identity(&Rationals, 3));
        assert_eq!(inv.mul(&Rationals, &a), Matrix::identity(&Rationals, 3));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let a = Matrix::from_rows(vec![vec![qi(1), qi(2)], vec![qi(2), qi(4)]]);
        assert!(a.inverse(&Rationals).is_none());
    }
}
