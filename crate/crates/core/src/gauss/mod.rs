//! Quasideterminants, the Gauss decomposition `T = F H E`, Gaussian and
//! Drinfeld currents, and the embedding maps `ψ_ℓ`.
//!
//! Matrix positions in [`quasidet`] and [`ldu`] are zero-based; everything
//! indexed by the super space ([`GaussData`], [`Currents`]) is one-based.

mod currents;
mod yangian;

pub use currents::{Currents, CurrentsError};
pub use yangian::{bordered, generator_matrix, max_level, psi_embed, GaussData};

use thiserror::Error;

use crate::matrix::Matrix;
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GaussError {
    #[error("minor deleting row {row} and column {col} is not invertible")]
    SingularMinor { row: usize, col: usize },
    #[error("pivot {0} is not invertible")]
    PivotFailure(usize),
    #[error("embedding level {level} out of range (max {max})")]
    LevelOutOfRange { level: usize, max: usize },
}

/// `|A|_ij = a_ij - r_i^j (A^{ij})^{-1} c_j^i`.
pub fn quasidet<R: Ring>(ring: &R, a: &Matrix<R::Elem>, i: usize, j: usize) -> Result<R::Elem, GaussError> {
    assert!(a.is_square());
    let n = a.rows();
    if n == 1 {
        return Ok(a.get(0, 0).clone());
    }
    let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
    let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
    let inv = a.select(&rows, &cols).inverse(ring).ok_or(GaussError::SingularMinor { row: i, col: j })?;
    let row = a.select(&[i], &cols);
    let col = a.select(&rows, &[j]);
    let corr = row.mul(ring, &inv).mul(ring, &col);
    Ok(ring.sub(a.get(i, j), corr.get(0, 0)))
}

/// Unit lower-triangular `F`, diagonal `H` and unit upper-triangular `E`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ldu<E> {
    pub f: Matrix<E>,
    pub h: Vec<E>,
    pub e: Matrix<E>,
}

impl<E: Clone> Ldu<E> {
    /// `F·H·E`.
    pub fn product<R: Ring<Elem = E>>(&self, ring: &R) -> Matrix<E> {
        let n = self.h.len();
        let h = Matrix::from_fn(n, n, |i, j| if i == j { self.h[i].clone() } else { ring.zero() });
        self.f.mul(ring, &h).mul(ring, &self.e)
    }
}

/// Gauss decomposition by iterated Schur complements with the pivot order
/// `1, 2, …`.
pub fn ldu<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Result<Ldu<R::Elem>, GaussError> {
    assert!(a.is_square());
    let n = a.rows();
    let mut s = a.clone();
    let mut f = Matrix::identity(ring, n);
    let mut e = Matrix::identity(ring, n);
    let mut h = Vec::with_capacity(n);
    for k in 0..n {
        let pivot = s.get(k, k).clone();
        let inv = ring.try_inv(&pivot).ok_or(GaussError::PivotFailure(k))?;
        for j in k + 1..n {
            e.set(k, j, ring.mul(&inv, s.get(k, j)));
            f.set(j, k, ring.mul(s.get(j, k), &inv));
        }
        for i in k + 1..n {
            if ring.is_zero(f.get(i, k)) {
                continue;
            }
            for j in k + 1..n {
                let corr = ring.mul(f.get(i, k), s.get(k, j));
                let x = ring.sub(s.get(i, j), &corr);
                s.set(i, j, x);
            }
        }
        h.push(pivot);
    }
    Ok(Ldu { f, h, e })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi, Q};
    use crate::ring::Rationals;

    fn m(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect())
    }

    #[test]
    fn small_quasideterminants() {
        assert_eq!(quasidet(&Rationals, &m(&[&[7]]), 0, 0).unwrap(), qi(7));
        assert_eq!(quasidet(&Rationals, &m(&[&[1, 2], &[3, 4]]), 1, 1).unwrap(), qi(-2));
        // |A|_11 = ((A^{-1})_11)^{-1}
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = a.inverse(&Rationals).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(quasidet(&Rationals, &a, i, j).unwrap(), inv.get(j, i).recip());
            }
        }
    }

    #[test]
    fn singular_minor_reported() {
        let a = m(&[&[1, 2, 3], &[1, 2, 3], &[0, 0, 1]]);
        assert_eq!(quasidet(&Rationals, &a, 2, 2), Err(GaussError::SingularMinor { row: 2, col: 2 }));
    }

    #[test]
    fn ldu_reconstructs_and_matches_quasideterminants() {
        let a = Matrix::from_rows(vec![
            vec![qi(2), qi(1), q(1, 2), qi(0)],
            vec![qi(4), qi(5), qi(1), qi(3)],
            vec![qi(-2), qi(1), qi(7), qi(1)],
            vec![qi(0), q(3, 2), qi(1), qi(9)],
        ]);
        let d = ldu(&Rationals, &a).unwrap();
        assert_eq!(d.product(&Rationals), a);
        for k in 0..4 {
            let idx: Vec<usize> = (0..=k).collect();
            assert_eq!(d.h[k], quasidet(&Rationals, &a.select(&idx, &idx), k, k).unwrap());
        }
        assert_eq!(ldu(&Rationals, &m(&[&[0, 1], &[1, 0]])).unwrap_err(), GaussError::PivotFailure(0));
    }
}
