//! Graded index conventions for `C^{N|2m}`.
//!
//! Indices are 1-based throughout, matching the usual matrix-unit notation.

pub mod fixtures;
mod roots;
pub mod tensor;

pub use roots::{cartan, eps_alpha, pairing, RootError};
pub use tensor::{
    build_r, build_r_form, p_operator, q_operator, ybe_residual, Mutation, RMatrixForm, SparseMatrix, TensorError,
};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::matrix::Matrix;
use crate::rational::{qi, sign, Q};
use crate::ring::Ring;

/// The two families covered: `N` odd gives type B, `N` even type D.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Family {
    B,
    D,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("unsupported family: N = {0} (need N >= 3)")]
    UnsupportedFamily(usize),
    #[error("pure orthogonal case m = 0 is not supported")]
    PureOrthogonal,
}

impl SpaceError {
    pub fn code(&self) -> &'static str {
        match self {
            SpaceError::UnsupportedFamily(_) => "unsupported-family",
            SpaceError::PureOrthogonal => "pure-orthogonal",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuperSpace {
    n_big: usize,
    m: usize,
    size: usize,
    kappa: Q,
}

impl SuperSpace {
    pub fn new(n_big: usize, m: usize) -> Result<Self, SpaceError> {
        if n_big < 3 {
            return Err(SpaceError::UnsupportedFamily(n_big));
        }
        if m == 0 {
            return Err(SpaceError::PureOrthogonal);
        }
        Ok(Self::raw(n_big, m))
    }

    /// The space with `m` lowered by `l`; used as the target of the embedding
    /// maps, where the symplectic part may vanish altogether.
    pub fn reduced(&self, l: usize) -> Self {
        assert!(l <= self.m);
        Self::raw(self.n_big, self.m - l)
    }

    fn raw(n_big: usize, m: usize) -> Self {
        let kappa = crate::rational::q(n_big as i64, 2) - qi(m as i64) - Q::one();
        SuperSpace { n_big, m, size: n_big + 2 * m, kappa }
    }

    /// `N`, the dimension of the even part.
    pub fn n_big(&self) -> usize {
        self.n_big
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn kappa(&self) -> &Q {
        &self.kappa
    }

    pub fn family(&self) -> Family {
        if self.n_big % 2 == 1 {
            Family::B
        } else {
            Family::D
        }
    }

    /// `n = floor(N/2)`.
    pub fn n_orth(&self) -> usize {
        self.n_big / 2
    }

    /// Number of simple roots, `m + n`.
    pub fn rank(&self) -> usize {
        self.m + self.n_orth()
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.size
    }

    pub fn prime(&self, i: usize) -> usize {
        debug_assert!((1..=self.size).contains(&i));
        self.size + 1 - i
    }

    pub fn parity(&self, i: usize) -> u32 {
        debug_assert!((1..=self.size).contains(&i));
        (i <= self.m || i > self.size - self.m) as u32
    }

    /// Parity of the matrix unit `e_ij`.
    pub fn parity2(&self, i: usize, j: usize) -> u32 {
        (self.parity(i) + self.parity(j)) % 2
    }

    pub fn theta(&self, i: usize) -> i32 {
        if i <= self.n_big + self.m {
            1
        } else {
            -1
        }
    }

    pub fn theta_q(&self, i: usize) -> Q {
        qi(self.theta(i) as i64)
    }

    /// Sign `(-1)^{ij+j} θ_i θ_j` relating `(A^t)_ij` to `a_{j'i'}`.
    pub fn transpose_sign(&self, i: usize, j: usize) -> Q {
        let (pi, pj) = (self.parity(i), self.parity(j));
        sign(pi * pj + pj) * qi((self.theta(i) * self.theta(j)) as i64)
    }

    /// Super-transpose `(A^t)_ij = a_{j'i'} (-1)^{ij+j} θ_i θ_j`.
    pub fn super_transpose<R: Ring>(&self, ring: &R, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
        assert_eq!((a.rows(), a.cols()), (self.size, self.size));
        Matrix::from_fn(self.size, self.size, |r, c| {
            let (i, j) = (r + 1, c + 1);
            let x = a.get(self.prime(j) - 1, self.prime(i) - 1);
            if self.transpose_sign(i, j).is_one() {
                x.clone()
            } else {
                ring.neg(x)
            }
        })
    }

    /// Matrix of rationals with a single unit entry at `(i, j)`.
    pub fn unit(&self, i: usize, j: usize) -> Matrix<Q> {
        Matrix::from_fn(self.size, self.size, |r, c| if (r + 1, c + 1) == (i, j) { Q::one() } else { Q::zero() })
    }
}

impl std::fmt::Display for SuperSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "osp({}|{})", self.n_big, 2 * self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::ring::Rationals;

    #[test]
    fn osp_3_2_conventions() {
        let s = SuperSpace::new(3, 1).unwrap();
        assert_eq!(s.size(), 5);
        assert_eq!(s.kappa(), &q(-1, 2));
        assert_eq!(s.prime(2), 4);
        assert_eq!(s.parity(1), 1);
        assert_eq!(s.parity(3), 0);
        assert_eq!(s.theta(5), -1);
        assert_eq!(s.family(), Family::B);
    }

    #[test]
    fn excluded_parameters_have_distinct_codes() {
        let a = SuperSpace::new(2, 1).unwrap_err();
        let b = SuperSpace::new(3, 0).unwrap_err();
        assert_eq!(a.code(), "unsupported-family");
        assert_eq!(b.code(), "pure-orthogonal");
        assert!(a.to_string().contains("unsupported family"));
    }

    #[test]
    fn involution_parity_and_theta() {
        for (nb, m) in [(3, 1), (4, 1), (5, 2), (6, 3)] {
            let s = SuperSpace::new(nb, m).unwrap();
            for i in s.indices() {
                let ip = s.prime(i);
                assert_eq!(s.prime(ip), i);
                assert_eq!(s.parity(i), s.parity(ip));
                assert_eq!(s.theta(i) * s.theta(ip) == -1, s.parity(i) == 1);
            }
        }
    }

    #[test]
    fn transpose_of_unit_e12() {
        // (A^t)_{45} = a_{21}... so e_12 goes to a multiple of e_45.
        let s = SuperSpace::new(3, 1).unwrap();
        let t = s.super_transpose(&Rationals, &s.unit(1, 2));
        let expect = s.transpose_sign(4, 5);
        assert_eq!(t, s.unit(4, 5).map(|x| x * &expect));
        assert_eq!(expect, qi(1));
        assert_eq!(s.super_transpose(&Rationals, &t), s.unit(1, 2));
    }

    #[test]
    fn identity_is_self_transpose() {
        let s = SuperSpace::new(4, 2).unwrap();
        let id = Matrix::identity(&Rationals, s.size());
        assert_eq!(s.super_transpose(&Rationals, &id), id);
    }
}
