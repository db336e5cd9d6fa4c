use thiserror::Error;

use crate::ncseries::{SeriesError, SeriesRing, TruncSeries};
use crate::rational::{q, qi, Q};
use crate::ring::{Algebra, Ring};
use crate::superspace::{Family, SuperSpace};

use super::GaussData;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CurrentsError {
    #[error("Gauss data covers {have} rows, currents need {need}")]
    BlockTooSmall { have: usize, need: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `k_i, e_i, f_i` and the Drinfeld currents `κ_i, ξ_i^±`, `i = 1..m+n`.
#[derive(Clone, Debug)]
pub struct Currents<E> {
    space: SuperSpace,
    order: usize,
    k: Vec<TruncSeries<E>>,
    e: Vec<TruncSeries<E>>,
    f: Vec<TruncSeries<E>>,
    kappa: Vec<TruncSeries<E>>,
    xi_plus: Vec<TruncSeries<E>>,
    xi_minus: Vec<TruncSeries<E>>,
}

impl<E: Clone> Currents<E> {
    pub fn build<A: Algebra<Elem = E>>(alg: &A, g: &GaussData<E>) -> Result<Self, CurrentsError> {
        let space = g.space().clone();
        let rank = space.rank();
        if g.block() < rank + 1 {
            return Err(CurrentsError::BlockTooSmall { have: g.block(), need: rank + 1 });
        }
        let order = g.order();
        let ring = SeriesRing::new(alg, order);
        let (mut k, mut e, mut f) = (Vec::new(), Vec::new(), Vec::new());
        for i in 1..=rank {
            let (lo, hi, ei, fi) = if space.family() == Family::D && i == rank {
                (i - 1, i + 1, g.e(i - 1, i + 1), g.f(i + 1, i - 1))
            } else {
                (i, i + 1, g.e(i, i + 1), g.f(i + 1, i))
            };
            let inv = ring.invert(g.h(lo))?;
            k.push(ring.mul(&inv, g.h(hi)));
            e.push(ei.clone());
            f.push(fi.clone());
        }
        let (mut kappa, mut xi_plus, mut xi_minus) = (Vec::new(), Vec::new(), Vec::new());
        for i in 1..=rank {
            let s = Self::shift(&space, i);
            kappa.push(ring.shift(&k[i - 1], &s));
            xi_plus.push(ring.shift(&f[i - 1], &s));
            let minus = ring.shift(&e[i - 1], &s);
            xi_minus.push(if Self::minus_sign(&space, i) < 0 { ring.scale(&minus, &qi(-1)) } else { minus });
        }
        Ok(Currents { space, order, k, e, f, kappa, xi_plus, xi_minus })
    }

    /// Argument shift `s` in `κ_i(u) = k_i(u + s)`: `(-1)^ī (m-i)/2`, or
    /// `-(n-1)/2` for the fork node in type D.
    pub fn shift(space: &SuperSpace, i: usize) -> Q {
        let m = space.m() as i64;
        if space.family() == Family::D && i == space.rank() {
            return q(-(space.n_orth() as i64 - 1), 2);
        }
        let s = q(m - i as i64, 2);
        if space.parity(i) == 1 {
            -s
        } else {
            s
        }
    }

    /// Sign in `ξ_i^-(u) = ± e_i(u + s)`.
    pub fn minus_sign(space: &SuperSpace, i: usize) -> i32 {
        if space.family() == Family::D && i == space.rank() {
            1
        } else if space.parity(i) == 1 {
            -1
        } else {
            1
        }
    }

    pub fn space(&self) -> &SuperSpace {
        &self.space
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn k(&self, i: usize) -> &TruncSeries<E> {
        &self.k[i - 1]
    }

    pub fn e(&self, i: usize) -> &TruncSeries<E> {
        &self.e[i - 1]
    }

    pub fn f(&self, i: usize) -> &TruncSeries<E> {
        &self.f[i - 1]
    }

    pub fn kappa(&self, i: usize) -> &TruncSeries<E> {
        &self.kappa[i - 1]
    }

    pub fn xi_plus(&self, i: usize) -> &TruncSeries<E> {
        &self.xi_plus[i - 1]
    }

    pub fn xi_minus(&self, i: usize) -> &TruncSeries<E> {
        &self.xi_minus[i - 1]
    }

    /// `κ_{i r}`, the coefficient of `u^{-r-1}`.
    pub fn kappa_coeff(&self, i: usize, r: usize) -> &E {
        self.kappa[i - 1].coeff(r + 1)
    }

    /// `ξ^±_{i r}`, the coefficient of `u^{-r-1}`.
    pub fn xi_coeff(&self, plus: bool, i: usize, r: usize) -> &E {
        let s = if plus { &self.xi_plus } else { &self.xi_minus };
        s[i - 1].coeff(r + 1)
    }

    /// Whether `ξ^±_i` is odd.
    pub fn is_odd(&self, i: usize) -> bool {
        i == self.space.m()
    }

    /// Constant term check: `κ_i(u)` starts with 1, `ξ^±_i(u)` with 0.
    pub fn well_formed<A: Algebra<Elem = E>>(&self, alg: &A) -> bool {
        (1..=self.space.rank()).all(|i| {
            alg.scalar_value(self.kappa(i).coeff(0)) == Some(qi(1))
                && alg.is_zero(self.xi_plus(i).coeff(0))
                && alg.is_zero(self.xi_minus(i).coeff(0))
        })
    }
}
