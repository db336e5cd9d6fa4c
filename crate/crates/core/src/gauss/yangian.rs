use crate::matrix::Matrix;
use crate::ncseries::{Engine, NcPoly, SeriesRing, TruncSeries};
use crate::ring::Ring;
use crate::superspace::{Family, SuperSpace};

use super::{ldu, GaussError, Ldu};

type Series = TruncSeries<NcPoly>;

/// `[t_ij(u)]` for `1 ≤ i, j ≤ block`, truncated at `order`.
pub fn generator_matrix(engine: &Engine, order: usize, block: usize) -> Matrix<Series> {
    Matrix::from_fn(block, block, |r, c| {
        TruncSeries::from_coeffs((0..=order).map(|k| engine.t(r + 1, c + 1, k)).collect())
    })
}

/// The Gauss decomposition of the leading `block × block` part of `T(u)`;
/// since the pivots run `1, 2, …`, this is the restriction of the full one.
#[derive(Clone, Debug)]
pub struct GaussData<E = NcPoly> {
    space: SuperSpace,
    order: usize,
    ldu: Ldu<TruncSeries<E>>,
}

impl GaussData {
    pub fn decompose(engine: &Engine, order: usize, block: usize) -> Result<Self, GaussError> {
        let ring = SeriesRing::new(engine, order);
        let t = generator_matrix(engine, order, block);
        Ok(GaussData { space: engine.space().clone(), order, ldu: ldu(&ring, &t)? })
    }

    /// Decomposition of the whole generator matrix.
    pub fn full(engine: &Engine, order: usize) -> Result<Self, GaussError> {
        Self::decompose(engine, order, engine.space().size())
    }
}

impl<E: Clone> GaussData<E> {
    pub fn from_ldu(space: SuperSpace, order: usize, ldu: Ldu<TruncSeries<E>>) -> Self {
        GaussData { space, order, ldu }
    }

    /// Applies `g` to every coefficient.
    pub fn map<F: Clone>(&self, mut g: impl FnMut(&E) -> F) -> GaussData<F> {
        let mut series = |s: &TruncSeries<E>| s.map(&mut g);
        let n = self.ldu.h.len();
        let ldu = Ldu {
            f: Matrix::from_fn(n, n, |i, j| series(self.ldu.f.get(i, j))),
            h: self.ldu.h.iter().map(&mut series).collect(),
            e: Matrix::from_fn(n, n, |i, j| series(self.ldu.e.get(i, j))),
        };
        GaussData::from_ldu(self.space.clone(), self.order, ldu)
    }

    pub fn space(&self) -> &SuperSpace {
        &self.space
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn block(&self) -> usize {
        self.ldu.h.len()
    }

    pub fn ldu(&self) -> &Ldu<TruncSeries<E>> {
        &self.ldu
    }

    pub fn h(&self, i: usize) -> &TruncSeries<E> {
        &self.ldu.h[i - 1]
    }

    /// `e_ij(u)` for `i < j`.
    pub fn e(&self, i: usize, j: usize) -> &TruncSeries<E> {
        assert!(i < j);
        self.ldu.e.get(i - 1, j - 1)
    }

    /// `f_ji(u)` for `i < j`.
    pub fn f(&self, j: usize, i: usize) -> &TruncSeries<E> {
        assert!(i < j);
        self.ldu.f.get(j - 1, i - 1)
    }
}

/// Largest admissible embedding level: `m+n` in type B, `m+n-1` in type D.
pub fn max_level(space: &SuperSpace) -> usize {
    match space.family() {
        Family::B => space.rank(),
        Family::D => space.rank() - 1,
    }
}

/// `M_ij - M_{i,<l} (M_{<l,<l})^{-1} M_{<l,j}` for the positions `i, j ≥ l`
/// (zero-based) of a square matrix.
pub fn bordered<R: Ring>(ring: &R, m: &Matrix<R::Elem>, l: usize) -> Result<Matrix<R::Elem>, GaussError> {
    let n = m.rows();
    if l == 0 {
        return Ok(m.clone());
    }
    let lead: Vec<usize> = (0..l).collect();
    let rest: Vec<usize> = (l..n).collect();
    let inv = m.select(&lead, &lead).inverse(ring).ok_or(GaussError::SingularMinor { row: l, col: l })?;
    let left = m.select(&rest, &lead).mul(ring, &inv);
    let corr = left.mul(ring, &m.select(&lead, &rest));
    Ok(m.select(&rest, &rest).sub(ring, &corr))
}

/// `ψ_ℓ(T(u))`: the quasideterminants `t^[ℓ]_ij(u)` for
/// `ℓ+1 ≤ i, j ≤ (ℓ+1)'`, as a matrix whose `(0,0)` entry is `t^[ℓ]_{ℓ+1,ℓ+1}`.
pub fn psi_embed(engine: &Engine, l: usize, order: usize) -> Result<Matrix<Series>, GaussError> {
    let space = engine.space();
    let max = max_level(space);
    if l > max {
        return Err(GaussError::LevelOutOfRange { level: l, max });
    }
    let ring = SeriesRing::new(engine, order);
    let t = generator_matrix(engine, order, space.size());
    let inner = bordered(&ring, &t, l)?;
    let keep: Vec<usize> = (0..space.size() - 2 * l).collect();
    Ok(inner.select(&keep, &keep))
}
