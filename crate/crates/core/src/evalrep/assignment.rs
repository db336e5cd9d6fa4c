use num_traits::Zero;
use thiserror::Error;

use crate::gauss::{ldu, GaussData, GaussError, Ldu};
use crate::matrix::Matrix;
use crate::ncseries::{Gen, NcPoly, TruncSeries};
use crate::rational::{fmt_q, pow, sign, Q};
use crate::ring::{Algebra, Rationals, Ring};
use crate::sample::{rational_avoiding, seeded};
use crate::superspace::tensor::{embed, r_in_slots, Placement, RMatrixForm, SparseMatrix};
use crate::superspace::SuperSpace;

use super::ratfun::{RatFun, RatFunField};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("RTT residual nonzero at u = {u}, v = {v}")]
    RttFailure { u: String, v: String },
    #[error("image of t_ij(u) is not regular at u = ∞")]
    NotRegular,
    #[error(transparent)]
    Gauss(#[from] GaussError),
}

/// `End(C^{N|2m})` over the rationals, graded by `ī + j̄` on `E_ij`.
#[derive(Clone, Debug)]
pub struct Operators {
    space: SuperSpace,
}

impl Operators {
    pub fn new(space: &SuperSpace) -> Self {
        Operators { space: space.clone() }
    }

    pub fn space(&self) -> &SuperSpace {
        &self.space
    }
}

impl Ring for Operators {
    type Elem = Matrix<Q>;

    fn zero(&self) -> Matrix<Q> {
        Matrix::zeros(&Rationals, self.space.size(), self.space.size())
    }
    fn one(&self) -> Matrix<Q> {
        Matrix::identity(&Rationals, self.space.size())
    }
    fn add(&self, a: &Matrix<Q>, b: &Matrix<Q>) -> Matrix<Q> {
        a.add(&Rationals, b)
    }
    fn sub(&self, a: &Matrix<Q>, b: &Matrix<Q>) -> Matrix<Q> {
        a.sub(&Rationals, b)
    }
    fn mul(&self, a: &Matrix<Q>, b: &Matrix<Q>) -> Matrix<Q> {
        a.mul(&Rationals, b)
    }
    fn is_zero(&self, a: &Matrix<Q>) -> bool {
        a.is_zero(&Rationals)
    }
    fn try_inv(&self, a: &Matrix<Q>) -> Option<Matrix<Q>> {
        a.inverse(&Rationals)
    }
}

impl Algebra for Operators {
    fn scalar(&self, c: &Q) -> Matrix<Q> {
        self.one().map(|x| x * c)
    }
    fn scale(&self, a: &Matrix<Q>, c: &Q) -> Matrix<Q> {
        a.map(|x| x * c)
    }
    fn parity_split(&self, a: &Matrix<Q>) -> (Matrix<Q>, Matrix<Q>) {
        let n = a.rows();
        let pick =
            |odd: u32| {
                Matrix::from_fn(n, n, |r, c| {
                    if self.space.parity2(r + 1, c + 1) == odd {
                        a.get(r, c).clone()
                    } else {
                        Q::zero()
                    }
                })
            };
        (pick(0), pick(1))
    }
    fn scalar_value(&self, a: &Matrix<Q>) -> Option<Q> {
        let c = a.get(0, 0).clone();
        let n = a.rows();
        let ok = (0..n).all(|r| (0..n).all(|s| *a.get(r, s) == if r == s { c.clone() } else { Q::zero() }));
        ok.then_some(c)
    }
}

/// `End(C^{N|2m}) ⊗ Q(u)`.
#[derive(Clone, Debug)]
pub struct OperatorFunctions {
    size: usize,
}

impl OperatorFunctions {
    pub fn new(space: &SuperSpace) -> Self {
        OperatorFunctions { size: space.size() }
    }
}

impl Ring for OperatorFunctions {
    type Elem = Matrix<RatFun>;

    fn zero(&self) -> Matrix<RatFun> {
        Matrix::zeros(&RatFunField, self.size, self.size)
    }
    fn one(&self) -> Matrix<RatFun> {
        Matrix::identity(&RatFunField, self.size)
    }
    fn add(&self, a: &Matrix<RatFun>, b: &Matrix<RatFun>) -> Matrix<RatFun> {
        a.add(&RatFunField, b)
    }
    fn sub(&self, a: &Matrix<RatFun>, b: &Matrix<RatFun>) -> Matrix<RatFun> {
        a.sub(&RatFunField, b)
    }
    fn mul(&self, a: &Matrix<RatFun>, b: &Matrix<RatFun>) -> Matrix<RatFun> {
        a.mul(&RatFunField, b)
    }
    fn is_zero(&self, a: &Matrix<RatFun>) -> bool {
        a.is_zero(&RatFunField)
    }
    fn try_inv(&self, a: &Matrix<RatFun>) -> Option<Matrix<RatFun>> {
        a.inverse(&RatFunField)
    }
}

/// The evaluation assignment `T(u) ↦ R(u - a)`: writing
/// `R(u - a) = Σ e_ij ⊗ X_ij(u)`, the image of `t_ij(u)` is
/// `X_ij(u) (-1)^{īj̄+j̄}`.
#[derive(Clone, Debug)]
pub struct RepAssignment {
    space: SuperSpace,
    a: Q,
}

/// Number of `(u, v)` points at which the RTT gate is checked.
pub const RTT_GATE_POINTS: usize = 10;

impl RepAssignment {
    /// Builds the assignment and checks the RTT relation at
    /// [`RTT_GATE_POINTS`] seeded points.
    pub fn build(space: &SuperSpace, a: Q, seed: u64) -> Result<Self, RepError> {
        let rep = Self::unchecked(space, a);
        for (u, v) in rep.sample_pairs(seed, RTT_GATE_POINTS) {
            let res = rep.rtt_residual(&u, &v);
            if !res.is_zero() {
                return Err(RepError::RttFailure { u: fmt_q(&u), v: fmt_q(&v) });
            }
        }
        Ok(rep)
    }

    /// The assignment without the gate (for inspection and negative tests).
    pub fn unchecked(space: &SuperSpace, a: Q) -> Self {
        RepAssignment { space: space.clone(), a }
    }

    pub fn space(&self) -> &SuperSpace {
        &self.space
    }

    pub fn shift(&self) -> &Q {
        &self.a
    }

    fn kappa(&self) -> &Q {
        self.space.kappa()
    }

    /// `(k, l, c, pole)` with `ρ(t_ij(u)) = δ_ij + Σ c E_kl / (u - pole)`.
    fn pole_terms(&self, i: usize, j: usize) -> [(usize, usize, Q, Q); 2] {
        let sp = &self.space;
        let (pi, pj) = (sp.parity(i), sp.parity(j));
        let s = sign(pi * pj + pj);
        let p = -(&s * sign(pj));
        let qc = &s * sign(pi * pj) * sp.theta_q(i) * sp.theta_q(j);
        [(j, i, p, self.a.clone()), (sp.prime(i), sp.prime(j), qc, &self.a + self.kappa())]
    }

    /// `ρ(t_ij(u))` as a matrix of rational functions.
    pub fn t_image(&self, i: usize, j: usize) -> Matrix<RatFun> {
        let n = self.space.size();
        let mut m = Matrix::zeros(&RatFunField, n, n);
        if i == j {
            m = Matrix::identity(&RatFunField, n);
        }
        for (k, l, c, pole) in self.pole_terms(i, j) {
            let x = m.get(k - 1, l - 1).add(&RatFun::simple_pole(&pole).scale(&c));
            m.set(k - 1, l - 1, x);
        }
        m
    }

    /// `ρ(t_ij^(r))`, the `u^{-r}` coefficient.
    pub fn generator_image(&self, g: Gen) -> Matrix<Q> {
        self.coefficient_image(g.i(), g.j(), g.r())
    }

    /// Image of `t_ij^(r)`, including `t_ij^(0) = δ_ij`.
    pub fn coefficient_image(&self, i: usize, j: usize, r: usize) -> Matrix<Q> {
        let n = self.space.size();
        if r == 0 {
            return if i == j { Matrix::identity(&Rationals, n) } else { Matrix::zeros(&Rationals, n, n) };
        }
        let mut m = Matrix::zeros(&Rationals, n, n);
        for (k, l, c, pole) in self.pole_terms(i, j) {
            let x = m.get(k - 1, l - 1) + &(c * pow(&pole, r - 1));
            m.set(k - 1, l - 1, x);
        }
        m
    }

    /// The image of an element of the extended Yangian.
    pub fn image(&self, p: &NcPoly) -> Matrix<Q> {
        let ops = Operators::new(&self.space);
        let mut acc = ops.zero();
        for (word, c) in p.terms() {
            let mut m = ops.scalar(c);
            for &g in word.iter() {
                m = ops.mul(&m, &self.generator_image(g));
            }
            acc = ops.add(&acc, &m);
        }
        acc
    }

    pub fn series_image(&self, s: &TruncSeries<NcPoly>) -> TruncSeries<Matrix<Q>> {
        s.map(|p| self.image(p))
    }

    /// `[ρ(t_ij(u))]` as a block matrix.
    pub fn t_matrix(&self) -> Matrix<Matrix<RatFun>> {
        let n = self.space.size();
        Matrix::from_fn(n, n, |r, c| self.t_image(r + 1, c + 1))
    }

    /// `R12(u-v) T1(u) T2(v) - T2(v) T1(u) R12(u-v)` on `V^{⊗3}`, with the
    /// representation space in slot 3.
    pub fn rtt_residual(&self, u: &Q, v: &Q) -> SparseMatrix {
        let r12 = r_in_slots(&self.space, &RMatrixForm::standard(&self.space), &(u - v), 0, 1)
            .expect("sample points avoid poles");
        let t1 = self.t_in_slot(u, 0);
        let t2 = self.t_in_slot(v, 1);
        r12.mul(&t1).mul(&t2).sub(&t2.mul(&t1).mul(&r12))
    }

    fn t_in_slot(&self, u: &Q, slot: usize) -> SparseMatrix {
        let sp = &self.space;
        let mut terms: Vec<(Q, Vec<Placement>)> = Vec::new();
        for i in sp.indices() {
            for j in sp.indices() {
                let s = sign(sp.parity(i) * sp.parity(j) + sp.parity(j));
                let x = self.t_image(i, j);
                for k in sp.indices() {
                    for l in sp.indices() {
                        let val = x.get(k - 1, l - 1).eval(u).expect("sample points avoid poles");
                        if !val.is_zero() {
                            terms.push((&s * val, vec![(slot, i, j), (2, k, l)]));
                        }
                    }
                }
            }
        }
        embed(sp, 3, &terms)
    }

    /// Seeded `(u, v)` pairs avoiding every pole of `R(u-v)`, `T(u)`, `T(v)`.
    pub fn sample_pairs(&self, seed: u64, count: usize) -> Vec<(Q, Q)> {
        let mut rng = seeded(seed);
        let k = self.kappa().clone();
        let poles = [self.a.clone(), &self.a + &k];
        (0..count)
            .map(|_| {
                let u = rational_avoiding(&mut rng, 50, &poles);
                let v = rational_avoiding(&mut rng, 50, &[poles[0].clone(), poles[1].clone(), u.clone(), &u - &k]);
                (u, v)
            })
            .collect()
    }

    /// Gauss decomposition of the leading block of `ρ(T(u))`, performed over
    /// rational functions and then expanded at `u = ∞`.
    pub fn gauss(&self, order: usize, block: usize) -> Result<GaussData<Matrix<Q>>, RepError> {
        let d = self.gauss_functions(block)?;
        let expand = |m: &Matrix<RatFun>| expand_operator(m, order);
        let n = block;
        let mut bad = false;
        let mut take = |m: &Matrix<RatFun>| {
            expand(m).unwrap_or_else(|| {
                bad = true;
                TruncSeries::from_coeffs(Vec::new())
            })
        };
        let out = Ldu {
            f: Matrix::from_fn(n, n, |i, j| take(d.f.get(i, j))),
            h: d.h.iter().map(&mut take).collect(),
            e: Matrix::from_fn(n, n, |i, j| take(d.e.get(i, j))),
        };
        if bad {
            return Err(RepError::NotRegular);
        }
        Ok(GaussData::from_ldu(self.space.clone(), order, out))
    }

    /// Gauss factors of the leading block of `ρ(T(u))` as rational functions.
    pub fn gauss_functions(&self, block: usize) -> Result<Ldu<Matrix<RatFun>>, RepError> {
        let ring = OperatorFunctions::new(&self.space);
        let idx: Vec<usize> = (0..block).collect();
        Ok(ldu(&ring, &self.t_matrix().select(&idx, &idx))?)
    }

    /// `ρ(T(u-κ) T^t(u))` over rational functions.
    pub fn central_matrix(&self) -> Matrix<Matrix<RatFun>> {
        let ring = OperatorFunctions::new(&self.space);
        let t = self.t_matrix();
        let shifted = t.map(|m| m.map(|f| f.shift(&-self.kappa())));
        let tt = self.space.super_transpose(&ring, &t);
        shifted.mul(&ring, &tt)
    }
}

/// Entrywise expansion at `u = ∞` of an operator-valued rational function.
pub fn expand_operator(m: &Matrix<RatFun>, order: usize) -> Option<TruncSeries<Matrix<Q>>> {
    let n = m.rows();
    let mut coeffs = vec![Matrix::zeros(&Rationals, n, n); order + 1];
    for r in 0..n {
        for c in 0..n {
            let ex = m.get(r, c).expand_at_infinity(order)?;
            for (k, x) in ex.into_iter().enumerate() {
                coeffs[k].set(r, c, x);
            }
        }
    }
    Some(TruncSeries::from_coeffs(coeffs))
}

/// Whether `m` is `c(u)·1` for a single rational function `c(u)`.
pub fn scalar_function(m: &Matrix<RatFun>) -> Option<RatFun> {
    let n = m.rows();
    let c = m.get(0, 0).clone();
    let ok = (0..n).all(|r| (0..n).all(|s| if r == s { *m.get(r, s) == c } else { m.get(r, s).is_zero() }));
    ok.then_some(c)
}

impl RepAssignment {
    /// `ρ(t_ij(u))` at a point, `None` at a pole.
    pub fn t_image_at(&self, i: usize, j: usize, u: &Q) -> Option<Matrix<Q>> {
        let x = self.t_image(i, j);
        let n = self.space.size();
        let mut out = Matrix::zeros(&Rationals, n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, x.get(r, c).eval(u)?);
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn gate_accepts_every_desk_space() {
        for (n_big, m) in [(3, 1), (4, 1), (5, 1), (6, 1), (3, 2)] {
            let s = SuperSpace::new(n_big, m).unwrap();
            assert!(RepAssignment::build(&s, q(-7, 3), 9).is_ok(), "({n_big},{m})");
        }
    }

    #[test]
    fn coefficient_images_match_the_expansion_at_infinity() {
        let s = SuperSpace::new(4, 1).unwrap();
        let rep = RepAssignment::unchecked(&s, q(5, 2));
        for i in 1..=s.size() {
            for j in 1..=s.size() {
                let ex = expand_operator(&rep.t_image(i, j), 4).unwrap();
                for r in 0..=4 {
                    assert_eq!(ex.coeff(r), &rep.coefficient_image(i, j, r), "t_{i}{j}^({r})");
                }
            }
        }
    }

    #[test]
    fn images_are_linear_and_multiplicative() {
        let s = SuperSpace::new(3, 1).unwrap();
        let rep = RepAssignment::unchecked(&s, qi(2));
        let (a, b) = (Gen::new(1, 2, 1), Gen::new(3, 1, 2));
        let p = NcPoly::monomial([a, b].into_iter().collect(), qi(3)).add(&NcPoly::scalar(qi(1)));
        let ops = Operators::new(&s);
        let want = ops.add(&ops.scale(&ops.mul(&rep.generator_image(a), &rep.generator_image(b)), &qi(3)), &ops.one());
        assert_eq!(rep.image(&p), want);
    }
}
