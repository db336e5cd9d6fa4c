//! Truncated series in `u^{-1}` (and pairs `u^{-1}, v^{-1}`) over an
//! algebra context.

use num_traits::{One, Zero};

use crate::rational::{binom, pow, qi, sign, Q};
use crate::ring::{Algebra, Ring};

use super::engine::Engine;
use super::word::{Gen, NcPoly, PolyAcc};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("leading coefficient is not invertible")]
    NonUnitLeading,
    #[error("series has order {have}, need {need}")]
    TooShort { have: usize, need: usize },
    #[error("multiplier must have constant term 1")]
    NotNormalized,
}

/// `Σ_{r=0}^{order} c_r u^{-r}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> TruncSeries<E> {
    pub fn from_coeffs(coeffs: Vec<E>) -> Self {
        assert!(!coeffs.is_empty(), "a series keeps at least its constant term");
        TruncSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, r: usize) -> &E {
        &self.coeffs[r]
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn map<F: Clone>(&self, f: impl FnMut(&E) -> F) -> TruncSeries<F> {
        TruncSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order());
        TruncSeries { coeffs: self.coeffs[..=order].to_vec() }
    }
}

/// Series of a fixed order whose coefficients live in `alg`.
pub struct SeriesRing<'a, A> {
    alg: &'a A,
    order: usize,
}

impl<'a, A: Algebra> SeriesRing<'a, A> {
    pub fn new(alg: &'a A, order: usize) -> Self {
        SeriesRing { alg, order }
    }

    pub fn algebra(&self) -> &'a A {
        self.alg
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn from_fn(&self, mut f: impl FnMut(usize) -> A::Elem) -> TruncSeries<A::Elem> {
        TruncSeries { coeffs: (0..=self.order).map(&mut f).collect() }
    }

    pub fn constant(&self, c: A::Elem) -> TruncSeries<A::Elem> {
        self.from_fn(|r| if r == 0 { c.clone() } else { self.alg.zero() })
    }

    /// Brings a series of any order to this ring's order.
    pub fn fit(&self, s: &TruncSeries<A::Elem>) -> Result<TruncSeries<A::Elem>, SeriesError> {
        if s.order() < self.order {
            return Err(SeriesError::TooShort { have: s.order(), need: self.order });
        }
        Ok(s.truncate(self.order))
    }

    /// Two-sided inverse; the constant term must be an invertible scalar.
    pub fn invert(&self, s: &TruncSeries<A::Elem>) -> Result<TruncSeries<A::Elem>, SeriesError> {
        let a0 = self.alg.scalar_value(s.coeff(0)).filter(|c| !c.is_zero()).ok_or(SeriesError::NonUnitLeading)?;
        let inv0 = a0.recip();
        let mut out = vec![self.alg.scalar(&inv0)];
        for k in 1..=self.order {
            let mut acc = self.alg.zero();
            for j in 1..=k.min(s.order()) {
                acc = self.alg.add(&acc, &self.alg.mul(s.coeff(j), &out[k - j]));
            }
            out.push(self.alg.scale(&acc, &-inv0.clone()));
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// `s(u + a)`, from `(u+a)^{-r} = Σ_k C(-r,k) a^k u^{-r-k}`.
    pub fn shift(&self, s: &TruncSeries<A::Elem>, a: &Q) -> TruncSeries<A::Elem> {
        let mut out: Vec<A::Elem> = (0..=self.order).map(|_| self.alg.zero()).collect();
        out[0] = s.coeff(0).clone();
        for r in 1..=self.order.min(s.order()) {
            for k in 0..=self.order - r {
                let c = binom(&-qi(r as i64), k) * pow(a, k);
                if c.is_zero() {
                    continue;
                }
                out[r + k] = self.alg.add(&out[r + k], &self.alg.scale(s.coeff(r), &c));
            }
        }
        TruncSeries { coeffs: out }
    }

    pub fn scale(&self, s: &TruncSeries<A::Elem>, c: &Q) -> TruncSeries<A::Elem> {
        s.map(|x| self.alg.scale(x, c))
    }
}

impl<A: Algebra> Ring for SeriesRing<'_, A> {
    type Elem = TruncSeries<A::Elem>;

    fn zero(&self) -> Self::Elem {
        self.constant(self.alg.zero())
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.alg.one())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.from_fn(|r| self.alg.add(&a.coeffs[r], &b.coeffs[r]))
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.from_fn(|r| self.alg.sub(&a.coeffs[r], &b.coeffs[r]))
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.from_fn(|r| {
            let mut acc = self.alg.zero();
            for i in 0..=r {
                let (x, y) = (&a.coeffs[i], &b.coeffs[r - i]);
                if self.alg.is_zero(x) || self.alg.is_zero(y) {
                    continue;
                }
                acc = self.alg.add(&acc, &self.alg.mul(x, y));
            }
            acc
        })
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.map(|x| self.alg.neg(x))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.coeffs.iter().all(|x| self.alg.is_zero(x))
    }
    fn try_inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.invert(a).ok()
    }
}

impl<A: Algebra> Algebra for SeriesRing<'_, A> {
    fn scalar(&self, c: &Q) -> Self::Elem {
        self.constant(self.alg.scalar(c))
    }
    fn scale(&self, a: &Self::Elem, c: &Q) -> Self::Elem {
        SeriesRing::scale(self, a, c)
    }
    fn parity_split(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem) {
        let parts: Vec<_> = a.coeffs.iter().map(|x| self.alg.parity_split(x)).collect();
        (
            TruncSeries { coeffs: parts.iter().map(|p| p.0.clone()).collect() },
            TruncSeries { coeffs: parts.into_iter().map(|p| p.1).collect() },
        )
    }
    fn scalar_value(&self, a: &Self::Elem) -> Option<Q> {
        if a.coeffs[1..].iter().all(|x| self.alg.is_zero(x)) {
            self.alg.scalar_value(&a.coeffs[0])
        } else {
            None
        }
    }
}

/// `Σ c_{ab} u^{-a} v^{-b}` on the grid `0 ≤ a ≤ ka`, `0 ≤ b ≤ kb`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivarSeries<E> {
    ka: usize,
    kb: usize,
    grid: Vec<E>,
}

impl<E: Clone> BivarSeries<E> {
    pub fn from_fn(ka: usize, kb: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut grid = Vec::with_capacity((ka + 1) * (kb + 1));
        for a in 0..=ka {
            for b in 0..=kb {
                grid.push(f(a, b));
            }
        }
        BivarSeries { ka, kb, grid }
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.ka, self.kb)
    }

    pub fn coeff(&self, a: usize, b: usize) -> &E {
        &self.grid[a * (self.kb + 1) + b]
    }

    /// All grid points with their coefficients, `a` major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &E)> {
        let kb = self.kb;
        self.grid.iter().enumerate().map(move |(k, e)| (k / (kb + 1), k % (kb + 1), e))
    }
}

/// Bivariate operations over an algebra context.
pub struct Bivar<'a, A> {
    alg: &'a A,
}

impl<'a, A: Algebra> Bivar<'a, A> {
    pub fn new(alg: &'a A) -> Self {
        Bivar { alg }
    }

    pub fn zero(&self, ka: usize, kb: usize) -> BivarSeries<A::Elem> {
        BivarSeries::from_fn(ka, kb, |_, _| self.alg.zero())
    }

    /// `[f(u), g(v)]`.
    pub fn bracket(
        &self,
        f: &TruncSeries<A::Elem>,
        g: &TruncSeries<A::Elem>,
        ka: usize,
        kb: usize,
    ) -> BivarSeries<A::Elem> {
        BivarSeries::from_fn(ka, kb, |a, b| self.alg.supercomm(f.coeff(a), g.coeff(b)))
    }

    /// `f(u) - f(v)`.
    pub fn difference(&self, f: &TruncSeries<A::Elem>, ka: usize, kb: usize) -> BivarSeries<A::Elem> {
        BivarSeries::from_fn(ka, kb, |a, b| match (a, b) {
            (0, 0) => self.alg.zero(),
            (a, 0) => f.coeff(a).clone(),
            (0, b) => self.alg.neg(f.coeff(b)),
            _ => self.alg.zero(),
        })
    }

    /// `(f(u+s) - f(v)) / (u+s-v)`, using
    /// `(x^{-r} - v^{-r})/(x - v) = -Σ_{p+q=r+1} x^{-p} v^{-q}`.
    pub fn divided_difference(&self, f: &TruncSeries<A::Elem>, s: &Q, ka: usize, kb: usize) -> BivarSeries<A::Elem> {
        // weight[p][a]: coefficient of u^{-a} in (u+s)^{-p}
        let weight = |p: usize, a: usize| -> Q {
            if a < p {
                Q::zero()
            } else {
                binom(&-qi(p as i64), a - p) * pow(s, a - p)
            }
        };
        BivarSeries::from_fn(ka, kb, |a, b| {
            let mut acc = self.alg.zero();
            if b == 0 {
                return acc;
            }
            // r = p + b - 1 with 1 ≤ p ≤ a
            for p in 1..=a {
                let r = p + b - 1;
                if r > f.order() {
                    break;
                }
                let w = weight(p, a);
                if !w.is_zero() {
                    acc = self.alg.add(&acc, &self.alg.scale(f.coeff(r), &-w));
                }
            }
            acc
        })
    }

    /// `f(u)·X`.
    pub fn mul_u_left(&self, f: &TruncSeries<A::Elem>, x: &BivarSeries<A::Elem>) -> BivarSeries<A::Elem> {
        BivarSeries::from_fn(x.ka, x.kb, |a, b| {
            let mut acc = self.alg.zero();
            for i in 0..=a.min(f.order()) {
                acc = self.alg.add(&acc, &self.alg.mul(f.coeff(i), x.coeff(a - i, b)));
            }
            acc
        })
    }

    /// `X·f(u)`.
    pub fn mul_u_right(&self, x: &BivarSeries<A::Elem>, f: &TruncSeries<A::Elem>) -> BivarSeries<A::Elem> {
        BivarSeries::from_fn(x.ka, x.kb, |a, b| {
            let mut acc = self.alg.zero();
            for i in 0..=a.min(f.order()) {
                acc = self.alg.add(&acc, &self.alg.mul(x.coeff(a - i, b), f.coeff(i)));
            }
            acc
        })
    }

    /// `g(v)·X`.
    pub fn mul_v_left(&self, g: &TruncSeries<A::Elem>, x: &BivarSeries<A::Elem>) -> BivarSeries<A::Elem> {
        BivarSeries::from_fn(x.ka, x.kb, |a, b| {
            let mut acc = self.alg.zero();
            for i in 0..=b.min(g.order()) {
                acc = self.alg.add(&acc, &self.alg.mul(g.coeff(i), x.coeff(a, b - i)));
            }
            acc
        })
    }

    /// `X·g(v)`.
    pub fn mul_v_right(&self, x: &BivarSeries<A::Elem>, g: &TruncSeries<A::Elem>) -> BivarSeries<A::Elem> {
        BivarSeries::from_fn(x.ka, x.kb, |a, b| {
            let mut acc = self.alg.zero();
            for i in 0..=b.min(g.order()) {
                acc = self.alg.add(&acc, &self.alg.mul(x.coeff(a, b - i), g.coeff(i)));
            }
            acc
        })
    }

    /// `X·Y` for two bivariate series (grid of `x`).
    pub fn mul(&self, x: &BivarSeries<A::Elem>, y: &BivarSeries<A::Elem>) -> BivarSeries<A::Elem> {
        BivarSeries::from_fn(x.ka, x.kb, |a, b| {
            let mut acc = self.alg.zero();
            for i in 0..=a {
                for j in 0..=b {
                    if i > y.ka || j > y.kb {
                        continue;
                    }
                    let (p, q) = (x.coeff(a - i, b - j), y.coeff(i, j));
                    if self.alg.is_zero(p) || self.alg.is_zero(q) {
                        continue;
                    }
                    acc = self.alg.add(&acc, &self.alg.mul(p, q));
                }
            }
            acc
        })
    }

    pub fn add(&self, x: &BivarSeries<A::Elem>, y: &BivarSeries<A::Elem>) -> BivarSeries<A::Elem> {
        BivarSeries::from_fn(x.ka, x.kb, |a, b| self.alg.add(x.coeff(a, b), y.coeff(a, b)))
    }

    pub fn sub(&self, x: &BivarSeries<A::Elem>, y: &BivarSeries<A::Elem>) -> BivarSeries<A::Elem> {
        BivarSeries::from_fn(x.ka, x.kb, |a, b| self.alg.sub(x.coeff(a, b), y.coeff(a, b)))
    }

    pub fn scale(&self, x: &BivarSeries<A::Elem>, c: &Q) -> BivarSeries<A::Elem> {
        BivarSeries::from_fn(x.ka, x.kb, |a, b| self.alg.scale(x.coeff(a, b), c))
    }

    /// Grid points `(a, b)` inside `region` where `x` is nonzero.
    pub fn support(&self, x: &BivarSeries<A::Elem>, region: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
        x.entries().filter(|&(a, b, e)| region(a, b) && !self.alg.is_zero(e)).map(|(a, b, _)| (a, b)).collect()
    }
}

/// The anti-automorphism `τ: t_ij(u) ↦ t_ji(u)(-1)^{īj̄+j̄}`, with
/// `τ(ab) = τ(b)τ(a)(-1)^{p(a)p(b)}`; the result is in normal form.
pub fn apply_tau(engine: &Engine, p: &NcPoly) -> NcPoly {
    let sp = engine.space();
    let mut out = PolyAcc::new();
    for (w, c) in p.terms() {
        let odd = w.iter().filter(|&&g| engine.gen_parity(g) == 1).count() as u32;
        let mut coef = c * sign(odd * odd.saturating_sub(1) / 2);
        let mut raw = Vec::with_capacity(w.len());
        for &g in w.iter().rev() {
            let (i, j) = (g.i(), g.j());
            coef *= sign(sp.parity(i) * sp.parity(j) + sp.parity(j));
            raw.push(Gen::new(j, i, g.r()));
        }
        out.add_scaled(&engine.nf_word(&raw), &coef);
    }
    out.finish()
}

/// The automorphism `μ_f: t_ij(u) ↦ f(u) t_ij(u)`; `f[0]` must be 1.
pub fn apply_mu_f(engine: &Engine, p: &NcPoly, f: &[Q]) -> Result<NcPoly, SeriesError> {
    if f.first().is_none_or(|c| !c.is_one()) {
        return Err(SeriesError::NotNormalized);
    }
    let image = |g: Gen| -> NcPoly {
        let mut out = PolyAcc::new();
        for s in 0..=g.r() {
            let fs = f.get(s).cloned().unwrap_or_else(Q::zero);
            if fs.is_zero() {
                continue;
            }
            let r = g.r() - s;
            if r == 0 {
                if g.i() == g.j() {
                    out.push(Default::default(), fs);
                }
            } else {
                out.push(smallvec::smallvec![Gen::new(g.i(), g.j(), r)], fs);
            }
        }
        out.finish()
    };
    Ok(engine.normalize(&p.substitute(image)))
}

/// `μ_f` applied to a series of engine elements, coefficientwise.
pub fn apply_mu_f_series(
    engine: &Engine,
    s: &TruncSeries<NcPoly>,
    f: &[Q],
) -> Result<TruncSeries<NcPoly>, SeriesError> {
    let coeffs = s.coeffs().iter().map(|c| apply_mu_f(engine, c, f)).collect::<Result<Vec<_>, _>>()?;
    Ok(TruncSeries::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::ring::Rationals;

    fn ser(v: &[i64]) -> TruncSeries<Q> {
        TruncSeries::from_coeffs(v.iter().map(|&x| qi(x)).collect())
    }

    #[test]
    fn geometric_inverse() {
        let ring = SeriesRing::new(&Rationals, 5);
        let inv = ring.invert(&ser(&[1, 3, 0, 0, 0, 0])).unwrap();
        assert_eq!(inv, ser(&[1, -3, 9, -27, 81, -243]));
        assert_eq!(ring.mul(&inv, &ser(&[1, 3, 0, 0, 0, 0])), ring.one());
        assert_eq!(ring.invert(&ser(&[0, 1, 0, 0, 0, 0])), Err(SeriesError::NonUnitLeading));
    }

    #[test]
    fn shift_of_u_inverse() {
        // (u+a)^{-1} = u^{-1} - a u^{-2} + a² u^{-3} - ...
        let ring = SeriesRing::new(&Rationals, 4);
        let a = q(2, 3);
        let s = ring.shift(&ser(&[1, 1, 0, 0, 0]), &a);
        let want = TruncSeries::from_coeffs(vec![qi(1), qi(1), -a.clone(), a.clone() * &a, -(a.clone() * &a * &a)]);
        assert_eq!(s, want);
        let t = ser(&[1, 4, -2, 7, 5]);
        assert_eq!(ring.shift(&t, &Q::zero()), t);
        let b = q(-5, 2);
        assert_eq!(ring.shift(&ring.shift(&t, &a), &b), ring.shift(&t, &(a + b)));
    }

    #[test]
    fn divided_difference_low_orders() {
        let bv = Bivar::new(&Rationals);
        let dd1 = bv.divided_difference(&ser(&[5, 1, 0]), &Q::zero(), 2, 2);
        let dd2 = bv.divided_difference(&ser(&[5, 0, 1]), &Q::zero(), 2, 2);
        for (a, b, c) in dd1.entries() {
            let want = if (a, b) == (1, 1) { qi(-1) } else { qi(0) };
            assert_eq!(*c, want, "u^-1 at ({a},{b})");
        }
        for (a, b, c) in dd2.entries() {
            let want = if a + b == 3 && a >= 1 && b >= 1 { qi(-1) } else { qi(0) };
            assert_eq!(*c, want, "u^-2 at ({a},{b})");
        }
    }

    #[test]
    fn divided_difference_times_difference_is_difference() {
        // (u - v)·DD(f) = f(u) - f(v), checked as: coefficient (a,b) of u·DD
        // minus v·DD equals the difference series.
        let bv = Bivar::new(&Rationals);
        let f = ser(&[0, 2, -1, 3, 4, 1]);
        let s = q(-1, 2);
        let dd = bv.divided_difference(&f, &s, 5, 5);
        let fs = SeriesRing::new(&Rationals, 5).shift(&f, &s);
        for a in 0..5 {
            for b in 0..5 {
                // (u + s - v)·DD at (a,b) = DD(a+1,b) + s·DD(a,b) - DD(a,b+1)
                let lhs = dd.coeff(a + 1, b) + s.clone() * dd.coeff(a, b) - dd.coeff(a, b + 1);
                let rhs = match (a, b) {
                    (0, 0) => qi(0),
                    (a, 0) => fs.coeff(a).clone(),
                    (0, b) => -f.coeff(b).clone(),
                    _ => qi(0),
                };
                assert_eq!(lhs, rhs, "({a},{b})");
            }
        }
    }
}
