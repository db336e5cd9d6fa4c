use std::fmt;

use num_traits::{One, Zero};

use crate::poly::Poly;
use crate::rational::Q;
use crate::ring::{Algebra, Ring};

/// `num/den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    /// `None` for a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        let g = Poly::gcd(&num, &den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.lead();
        Some(RatFun { num: num.scale(&lead.recip()), den: den.monic() })
    }

    pub fn poly(p: Poly) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    pub fn constant(c: Q) -> Self {
        Self::poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        Self::poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::poly(Poly::one())
    }

    /// `1/(u - a)`.
    pub fn simple_pole(a: &Q) -> Self {
        RatFun { num: Poly::one(), den: Poly::linear_root(a) }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn constant_value(&self) -> Option<Q> {
        (self.den == Poly::one() && self.num.degree().unwrap_or(0) == 0).then(|| self.num.coeff(0))
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(&self.num + &o.num, self.den.clone()).unwrap();
        }
        Self::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den).unwrap()
    }

    pub fn neg(&self) -> Self {
        RatFun { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        Self::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Option<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// `None` at a pole.
    pub fn eval(&self, x: &Q) -> Option<Q> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    /// `f(u + s)`.
    pub fn shift(&self, s: &Q) -> Self {
        RatFun { num: shift_poly(&self.num, s), den: shift_poly(&self.den, s) }
    }

    /// Coefficients of `u^0, u^{-1}, …, u^{-order}` of the expansion at
    /// `u = ∞`; `None` when the function grows there.
    pub fn expand_at_infinity(&self, order: usize) -> Option<Vec<Q>> {
        if self.is_zero() {
            return Some(vec![Q::zero(); order + 1]);
        }
        let d = self.den.degree().unwrap();
        let dn = self.num.degree().unwrap();
        if dn > d {
            return None;
        }
        // In w = 1/u: num/den = ñ(w)/d̃(w) with d̃(0) = 1.
        let nt: Vec<Q> = (0..=d).map(|k| self.num.coeff(d - k)).collect();
        let dt: Vec<Q> = (0..=d).map(|k| self.den.coeff(d - k)).collect();
        let mut out: Vec<Q> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut c = nt.get(k).cloned().unwrap_or_else(Q::zero);
            for j in 1..=k.min(d) {
                c -= &dt[j] * &out[k - j];
            }
            out.push(c);
        }
        Some(out)
    }
}

fn shift_poly(p: &Poly, s: &Q) -> Poly {
    let lin = Poly::new(vec![s.clone(), Q::one()]);
    let mut out = Poly::zero();
    for c in p.coeffs().iter().rev() {
        out = &(&out * &lin) + &Poly::constant(c.clone());
    }
    out
}

fn fmt_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        parts.push(match k {
            0 => format!("{c}"),
            1 => format!("{c}*u"),
            _ => format!("{c}*u^{k}"),
        });
    }
    parts.join(" + ")
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{}", fmt_poly(&self.num))
        } else {
            write!(f, "({})/({})", fmt_poly(&self.num), fmt_poly(&self.den))
        }
    }
}

/// The field `Q(u)`, all elements even.
#[derive(Clone, Copy, Debug, Default)]
pub struct RatFunField;

impl Ring for RatFunField {
    type Elem = RatFun;

    fn zero(&self) -> RatFun {
        RatFun::zero()
    }
    fn one(&self) -> RatFun {
        RatFun::one()
    }
    fn add(&self, a: &RatFun, b: &RatFun) -> RatFun {
        a.add(b)
    }
    fn sub(&self, a: &RatFun, b: &RatFun) -> RatFun {
        a.sub(b)
    }
    fn mul(&self, a: &RatFun, b: &RatFun) -> RatFun {
        a.mul(b)
    }
    fn neg(&self, a: &RatFun) -> RatFun {
        a.neg()
    }
    fn is_zero(&self, a: &RatFun) -> bool {
        a.is_zero()
    }
    fn try_inv(&self, a: &RatFun) -> Option<RatFun> {
        a.inv()
    }
}

impl Algebra for RatFunField {
    fn scalar(&self, c: &Q) -> RatFun {
        RatFun::constant(c.clone())
    }
    fn scale(&self, a: &RatFun, c: &Q) -> RatFun {
        a.scale(c)
    }
    fn parity_split(&self, a: &RatFun) -> (RatFun, RatFun) {
        (a.clone(), RatFun::zero())
    }
    fn scalar_value(&self, a: &RatFun) -> Option<Q> {
        a.constant_value()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn lin(a: i64) -> Poly {
        Poly::linear_root(&qi(a))
    }

    #[test]
    fn canonical_form() {
        // (u-1)(u-2) / (2(u-1)) = (u-2)/2
        let f = RatFun::new(&lin(1) * &lin(2), lin(1).scale(&qi(2))).unwrap();
        assert_eq!(f, RatFun::poly(lin(2).scale(&q(1, 2))));
        assert!(RatFun::new(Poly::one(), Poly::zero()).is_none());
        let g = RatFun::simple_pole(&qi(3));
        assert_eq!(g.add(&g.neg()), RatFun::zero());
        assert_eq!(g.mul(&g.inv().unwrap()), RatFun::one());
    }

    #[test]
    fn expansion_of_simple_pole() {
        // 1/(u-a) = Σ a^{r-1} u^{-r}
        let e = RatFun::simple_pole(&qi(2)).expand_at_infinity(4).unwrap();
        assert_eq!(e, vec![qi(0), qi(1), qi(2), qi(4), qi(8)]);
        let u = RatFun::poly(Poly::x());
        assert!(u.expand_at_infinity(2).is_none());
        // u/(u-1) = 1 + u^{-1} + u^{-2} + …
        let f = u.mul(&RatFun::simple_pole(&qi(1)));
        assert_eq!(f.expand_at_infinity(3).unwrap(), vec![qi(1); 4]);
    }

    #[test]
    fn shift_and_eval() {
        let f = RatFun::simple_pole(&qi(3)).shift(&qi(1));
        assert_eq!(f, RatFun::simple_pole(&qi(2)));
        assert_eq!(f.eval(&qi(4)), Some(q(1, 2)));
        assert_eq!(f.eval(&qi(2)), None);
    }
}
