//! Exact rational scalars.
//!
//! Almost every coefficient met in practice fits in a machine word, so values
//! are stored as reduced `i64` fractions and promoted to `BigRational` only
//! when an intermediate result overflows. The representation is canonical
//! (a value is big only if it does not fit), so equality and hashing are
//! structural.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone)]
pub enum Q {
    /// `num / den` with `den > 0` and `gcd(num, den) = 1`.
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Q {
    fn from_i128(num: i128, den: i128) -> Q {
        debug_assert!(den != 0);
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Q::Small(n, d),
            _ => Q::from_big(BigRational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    /// Canonical value of an arbitrary precision rational.
    pub fn from_big(x: BigRational) -> Q {
        match (x.numer().to_i64(), x.denom().to_i64()) {
            (Some(n), Some(d)) => Q::Small(n, d),
            _ => Q::Big(Box::new(x)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Q::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Q::Big(b) => (**b).clone(),
        }
    }

    pub fn from_integer(n: BigInt) -> Q {
        Q::from_big(BigRational::from_integer(n))
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Q::Small(n, _) => BigInt::from(*n),
            Q::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Q::Small(_, d) => BigInt::from(*d),
            Q::Big(b) => b.denom().clone(),
        }
    }

    pub fn recip(&self) -> Q {
        match self {
            Q::Small(0, _) => panic!("reciprocal of zero"),
            Q::Small(n, d) => Q::from_i128(*d as i128, *n as i128),
            Q::Big(b) => Q::from_big(b.recip()),
        }
    }

    pub fn abs(&self) -> Q {
        if *self < Q::zero() {
            -self
        } else {
            self.clone()
        }
    }
}

fn add_q(a: &Q, b: &Q) -> Q {
    if let (Q::Small(an, ad), Q::Small(bn, bd)) = (a, b) {
        if let Some(r) = add_small(*an, *ad, *bn, *bd) {
            return r;
        }
        let (an, ad, bn, bd) = (*an as i128, *ad as i128, *bn as i128, *bd as i128);
        return Q::from_i128(an * bd + bn * ad, ad * bd);
    }
    Q::from_big(a.to_big() + b.to_big())
}

fn add_small(an: i64, ad: i64, bn: i64, bd: i64) -> Option<Q> {
    if an == i64::MIN || bn == i64::MIN {
        return None;
    }
    if ad == 1 && bd == 1 {
        return an.checked_add(bn).map(|n| Q::Small(n, 1));
    }
    if ad == bd {
        let n = an.checked_add(bn)?;
        let g = n.gcd(&ad);
        return Some(Q::Small(n / g, ad / g));
    }
    let g = ad.gcd(&bd);
    let (ad_g, bd_g) = (ad / g, bd / g);
    let n = an.checked_mul(bd_g)?.checked_add(bn.checked_mul(ad_g)?)?;
    let d = ad.checked_mul(bd_g)?;
    let h = n.gcd(&g);
    Some(Q::Small(n / h, d / h))
}

fn mul_q(a: &Q, b: &Q) -> Q {
    if let (Q::Small(an, ad), Q::Small(bn, bd)) = (a, b) {
        if *an == 0 || *bn == 0 {
            return Q::Small(0, 1);
        }
        if let Some(r) = mul_small(*an, *ad, *bn, *bd) {
            return r;
        }
        let (an, ad, bn, bd) = (*an as i128, *ad as i128, *bn as i128, *bd as i128);
        let g1 = an.gcd(&bd);
        let g2 = bn.gcd(&ad);
        return Q::from_i128((an / g1) * (bn / g2), (ad / g2) * (bd / g1));
    }
    Q::from_big(a.to_big() * b.to_big())
}

fn mul_small(an: i64, ad: i64, bn: i64, bd: i64) -> Option<Q> {
    if an == i64::MIN || bn == i64::MIN {
        return None;
    }
    if ad == 1 && bd == 1 {
        return an.checked_mul(bn).map(|n| Q::Small(n, 1));
    }
    let g1 = an.gcd(&bd);
    let g2 = bn.gcd(&ad);
    let n = (an / g1).checked_mul(bn / g2)?;
    let d = (ad / g2).checked_mul(bd / g1)?;
    Some(Q::Small(n, d))
}

fn neg_q(a: &Q) -> Q {
    match a {
        Q::Small(n, d) => match n.checked_neg() {
            Some(m) => Q::Small(m, *d),
            None => Q::from_big(-a.to_big()),
        },
        Q::Big(b) => Q::from_big(-(**b).clone()),
    }
}

impl PartialEq for Q {
    fn eq(&self, other: &Q) -> bool {
        match (self, other) {
            (Q::Small(a, b), Q::Small(c, d)) => a == c && b == d,
            (Q::Big(a), Q::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Q {}

impl Hash for Q {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Q::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Q::Big(b) => {
                1u8.hash(state);
                b.hash(state);
            }
        }
    }
}

impl Ord for Q {
    fn cmp(&self, other: &Q) -> Ordering {
        match (self, other) {
            (Q::Small(a, b), Q::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, other: &Q) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:expr) => {
        impl $tr<&Q> for &Q {
            type Output = Q;
            fn $m(self, o: &Q) -> Q {
                $f(self, o)
            }
        }
        impl $tr<Q> for &Q {
            type Output = Q;
            fn $m(self, o: Q) -> Q {
                $f(self, &o)
            }
        }
        impl $tr<&Q> for Q {
            type Output = Q;
            fn $m(self, o: &Q) -> Q {
                $f(&self, o)
            }
        }
        impl $tr<Q> for Q {
            type Output = Q;
            fn $m(self, o: Q) -> Q {
                $f(&self, &o)
            }
        }
    };
}

binop!(Add, add, add_q);
binop!(Sub, sub, |a: &Q, b: &Q| add_q(a, &neg_q(b)));
binop!(Mul, mul, mul_q);
binop!(Div, div, |a: &Q, b: &Q| mul_q(a, &b.recip()));

macro_rules! assignop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr<&Q> for Q {
            fn $m(&mut self, o: &Q) {
                *self = &*self $op o;
            }
        }
        impl $tr<Q> for Q {
            fn $m(&mut self, o: Q) {
                *self = &*self $op &o;
            }
        }
    };
}

assignop!(AddAssign, add_assign, +);
assignop!(SubAssign, sub_assign, -);
assignop!(MulAssign, mul_assign, *);
assignop!(DivAssign, div_assign, /);

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        neg_q(&self)
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        neg_q(self)
    }
}

impl Zero for Q {
    fn zero() -> Q {
        Q::Small(0, 1)
    }
    fn is_zero(&self) -> bool {
        matches!(self, Q::Small(0, _))
    }
}

impl One for Q {
    fn one() -> Q {
        Q::Small(1, 1)
    }
    fn is_one(&self) -> bool {
        matches!(self, Q::Small(1, 1))
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_q(self))
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_q(self))
    }
}

impl Default for Q {
    fn default() -> Q {
        Q::zero()
    }
}

/// `n / d` as an exact rational.
pub fn q(n: i64, d: i64) -> Q {
    assert!(d != 0, "zero denominator");
    Q::from_i128(n as i128, d as i128)
}

/// The integer `n` as a rational.
pub fn qi(n: i64) -> Q {
    Q::Small(n, 1)
}

/// `(-1)^p` for a parity (or any integer exponent).
pub fn sign(p: u32) -> Q {
    if p.is_multiple_of(2) {
        Q::one()
    } else {
        -Q::one()
    }
}

/// Binomial coefficient `C(x, k)` for a rational upper argument.
pub fn binom(x: &Q, k: usize) -> Q {
    let mut acc = Q::one();
    for i in 0..k {
        acc = acc * (x - qi(i as i64)) / qi(i as i64 + 1);
    }
    acc
}

/// `x^k` for a rational base and small exponent.
pub fn pow(x: &Q, k: usize) -> Q {
    let mut acc = Q::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

/// Compact textual form: `3`, `-1/2`.
pub fn fmt_q(x: &Q) -> String {
    match x {
        Q::Small(n, 1) => n.to_string(),
        Q::Small(n, d) => format!("{n}/{d}"),
        Q::Big(b) if b.denom().is_one() => b.numer().to_string(),
        Q::Big(b) => format!("{}/{}", b.numer(), b.denom()),
    }
}

/// Parses the output of [`fmt_q`].
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::from_big(BigRational::new(n, d)))
            }
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

/// `true` when `|x| = 1`.
pub fn is_unit(x: &Q) -> bool {
    x.to_big().abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomial_with_negative_argument() {
        // C(-2, k) = (-1)^k (k + 1)
        for k in 0..6 {
            assert_eq!(binom(&qi(-2), k), sign(k as u32) * qi(k as i64 + 1));
        }
        assert_eq!(binom(&q(1, 2), 2), q(-1, 8));
    }

    #[test]
    fn format_and_parse() {
        for x in [q(3, 1), q(-1, 2), q(0, 5), q(22, -7)] {
            assert_eq!(parse_q(&fmt_q(&x)), Some(x));
        }
        assert_eq!(parse_q("1/0"), None);
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = qi(i64::MAX) * qi(4);
        assert!(matches!(big, Q::Big(_)));
        let back = &big / qi(8);
        assert_eq!(back, q(i64::MAX, 2));
        assert!(matches!(back, Q::Small(..)));
        assert_eq!(-qi(i64::MIN), Q::from_integer(-BigInt::from(i64::MIN)));
    }

    fn small() -> impl Strategy<Value = (i64, i64)> {
        (-1_000_000_007i64..1_000_000_007, 1i64..1_000_000_007)
    }

    fn big_of((n, d): (i64, i64)) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    proptest! {
        // Oracle: plain BigRational arithmetic.
        #[test]
        fn agrees_with_bigrational(a in small(), b in small(), c in small()) {
            let (x, y, z) = (q(a.0, a.1), q(b.0, b.1), q(c.0, c.1));
            let (bx, by, bz) = (big_of(a), big_of(b), big_of(c));
            prop_assert_eq!((&x * &y * &z).to_big(), &bx * &by * &bz);
            prop_assert_eq!((&x + &y - &z).to_big(), &bx + &by - &bz);
            prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
            if !y.is_zero() {
                prop_assert_eq!((&x / &y).to_big(), &bx / &by);
            }
            prop_assert_eq!(Q::from_big(bx.clone() * &by), &x * &y);
        }
    }
}
