//! Ring and graded-algebra contexts.
//!
//! Elements carry no arithmetic of their own; a context value supplies it.
//! This lets the quasideterminant and Gauss routines run unchanged over
//! rationals, rational functions, operator blocks and truncated series whose
//! coefficients live in the rewriting engine.

use num_traits::{One, Zero};

use crate::rational::Q;

pub trait Ring {
    type Elem: Clone + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.zero(), a)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Two-sided inverse when it exists (and can be found).
    fn try_inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

/// A Z2-graded associative algebra over the rationals.
pub trait Algebra: Ring {
    fn scalar(&self, c: &Q) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: &Q) -> Self::Elem;
    /// Splits an element into its even and odd components.
    fn parity_split(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem);
    /// `Some(c)` when the element equals `c` times the unit.
    fn scalar_value(&self, a: &Self::Elem) -> Option<Q>;

    /// Super-commutator `ab - (-1)^{p(a)p(b)} ba`, extended bilinearly.
    fn supercomm(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let (a0, a1) = self.parity_split(a);
        let (b0, b1) = self.parity_split(b);
        let mut acc = self.zero();
        for (x, odd_x) in [(&a0, false), (&a1, true)] {
            if self.is_zero(x) {
                continue;
            }
            for (y, odd_y) in [(&b0, false), (&b1, true)] {
                if self.is_zero(y) {
                    continue;
                }
                let xy = self.mul(x, y);
                let yx = self.mul(y, x);
                let term = if odd_x && odd_y { self.add(&xy, &yx) } else { self.sub(&xy, &yx) };
                acc = self.add(&acc, &term);
            }
        }
        acc
    }

    /// Anticommutator `ab + ba`.
    fn anticomm(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(&self.mul(a, b), &self.mul(b, a))
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = Q;

    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn sub(&self, a: &Q, b: &Q) -> Q {
        a - b
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn neg(&self, a: &Q) -> Q {
        -a
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
    fn try_inv(&self, a: &Q) -> Option<Q> {
        (!a.is_zero()).then(|| a.recip())
    }
}

impl Algebra for Rationals {
    fn scalar(&self, c: &Q) -> Q {
        c.clone()
    }
    fn scale(&self, a: &Q, c: &Q) -> Q {
        a * c
    }
    fn parity_split(&self, a: &Q) -> (Q, Q) {
        (a.clone(), Q::zero())
    }
    fn scalar_value(&self, a: &Q) -> Option<Q> {
        Some(a.clone())
    }
}
