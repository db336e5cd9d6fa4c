//! Generators `t_ij^(r)`, ordered words and exact linear combinations of words.

use std::fmt;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::rational::{fmt_q, Q};

/// `t_ij^(r)` packed as `i << 20 | j << 12 | r`, so that the numeric order is
/// the monomial order: lexicographic in `(i, j, r)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen(u32);

impl Gen {
    pub fn new(i: usize, j: usize, r: usize) -> Self {
        debug_assert!(i < 256 && j < 256 && (1..4096).contains(&r));
        Gen(((i as u32) << 20) | ((j as u32) << 12) | r as u32)
    }

    pub fn i(self) -> usize {
        (self.0 >> 20) as usize
    }

    pub fn j(self) -> usize {
        ((self.0 >> 12) & 0xff) as usize
    }

    pub fn r(self) -> usize {
        (self.0 & 0xfff) as usize
    }

    /// Filtration degree `r - 1`.
    pub fn degree(self) -> usize {
        self.r() - 1
    }
}

impl fmt::Debug for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t({},{})^({})", self.i(), self.j(), self.r())
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub type Word = SmallVec<[Gen; 4]>;

/// Finite rational combination of words; the empty word is the unit.
/// Terms are kept sorted by word, with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NcPoly {
    terms: Vec<(Word, Q)>,
}

/// Unsorted accumulator; [`PolyAcc::finish`] merges into a canonical [`NcPoly`].
#[derive(Default)]
pub struct PolyAcc {
    terms: Vec<(Word, Q)>,
}

impl PolyAcc {
    pub fn new() -> Self {
        PolyAcc::default()
    }

    pub fn push(&mut self, word: Word, c: Q) {
        if !c.is_zero() {
            self.terms.push((word, c));
        }
    }

    pub fn add_scaled(&mut self, p: &NcPoly, c: &Q) {
        if c.is_zero() {
            return;
        }
        if c.is_one() {
            self.terms.extend(p.terms.iter().cloned());
        } else {
            self.terms.extend(p.terms.iter().map(|(w, a)| (w.clone(), a * c)));
        }
    }

    pub fn finish(mut self) -> NcPoly {
        self.terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Word, Q)> = Vec::with_capacity(self.terms.len());
        for (w, c) in self.terms {
            match out.last_mut() {
                Some((lw, lc)) if *lw == w => *lc += c,
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((w, c));
                }
            }
        }
        if out.last().is_some_and(|(_, c)| c.is_zero()) {
            out.pop();
        }
        NcPoly { terms: out }
    }
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn scalar(c: Q) -> Self {
        NcPoly::monomial(Word::new(), c)
    }

    pub fn one() -> Self {
        NcPoly::scalar(Q::one())
    }

    pub fn monomial(word: Word, c: Q) -> Self {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly { terms: vec![(word, c)] }
    }

    pub fn generator(g: Gen) -> Self {
        NcPoly::monomial(smallvec::smallvec![g], Q::one())
    }

    pub fn add_term(&mut self, word: Word, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.binary_search_by(|(w, _)| w.cmp(&word)) {
            Ok(k) => {
                self.terms[k].1 += c;
                if self.terms[k].1.is_zero() {
                    self.terms.remove(k);
                }
            }
            Err(k) => self.terms.insert(k, (word, c)),
        }
    }

    pub fn add_scaled(&mut self, other: &NcPoly, c: &Q) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut acc = PolyAcc::new();
        acc.terms = std::mem::take(&mut self.terms);
        acc.add_scaled(other, c);
        *self = acc.finish();
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Q)> {
        self.terms.iter().map(|(w, c)| (w, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, word: &[Gen]) -> Q {
        match self.terms.binary_search_by(|(w, _)| w.as_slice().cmp(word)) {
            Ok(k) => self.terms[k].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    /// `Some(c)` when the polynomial is `c` times the unit.
    pub fn scalar_value(&self) -> Option<Q> {
        match self.terms.as_slice() {
            [] => Some(Q::zero()),
            [(w, c)] if w.is_empty() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Q) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly { terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect() }
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out.add_scaled(other, &Q::one());
        out
    }

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        out
    }

    pub fn neg(&self) -> NcPoly {
        self.scale(&-Q::one())
    }

    /// Largest filtration degree `Σ (r-1)` over the words present.
    pub fn filtration_degree(&self) -> Option<usize> {
        self.terms.iter().map(|(w, _)| w.iter().map(|g| g.degree()).sum()).max()
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.iter().map(|(w, _)| w.len()).max().unwrap_or(0)
    }

    /// Applies a generator-wise linear substitution, producing raw (not
    /// normalized) words.
    pub fn substitute(&self, mut f: impl FnMut(Gen) -> NcPoly) -> NcPoly {
        let mut out = PolyAcc::new();
        for (w, c) in &self.terms {
            let mut acc = NcPoly::scalar(c.clone());
            for &g in w {
                acc = raw_product(&acc, &f(g));
            }
            out.add_scaled(&acc, &Q::one());
        }
        out.finish()
    }
}

/// Concatenation product without any rewriting.
pub fn raw_product(a: &NcPoly, b: &NcPoly) -> NcPoly {
    let mut out = PolyAcc::new();
    for (x, c) in a.terms() {
        for (y, d) in b.terms() {
            let mut w = x.clone();
            w.extend_from_slice(y);
            out.push(w, c * d);
        }
    }
    out.finish()
}

impl fmt::Display for NcPoly {
    /// Deterministic text form, e.g. `t(1,2)^(1)*t(2,1)^(1) - 1/2*t(1,1)^(2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms().enumerate() {
            let neg = c < &Q::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if w.is_empty() {
                write!(f, "{}", fmt_q(&mag))?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{}*", fmt_q(&mag))?;
            }
            for (n, g) in w.iter().enumerate() {
                if n > 0 {
                    write!(f, "*")?;
                }
                write!(f, "{g}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use smallvec::smallvec;

    #[test]
    fn packing_orders_lexicographically() {
        let a = Gen::new(1, 5, 3);
        assert_eq!((a.i(), a.j(), a.r()), (1, 5, 3));
        assert!(Gen::new(1, 5, 3) < Gen::new(2, 1, 1));
        assert!(Gen::new(2, 1, 9) < Gen::new(2, 2, 1));
        assert!(Gen::new(2, 2, 1) < Gen::new(2, 2, 2));
    }

    #[test]
    fn display_is_stable() {
        let mut p = NcPoly::zero();
        p.add_term(smallvec![Gen::new(1, 2, 1), Gen::new(2, 1, 1)], q(1, 1));
        p.add_term(smallvec![Gen::new(1, 1, 2)], q(-1, 2));
        p.add_term(Word::new(), q(3, 1));
        assert_eq!(p.to_string(), "3 - 1/2*t(1,1)^(2) + t(1,2)^(1)*t(2,1)^(1)");
        assert_eq!(NcPoly::zero().to_string(), "0");
    }

    #[test]
    fn cancellation_removes_terms() {
        let g = NcPoly::generator(Gen::new(1, 1, 1));
        assert!(g.sub(&g).is_zero());
        assert_eq!(g.scalar_value(), None);
        assert_eq!(NcPoly::scalar(q(2, 3)).scalar_value(), Some(q(2, 3)));
    }
}
