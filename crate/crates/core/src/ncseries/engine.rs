//! The straightening engine.
//!
//! Words are kept in normal form: ordered (lexicographic in `(i, j, r)`),
//! free of repeated odd letters, and built only from the independent
//! generators. The remaining `t_ij^(r)` are eliminated through the entries of
//! `T(u-κ) T^t(u) = c(u)·1`, which tie `t_ij^(r)` to `t_{j'i'}^(r)` modulo
//! lower terms; `c_r` itself is expressed through `t_11^(r)` and `t_{1'1'}^(r)`.
//! The independent set is the one from the PBW theorem: `i + j ≤ N+2m+1` for
//! odd `i`, `i + j < N+2m+1` for even `i`, plus `t_{1'1'}` standing in for `c`.
//!
//! Commutators of generators come from the explicit relation written with
//! cleared denominators. Put `[t_ij(u), t_kl(v)] = Σ X(a,b) u^{-a} v^{-b}` and
//! let `A`, `B` be the two quadratic brackets of the relation. Then
//! `E = (u-v)X - A + B` satisfies `(u-v-κ)E = -κB`, which determines `E`
//! from `B` alone (with `E(0,·) = 0`), and `X` follows by marching
//! `X(a+1,b) = X(a,b+1) + E(a,b) + A(a,b) - B(a,b)` from `X(0,·) = 0`.
//! The unused boundary instances (`X(T,0) = 0`, `E(a,0) = 0`) are what the
//! overdetermination checks test.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use num_traits::{One, Zero};
use smallvec::smallvec;

use super::word::{raw_product, Gen, NcPoly, PolyAcc, Word};
use crate::rational::{binom, pow, qi, sign, Q};
use crate::ring::{Algebra, Ring};
use crate::superspace::{RMatrixForm, SuperSpace};

#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct EngineStats {
    pub commutators: usize,
    pub eliminations: usize,
    pub insertions: usize,
    pub max_word_len: usize,
}

type Quad = u32;

fn quad(i: usize, j: usize, k: usize, l: usize) -> Quad {
    ((i as u32) << 24) | ((j as u32) << 16) | ((k as u32) << 8) | l as u32
}

/// The two sides of a quadratic relation.
type QuadraticPair = (NcPoly, NcPoly);

pub struct Engine {
    space: SuperSpace,
    form: RMatrixForm,
    n: usize,
    parity: Vec<u32>,
    independent: Vec<bool>,
    comm: RefCell<HashMap<(Gen, Gen), Rc<NcPoly>>>,
    insert: RefCell<HashMap<(Gen, Word), Rc<NcPoly>>>,
    elim: RefCell<HashMap<Gen, Rc<NcPoly>>>,
    quadratic: RefCell<HashMap<(Quad, usize, usize), Rc<QuadraticPair>>>,
    e_table: RefCell<HashMap<(Quad, usize, usize), Rc<NcPoly>>>,
    max_word: RefCell<usize>,
}

impl Engine {
    pub fn new(space: &SuperSpace) -> Self {
        Self::with_form(space, RMatrixForm::standard(space))
    }

    /// Engine for a (possibly corrupted) R-matrix form.
    pub fn with_form(space: &SuperSpace, form: RMatrixForm) -> Self {
        let n = space.size();
        let mut parity = vec![0; n + 1];
        for i in space.indices() {
            parity[i] = space.parity(i);
        }
        let mut independent = vec![false; (n + 1) * (n + 1)];
        for i in space.indices() {
            for j in space.indices() {
                let s = i + j;
                independent[i * (n + 1) + j] = s < n + 1 || (s == n + 1 && parity[i] == 1) || (i, j) == (n, n);
            }
        }
        Engine {
            space: space.clone(),
            form,
            n,
            parity,
            independent,
            comm: RefCell::default(),
            insert: RefCell::default(),
            elim: RefCell::default(),
            quadratic: RefCell::default(),
            e_table: RefCell::default(),
            max_word: RefCell::new(0),
        }
    }

    pub fn space(&self) -> &SuperSpace {
        &self.space
    }

    pub fn form(&self) -> &RMatrixForm {
        &self.form
    }

    pub fn kappa(&self) -> &Q {
        &self.form.kappa
    }

    pub fn is_independent(&self, i: usize, j: usize) -> bool {
        self.independent[i * (self.n + 1) + j]
    }

    pub fn gen_parity(&self, g: Gen) -> u32 {
        (self.parity[g.i()] + self.parity[g.j()]) % 2
    }

    pub fn word_parity(&self, w: &[Gen]) -> u32 {
        w.iter().map(|&g| self.gen_parity(g)).sum::<u32>() % 2
    }

    pub fn stats(&self) -> EngineStats {
        EngineStats {
            commutators: self.comm.borrow().len(),
            eliminations: self.elim.borrow().len(),
            insertions: self.insert.borrow().len(),
            max_word_len: *self.max_word.borrow(),
        }
    }

    /// `t_ij^(r)` in normal form; `r = 0` gives `δ_ij`.
    pub fn t(&self, i: usize, j: usize, r: usize) -> NcPoly {
        if r == 0 {
            return if i == j { NcPoly::one() } else { NcPoly::zero() };
        }
        let g = Gen::new(i, j, r);
        if self.is_independent(i, j) {
            NcPoly::generator(g)
        } else {
            (*self.eliminate(g)).clone()
        }
    }

    /// `t_ij^(r)` as a raw letter (or `δ_ij` when `r = 0`).
    fn raw_t(&self, i: usize, j: usize, r: usize) -> NcPoly {
        if r == 0 {
            if i == j {
                NcPoly::one()
            } else {
                NcPoly::zero()
            }
        } else {
            NcPoly::generator(Gen::new(i, j, r))
        }
    }

    /// Normal form of an arbitrary combination of words.
    pub fn normalize(&self, p: &NcPoly) -> NcPoly {
        let mut out = PolyAcc::new();
        for (w, c) in p.terms() {
            out.add_scaled(&self.nf_word(w), c);
        }
        out.finish()
    }

    /// Normal form of a single word.
    pub fn nf_word(&self, w: &[Gen]) -> NcPoly {
        let mut acc = NcPoly::one();
        for &g in w.iter().rev() {
            acc = self.left_mul_gen(g, &acc);
        }
        acc
    }

    fn left_mul_gen(&self, g: Gen, p: &NcPoly) -> NcPoly {
        if self.is_independent(g.i(), g.j()) {
            let mut out = PolyAcc::new();
            for (w, c) in p.terms() {
                out.add_scaled(&self.insert(g, w), c);
            }
            out.finish()
        } else {
            let e = self.eliminate(g);
            self.mul(&e, p)
        }
    }

    /// Product of two normal forms.
    pub fn mul(&self, a: &NcPoly, b: &NcPoly) -> NcPoly {
        let mut out = PolyAcc::new();
        for (x, c) in a.terms() {
            for (y, d) in b.terms() {
                self.concat_into(&mut out, x, y, &(c * d));
            }
        }
        out.finish()
    }

    /// Adds `c·NF(x y)` to an accumulator.
    fn concat_into(&self, out: &mut PolyAcc, x: &[Gen], y: &[Gen], c: &Q) {
        match x {
            [] => out.push(Word::from_slice(y), c.clone()),
            [g] => out.add_scaled(&self.insert(*g, y), c),
            _ => {
                let (&last, init) = x.split_last().unwrap();
                let tail = self.insert(last, y);
                for (w, d) in tail.terms() {
                    self.concat_into(out, init, w, &(c * d));
                }
            }
        }
    }

    /// Normal form of `g·w` for an independent letter and an ordered word.
    fn insert(&self, g: Gen, w: &[Gen]) -> Rc<NcPoly> {
        let head = match w.first() {
            None => return Rc::new(NcPoly::generator(g)),
            Some(&h) => h,
        };
        if g < head || (g == head && self.gen_parity(g) == 0) {
            let mut word: Word = smallvec![g];
            word.extend_from_slice(w);
            return Rc::new(NcPoly::monomial(word, Q::one()));
        }
        let key = (g, Word::from_slice(w));
        if let Some(hit) = self.insert.borrow().get(&key) {
            return hit.clone();
        }
        let rest = &w[1..];
        let result = if g == head {
            // odd letter squared: g·g = ½[g, g]
            let half = self.commutator(g, g).scale(&crate::rational::q(1, 2));
            self.mul_poly_word(&half, rest)
        } else {
            // g·h = (-1)^{p(g)p(h)} h·g + [g, h]
            let s = sign(self.gen_parity(g) * self.gen_parity(head));
            let tail = self.insert(g, rest);
            let mut out = PolyAcc::new();
            for (w, c) in tail.terms() {
                out.add_scaled(&self.insert(head, w), &(c * &s));
            }
            for (x, c) in self.commutator(g, head).terms() {
                self.concat_into(&mut out, x, rest, c);
            }
            out.finish()
        };
        {
            let mut mw = self.max_word.borrow_mut();
            *mw = (*mw).max(result.max_word_len());
        }
        let rc = Rc::new(result);
        self.insert.borrow_mut().insert(key, rc.clone());
        rc
    }

    fn mul_poly_word(&self, p: &NcPoly, w: &[Gen]) -> NcPoly {
        let mut out = PolyAcc::new();
        for (x, c) in p.terms() {
            self.concat_into(&mut out, x, w, c);
        }
        out.finish()
    }

    /// `[g1, g2]` for independent generators, in normal form (memoized).
    pub fn commutator(&self, g1: Gen, g2: Gen) -> Rc<NcPoly> {
        assert!(self.is_independent(g1.i(), g1.j()) && self.is_independent(g2.i(), g2.j()));
        if let Some(hit) = self.comm.borrow().get(&(g1, g2)) {
            return hit.clone();
        }
        let x = self.march(g1.i(), g1.j(), g2.i(), g2.j(), g1.r(), g2.r());
        let rc = Rc::new(x);
        self.comm.borrow_mut().insert((g1, g2), rc.clone());
        rc
    }

    /// `A(a,b)` and `B(a,b)` in normal form, already weighted by the form's
    /// coefficients of `P` and `Q`.
    pub fn quadratic_terms(&self, i: usize, j: usize, k: usize, l: usize, a: usize, b: usize) -> Rc<(NcPoly, NcPoly)> {
        let key = (quad(i, j, k, l), a, b);
        if let Some(hit) = self.quadratic.borrow().get(&key) {
            return hit.clone();
        }
        let sp = &self.space;
        let p = &self.parity;
        let (pi, pj, pk) = (p[i], p[j], p[k]);
        let mut raw_a = NcPoly::zero();
        raw_a.add_scaled(&raw_product(&self.raw_t(k, j, a), &self.raw_t(i, l, b)), &Q::one());
        raw_a.add_scaled(&raw_product(&self.raw_t(k, j, b), &self.raw_t(i, l, a)), &-Q::one());
        let sa = sign(pi * pj + pi * pk + pj * pk) * &self.form.p_coeff;
        let mut raw_b = NcPoly::zero();
        if k == sp.prime(i) {
            for q in sp.indices() {
                let s = sign(pi + pi * pj + pj * p[q]) * qi((sp.theta(i) * sp.theta(q)) as i64);
                raw_b.add_scaled(&raw_product(&self.raw_t(q, j, a), &self.raw_t(sp.prime(q), l, b)), &s);
            }
        }
        if l == sp.prime(j) {
            for q in sp.indices() {
                let s =
                    sign(pi * pk + pj * pk + pi * p[q]) * qi((sp.theta(sp.prime(j)) * sp.theta(sp.prime(q))) as i64);
                raw_b.add_scaled(&raw_product(&self.raw_t(k, sp.prime(q), b), &self.raw_t(i, q, a)), &-s);
            }
        }
        let out = Rc::new((self.normalize(&raw_a).scale(&sa), self.normalize(&raw_b).scale(&self.form.q_coeff)));
        self.quadratic.borrow_mut().insert(key, out.clone());
        out
    }

    /// `E(c,d)` from `(u-v-κ)E = -κB` with `E(0,·) = 0`.
    pub fn e_term(&self, i: usize, j: usize, k: usize, l: usize, c: usize, d: usize) -> Rc<NcPoly> {
        if c == 0 {
            return Rc::new(NcPoly::zero());
        }
        let key = (quad(i, j, k, l), c, d);
        if let Some(hit) = self.e_table.borrow().get(&key) {
            return hit.clone();
        }
        let mut out = (*self.e_term(i, j, k, l, c - 1, d + 1)).clone();
        let mut diff = (*self.e_term(i, j, k, l, c - 1, d)).clone();
        diff.add_scaled(&self.quadratic_terms(i, j, k, l, c - 1, d).1, &-Q::one());
        out.add_scaled(&diff, &self.form.kappa);
        let rc = Rc::new(out);
        self.e_table.borrow_mut().insert(key, rc.clone());
        rc
    }

    /// `X(a,b)` obtained by marching from `X(0, a+b) = 0`; valid for any
    /// indices (the result for dependent generators is a consequence, not a
    /// table entry).
    pub fn march(&self, i: usize, j: usize, k: usize, l: usize, a: usize, b: usize) -> NcPoly {
        let total = a + b;
        let mut x = NcPoly::zero();
        for c in 0..a {
            let d = total - 1 - c;
            let ab = self.quadratic_terms(i, j, k, l, c, d);
            x.add_scaled(&ab.0, &Q::one());
            x.add_scaled(&ab.1, &-Q::one());
            x.add_scaled(&self.e_term(i, j, k, l, c, d), &Q::one());
        }
        x
    }

    /// Normal form of `t_xy^(r)` for a dependent pair `(x, y)`.
    fn eliminate(&self, g: Gen) -> Rc<NcPoly> {
        if let Some(hit) = self.elim.borrow().get(&g) {
            return hit.clone();
        }
        let sp = &self.space;
        let (x, y, r) = (g.i(), g.j(), g.r());
        let (i, j) = (sp.prime(y), sp.prime(x));
        let mut rel = self.transpose_relation(i, j, r);
        if i == j {
            rel = rel.sub(&self.transpose_relation(1, 1, r));
        }
        let word: Word = smallvec![g];
        let coef = rel.coeff(&word);
        assert!(!coef.is_zero(), "{g} is not determined by its transpose relation");
        rel.add_term(word, -coef.clone());
        let out = Rc::new(self.normalize(&rel).scale(&(-coef.recip())));
        self.elim.borrow_mut().insert(g, out.clone());
        out
    }

    /// Raw `u^{-r}` coefficient of `(T(u-κ) T^t(u))_ij`.
    fn transpose_relation(&self, i: usize, j: usize, r: usize) -> NcPoly {
        let sp = &self.space;
        let mut out = NcPoly::zero();
        for a in 0..=r {
            let b = r - a;
            for p in sp.indices() {
                let left = self.shifted_raw(i, p, a);
                if left.is_zero() {
                    continue;
                }
                let right = if b == 0 {
                    self.raw_t(p, j, 0)
                } else {
                    self.raw_t(sp.prime(j), sp.prime(p), b).scale(&sp.transpose_sign(p, j))
                };
                out.add_scaled(&raw_product(&left, &right), &Q::one());
            }
        }
        out
    }

    /// Raw `u^{-a}` coefficient of `t_ip(u-κ)`.
    fn shifted_raw(&self, i: usize, p: usize, a: usize) -> NcPoly {
        if a == 0 {
            return self.raw_t(i, p, 0);
        }
        let mk = -self.form.kappa.clone();
        let mut out = NcPoly::zero();
        for s in 1..=a {
            let c = binom(&-qi(s as i64), a - s) * pow(&mk, a - s);
            out.add_scaled(&self.raw_t(i, p, s), &c);
        }
        out
    }

    /// Super-commutator of two normal forms.
    pub fn bracket(&self, a: &NcPoly, b: &NcPoly) -> NcPoly {
        let mut out = PolyAcc::new();
        for (x, c) in a.terms() {
            let px = self.word_parity(x);
            for (y, d) in b.terms() {
                let s = sign(px * self.word_parity(y));
                let cd = c * d;
                self.concat_into(&mut out, x, y, &cd);
                self.concat_into(&mut out, y, x, &-(cd * s));
            }
        }
        out.finish()
    }

    /// Every ordered pair of independent generators with levels `≤ max_level`
    /// and its commutator, in table order.
    pub fn commutator_table(&self, max_level: usize) -> Vec<(Gen, Gen, Rc<NcPoly>)> {
        let gens = self.independent_generators(max_level);
        let mut out = Vec::new();
        for &g1 in &gens {
            for &g2 in &gens {
                out.push((g1, g2, self.commutator(g1, g2)));
            }
        }
        out
    }

    pub fn independent_generators(&self, max_level: usize) -> Vec<Gen> {
        let mut gens = Vec::new();
        for i in self.space.indices() {
            for j in self.space.indices() {
                if self.is_independent(i, j) {
                    for r in 1..=max_level {
                        gens.push(Gen::new(i, j, r));
                    }
                }
            }
        }
        gens
    }

    /// Deterministic text dump of the commutator table: one
    /// `[g1, g2] = value` line per ordered pair, in table order.
    pub fn dump_table(&self, max_level: usize) -> String {
        let mut out = String::new();
        for (g1, g2, c) in self.commutator_table(max_level) {
            out.push_str(&format!("[{g1}, {g2}] = {c}\n"));
        }
        out
    }

    /// `c_r`, the `u^{-r}` coefficient of the central series, in normal form.
    pub fn central(&self, r: usize) -> NcPoly {
        if r == 0 {
            return NcPoly::one();
        }
        self.normalize(&self.transpose_relation(1, 1, r))
    }
}

impl Ring for Engine {
    type Elem = NcPoly;

    fn zero(&self) -> NcPoly {
        NcPoly::zero()
    }
    fn one(&self) -> NcPoly {
        NcPoly::one()
    }
    fn add(&self, a: &NcPoly, b: &NcPoly) -> NcPoly {
        a.add(b)
    }
    fn sub(&self, a: &NcPoly, b: &NcPoly) -> NcPoly {
        a.sub(b)
    }
    fn mul(&self, a: &NcPoly, b: &NcPoly) -> NcPoly {
        Engine::mul(self, a, b)
    }
    fn neg(&self, a: &NcPoly) -> NcPoly {
        a.neg()
    }
    fn is_zero(&self, a: &NcPoly) -> bool {
        a.is_zero()
    }
    fn try_inv(&self, a: &NcPoly) -> Option<NcPoly> {
        match a.scalar_value() {
            Some(c) if !c.is_zero() => Some(NcPoly::scalar(c.recip())),
            _ => None,
        }
    }
}

impl Algebra for Engine {
    fn scalar(&self, c: &Q) -> NcPoly {
        NcPoly::scalar(c.clone())
    }
    fn scale(&self, a: &NcPoly, c: &Q) -> NcPoly {
        a.scale(c)
    }
    fn parity_split(&self, a: &NcPoly) -> (NcPoly, NcPoly) {
        let (mut even, mut odd) = (NcPoly::zero(), NcPoly::zero());
        for (w, c) in a.terms() {
            let target = if self.word_parity(w) == 0 { &mut even } else { &mut odd };
            target.add_term(w.clone(), c.clone());
        }
        (even, odd)
    }
    fn scalar_value(&self, a: &NcPoly) -> Option<Q> {
        a.scalar_value()
    }
    fn supercomm(&self, a: &NcPoly, b: &NcPoly) -> NcPoly {
        self.bracket(a, b)
    }
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Engine({}, {:?})", self.space, self.stats())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine(n_big: usize, m: usize) -> Engine {
        Engine::new(&SuperSpace::new(n_big, m).unwrap())
    }

    #[test]
    fn one_generator_per_level_beyond_the_superalgebra() {
        // osp_{N|2m}: even part so_N ⊕ sp_2m, odd part of dimension 2Nm;
        // the extra generator per level is the central series.
        for (n_big, m) in [(3, 1), (4, 1), (5, 1), (3, 2), (6, 1)] {
            let e = engine(n_big, m);
            let dim = n_big * (n_big - 1) / 2 + m * (2 * m + 1) + 2 * n_big * m;
            assert_eq!(e.independent_generators(1).len(), dim + 1, "({n_big},{m})");
            assert_eq!(e.independent_generators(3).len(), 3 * (dim + 1));
        }
    }

    #[test]
    fn normal_forms_are_ordered_words_without_odd_squares() {
        let e = engine(3, 1);
        let gens = e.independent_generators(2);
        for &a in &gens {
            for &b in &gens {
                let p = e.nf_word(&[b, a, b]);
                for (w, _) in p.terms() {
                    assert!(w.windows(2).all(|x| x[0] <= x[1]), "{w:?}");
                    assert!(w.windows(2).all(|x| x[0] != x[1] || e.gen_parity(x[0]) == 0), "{w:?}");
                }
            }
        }
    }

    #[test]
    fn dependent_generators_reduce_to_independent_letters() {
        let e = engine(4, 1);
        let n = e.space().size();
        for i in 1..=n {
            for j in 1..=n {
                if e.is_independent(i, j) {
                    continue;
                }
                for r in 1..=2 {
                    for (w, _) in e.t(i, j, r).terms() {
                        assert!(w.iter().all(|g| e.is_independent(g.i(), g.j())), "t_{i}{j}^({r}): {w:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn commutators_are_cached_and_counted() {
        let e = engine(3, 1);
        let (a, b) = (Gen::new(1, 2, 1), Gen::new(2, 1, 2));
        let x = e.commutator(a, b);
        let before = e.stats().commutators;
        assert!(Rc::ptr_eq(&x, &e.commutator(a, b)));
        assert_eq!(e.stats().commutators, before);
    }

    #[test]
    fn odd_generators_square_to_half_their_bracket() {
        let e = engine(3, 1);
        let g = Gen::new(1, 2, 1);
        assert_eq!(e.gen_parity(g), 1);
        let sq = e.nf_word(&[g, g]);
        assert_eq!(sq, e.commutator(g, g).scale(&crate::rational::q(1, 2)));
    }
}
