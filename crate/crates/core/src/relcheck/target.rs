use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use num_traits::Zero;

use crate::evalrep::{Operators, RepAssignment};
use crate::gauss::{Currents, GaussData};
use crate::matrix::Matrix;
use crate::ncseries::{apply_mu_f, apply_tau, Engine, NcPoly, TruncSeries};
use crate::rational::{fmt_q, Q};
use crate::ring::{Algebra, Ring};
use crate::superspace::SuperSpace;

pub type Elem<T> = <<T as Target>::A as Ring>::Elem;

/// Where relations are evaluated: the engine itself, or the evaluation
/// representation at one shift.
pub trait Target {
    type A: Algebra;

    fn alg(&self) -> &Self::A;
    fn space(&self) -> &SuperSpace;
    /// `t_ij^(r)`, with `t_ij^(0) = δ_ij`.
    fn t(&self, i: usize, j: usize, r: usize) -> Elem<Self>;
    /// Gauss decomposition of the leading `block × block` part of `T(u)`.
    fn gauss(&self, order: usize, block: usize) -> Result<GaussData<Elem<Self>>, String>;
    /// Human-readable terms of a residual.
    fn describe(&self, x: &Elem<Self>) -> Vec<String>;
    fn engine(&self) -> Option<&Engine> {
        None
    }
    fn rep(&self) -> Option<&RepAssignment> {
        None
    }
    /// The anti-automorphism `τ`, where it is available.
    fn tau(&self, _x: &Elem<Self>) -> Option<Elem<Self>> {
        None
    }
    /// The automorphism `μ_f`, `f = 1 + f_1 u^{-1} + …`, where it is available.
    fn mu_f(&self, _x: &Elem<Self>, _f: &[Q]) -> Option<Elem<Self>> {
        None
    }
    /// The symbolic model a representation is compared against.
    fn reference(&self) -> Option<&Model<Symbolic>> {
        None
    }
    /// An engine element as an element of this target.
    fn lift_poly(&self, _p: &NcPoly) -> Option<Elem<Self>> {
        None
    }
    /// An operator on `C^{N|2m}` as an element of this target.
    fn lift_operator(&self, _m: &Matrix<Q>) -> Option<Elem<Self>> {
        None
    }
    /// Label for failure records (`""` for symbolic runs).
    fn label(&self) -> String;
}

pub struct Symbolic {
    engine: Rc<Engine>,
}

impl Symbolic {
    pub fn new(engine: Rc<Engine>) -> Self {
        Symbolic { engine }
    }
}

impl Target for Symbolic {
    type A = Engine;

    fn alg(&self) -> &Engine {
        &self.engine
    }
    fn space(&self) -> &SuperSpace {
        self.engine.space()
    }
    fn t(&self, i: usize, j: usize, r: usize) -> NcPoly {
        self.engine.t(i, j, r)
    }
    fn gauss(&self, order: usize, block: usize) -> Result<GaussData, String> {
        GaussData::decompose(&self.engine, order, block).map_err(|e| e.to_string())
    }
    fn describe(&self, x: &NcPoly) -> Vec<String> {
        x.terms()
            .map(|(w, c)| {
                let word: Vec<String> = w.iter().map(|g| g.to_string()).collect();
                if word.is_empty() {
                    fmt_q(c)
                } else {
                    format!("{} {}", fmt_q(c), word.join(" "))
                }
            })
            .collect()
    }
    fn engine(&self) -> Option<&Engine> {
        Some(&self.engine)
    }
    fn tau(&self, x: &NcPoly) -> Option<NcPoly> {
        Some(apply_tau(&self.engine, x))
    }
    fn mu_f(&self, x: &NcPoly, f: &[Q]) -> Option<NcPoly> {
        apply_mu_f(&self.engine, x, f).ok()
    }
    fn lift_poly(&self, p: &NcPoly) -> Option<NcPoly> {
        Some(p.clone())
    }
    fn label(&self) -> String {
        String::new()
    }
}

pub struct InRep<'a> {
    ops: Operators,
    rep: &'a RepAssignment,
    reference: Option<&'a Model<Symbolic>>,
}

impl<'a> InRep<'a> {
    pub fn new(rep: &'a RepAssignment, reference: Option<&'a Model<Symbolic>>) -> Self {
        InRep { ops: Operators::new(rep.space()), rep, reference }
    }
}

impl Target for InRep<'_> {
    type A = Operators;

    fn alg(&self) -> &Operators {
        &self.ops
    }
    fn space(&self) -> &SuperSpace {
        self.rep.space()
    }
    fn t(&self, i: usize, j: usize, r: usize) -> Matrix<Q> {
        self.rep.coefficient_image(i, j, r)
    }
    fn gauss(&self, order: usize, block: usize) -> Result<GaussData<Matrix<Q>>, String> {
        self.rep.gauss(order, block).map_err(|e| e.to_string())
    }
    fn describe(&self, x: &Matrix<Q>) -> Vec<String> {
        let n = x.rows();
        let mut out = Vec::new();
        for r in 0..n {
            for c in 0..n {
                let v = x.get(r, c);
                if !v.is_zero() {
                    out.push(format!("E_{},{}: {}", r + 1, c + 1, fmt_q(v)));
                }
            }
        }
        out
    }
    fn rep(&self) -> Option<&RepAssignment> {
        Some(self.rep)
    }
    fn reference(&self) -> Option<&Model<Symbolic>> {
        self.reference
    }
    fn lift_operator(&self, m: &Matrix<Q>) -> Option<Matrix<Q>> {
        Some(m.clone())
    }
    fn label(&self) -> String {
        format!("rep(a={})", fmt_q(self.rep.shift()))
    }
}

type GaussEntry<T> = Rc<GaussData<Elem<T>>>;

/// A target with memoized `T(u)` coefficients, Gauss data and currents.
pub struct Model<T: Target> {
    pub target: T,
    t_cache: RefCell<HashMap<(usize, usize, usize), Elem<T>>>,
    gauss_cache: RefCell<HashMap<(usize, usize), GaussEntry<T>>>,
    currents_cache: RefCell<HashMap<usize, Rc<Currents<Elem<T>>>>>,
}

impl<T: Target> Model<T> {
    pub fn new(target: T) -> Self {
        Model {
            target,
            t_cache: RefCell::new(HashMap::new()),
            gauss_cache: RefCell::new(HashMap::new()),
            currents_cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn alg(&self) -> &T::A {
        self.target.alg()
    }

    pub fn space(&self) -> &SuperSpace {
        self.target.space()
    }

    pub fn t(&self, i: usize, j: usize, r: usize) -> Elem<T> {
        if let Some(hit) = self.t_cache.borrow().get(&(i, j, r)) {
            return hit.clone();
        }
        let x = self.target.t(i, j, r);
        self.t_cache.borrow_mut().insert((i, j, r), x.clone());
        x
    }

    pub fn t_series(&self, i: usize, j: usize, order: usize) -> TruncSeries<Elem<T>> {
        TruncSeries::from_coeffs((0..=order).map(|r| self.t(i, j, r)).collect())
    }

    /// `[t_ij(u)]` over the whole index range.
    pub fn t_matrix(&self, order: usize) -> Matrix<TruncSeries<Elem<T>>> {
        let n = self.space().size();
        Matrix::from_fn(n, n, |r, c| self.t_series(r + 1, c + 1, order))
    }

    pub fn gauss(&self, order: usize, block: usize) -> Result<Rc<GaussData<Elem<T>>>, String> {
        if let Some(hit) = self.gauss_cache.borrow().get(&(order, block)) {
            return Ok(hit.clone());
        }
        let g = Rc::new(self.target.gauss(order, block)?);
        self.gauss_cache.borrow_mut().insert((order, block), g.clone());
        Ok(g)
    }

    /// Currents from the leading `(m+n+1)`-block decomposition.
    pub fn currents(&self, order: usize) -> Result<Rc<Currents<Elem<T>>>, String> {
        if let Some(hit) = self.currents_cache.borrow().get(&order) {
            return Ok(hit.clone());
        }
        let g = self.gauss(order, self.space().rank() + 1)?;
        let c = Rc::new(Currents::build(self.alg(), &g).map_err(|e| e.to_string())?);
        self.currents_cache.borrow_mut().insert(order, c.clone());
        Ok(c)
    }
}
