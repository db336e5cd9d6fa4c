//! The defining relation with both denominators cleared,
//! `(u-v)(u-v-κ)[t_ij(u), t_kl(v)] = (u-v-κ)A(u,v) - (u-v)B(u,v)`,
//! evaluated coefficientwise for an arbitrary family `g_ij(u)`.

use std::collections::HashMap;

use num_traits::Zero;

use crate::rational::{qi, sign, Q};
use crate::ring::Algebra;
use crate::superspace::SuperSpace;

/// Parities, signs `θ`, the involution and `κ` for an index range
/// relabelled `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexData {
    parity: Vec<u32>,
    theta: Vec<i32>,
    prime: Vec<usize>,
    kappa: Q,
}

impl IndexData {
    pub fn of(space: &SuperSpace) -> Self {
        Self::reduced(space, 0)
    }

    /// Indices `ℓ+1, …, (ℓ+1)'` of `space` renumbered from 1, with
    /// `κ + ℓ` (the constant of the smaller algebra).
    pub fn reduced(space: &SuperSpace, l: usize) -> Self {
        let n = space.size() - 2 * l;
        let mut parity = vec![0];
        let mut theta = vec![0];
        let mut prime = vec![0];
        for i in 1..=n {
            parity.push(space.parity(i + l));
            theta.push(space.theta(i + l));
            prime.push(n + 1 - i);
        }
        IndexData { parity, theta, prime, kappa: space.kappa() + qi(l as i64) }
    }

    pub fn size(&self) -> usize {
        self.parity.len() - 1
    }

    pub fn kappa(&self) -> &Q {
        &self.kappa
    }

    pub fn with_kappa(mut self, kappa: Q) -> Self {
        self.kappa = kappa;
        self
    }
}

/// Coefficient grid of one quadruple `(i, j, k, l)`.
struct Quad<'a, A: Algebra, G: Fn(usize, usize, usize) -> A::Elem> {
    alg: &'a A,
    idx: &'a IndexData,
    g: &'a G,
    ijkl: [usize; 4],
    x: HashMap<(usize, usize), A::Elem>,
    ab: HashMap<(usize, usize), (A::Elem, A::Elem)>,
}

impl<A: Algebra, G: Fn(usize, usize, usize) -> A::Elem> Quad<'_, A, G> {
    fn x(&mut self, a: i64, b: i64) -> A::Elem {
        if a <= 0 || b <= 0 {
            return self.alg.zero();
        }
        let key = (a as usize, b as usize);
        if let Some(hit) = self.x.get(&key) {
            return hit.clone();
        }
        let [i, j, k, l] = self.ijkl;
        let v = self.alg.supercomm(&(self.g)(i, j, key.0), &(self.g)(k, l, key.1));
        self.x.insert(key, v.clone());
        v
    }

    fn prod(&self, x: (usize, usize, usize), y: (usize, usize, usize)) -> A::Elem {
        let p = (self.g)(x.0, x.1, x.2);
        if self.alg.is_zero(&p) {
            return p;
        }
        self.alg.mul(&p, &(self.g)(y.0, y.1, y.2))
    }

    /// `(A(a,b), B(a,b))`.
    fn ab(&mut self, a: i64, b: i64) -> (A::Elem, A::Elem) {
        if a < 0 || b < 0 {
            return (self.alg.zero(), self.alg.zero());
        }
        let key = (a as usize, b as usize);
        if let Some(hit) = self.ab.get(&key) {
            return hit.clone();
        }
        let (a, b) = key;
        let [i, j, k, l] = self.ijkl;
        let idx = self.idx;
        let p = &idx.parity;
        let alg = self.alg;
        let sa = sign(p[i] * p[j] + p[i] * p[k] + p[j] * p[k]);
        let mut va = alg.sub(&self.prod((k, j, a), (i, l, b)), &self.prod((k, j, b), (i, l, a)));
        va = alg.scale(&va, &sa);
        let mut vb = alg.zero();
        let n = idx.size();
        if k == idx.prime[i] {
            for q in 1..=n {
                let s = sign(p[i] + p[i] * p[j] + p[j] * p[q]) * qi((idx.theta[i] * idx.theta[q]) as i64);
                let term = self.prod((q, j, a), (idx.prime[q], l, b));
                vb = alg.add(&vb, &alg.scale(&term, &s));
            }
        }
        if l == idx.prime[j] {
            for q in 1..=n {
                let s = sign(p[i] * p[k] + p[j] * p[k] + p[i] * p[q])
                    * qi((idx.theta[idx.prime[j]] * idx.theta[idx.prime[q]]) as i64);
                let term = self.prod((k, idx.prime[q], b), (i, q, a));
                vb = alg.sub(&vb, &alg.scale(&term, &s));
            }
        }
        self.ab.insert(key, (va.clone(), vb.clone()));
        (va, vb)
    }

    /// `u^{-a} v^{-b}` coefficient of the cleared relation, `a, b ≥ -1`.
    fn residual(&mut self, a: i64, b: i64) -> A::Elem {
        let alg = self.alg;
        let kappa = self.idx.kappa.clone();
        // (u-v)^2 X - κ (u-v) X
        let mut z = self.x(a + 2, b);
        z = alg.sub(&z, &alg.scale(&self.x(a + 1, b + 1), &qi(2)));
        z = alg.add(&z, &self.x(a, b + 2));
        let dx = alg.sub(&self.x(a + 1, b), &self.x(a, b + 1));
        z = alg.sub(&z, &alg.scale(&dx, &kappa));
        // - (u-v-κ) A + (u-v) B
        let (a10, b10) = self.ab(a + 1, b);
        let (a01, b01) = self.ab(a, b + 1);
        let (a00, _) = self.ab(a, b);
        z = alg.sub(&z, &alg.sub(&a10, &a01));
        if !kappa.is_zero() {
            z = alg.add(&z, &alg.scale(&a00, &kappa));
        }
        alg.add(&z, &alg.sub(&b10, &b01))
    }
}

/// Calls `emit(i, j, k, l, a, b, residual)` for every quadruple and every
/// coefficient `u^{-a} v^{-b}`, `a, b ≥ -1`, whose brackets have total level
/// `a + b + 2 ≤ max_total`. `g(i, j, r)` must return `δ_ij` for `r = 0`.
pub fn for_each_residual<A: Algebra>(
    alg: &A,
    idx: &IndexData,
    g: &impl Fn(usize, usize, usize) -> A::Elem,
    max_total: usize,
    emit: impl FnMut([usize; 4], i64, i64, A::Elem),
) {
    let n = idx.size();
    let all =
        (1..=n).flat_map(|i| (1..=n).flat_map(move |j| (1..=n).flat_map(move |k| (1..=n).map(move |l| [i, j, k, l]))));
    residuals_of(alg, idx, g, all, max_total, emit);
}

/// As [`for_each_residual`], restricted to the given quadruples.
pub fn residuals_of<A: Algebra>(
    alg: &A,
    idx: &IndexData,
    g: &impl Fn(usize, usize, usize) -> A::Elem,
    quads: impl IntoIterator<Item = [usize; 4]>,
    max_total: usize,
    mut emit: impl FnMut([usize; 4], i64, i64, A::Elem),
) {
    for ijkl in quads {
        let mut quad = Quad { alg, idx, g, ijkl, x: HashMap::new(), ab: HashMap::new() };
        for total in 2..=max_total as i64 {
            for a in -1..=total - 1 {
                let b = total - 2 - a;
                let z = quad.residual(a, b);
                emit(ijkl, a, b, z);
            }
        }
    }
}
