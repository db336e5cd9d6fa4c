//! Operators on tensor powers of `C^{N|2m}` and the R-matrix.
//!
//! A simple tensor `E_{i1 j1} ⊗ … ⊗ E_{ik jk}` acts on basis vectors with the
//! Koszul sign `∏_s (-1)^{|E_s| (j̄_1 + … + j̄_{s-1})}`; with that rule,
//! composition of operators is plain matrix multiplication. Basis tuples are
//! flattened slot-major: `(i, k) ↦ (i-1)·size + k`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use super::SuperSpace;
use crate::rational::{qi, sign, Q};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("R(u) has a pole at u = {0}")]
    Pole(String),
}

/// Square sparse matrix over the rationals, rows stored as ordered maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    dim: usize,
    rows: Vec<BTreeMap<usize, Q>>,
}

impl SparseMatrix {
    pub fn zero(dim: usize) -> Self {
        SparseMatrix { dim, rows: vec![BTreeMap::new(); dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.add_entry(i, i, Q::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.rows[i].get(&j).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_entry(&mut self, i: usize, j: usize, value: Q) {
        if value.is_zero() {
            return;
        }
        let row = &mut self.rows[i];
        let e = row.entry(j).or_insert_with(Q::zero);
        *e += value;
        if e.is_zero() {
            row.remove(&j);
        }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Q)> {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.dim);
        for (i, j, v) in self.entries() {
            out.add_entry(i, j, v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (i, j, v) in other.entries() {
            out.add_entry(i, j, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zero(self.dim);
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &other.rows[*k] {
                    *acc.entry(*j).or_insert_with(Q::zero) += a * b;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.rows[i] = acc;
        }
        out
    }
}

/// One factor `E_{ij}` placed in a tensor slot (0-based slot, 1-based indices).
pub type Placement = (usize, usize, usize);

/// Flattens `Σ c ⊗ E` (identity in unmentioned slots) into a matrix on the
/// `slots`-fold tensor power, applying the Koszul signs.
pub fn embed(space: &SuperSpace, slots: usize, terms: &[(Q, Vec<Placement>)]) -> SparseMatrix {
    let n = space.size();
    let dim = n.pow(slots as u32);
    let mut out = SparseMatrix::zero(dim);
    let mut rows = vec![0usize; slots];
    let mut cols = vec![0usize; slots];
    for (c, placed) in terms {
        if c.is_zero() {
            continue;
        }
        let free: Vec<usize> = (0..slots).filter(|s| placed.iter().all(|(t, _, _)| t != s)).collect();
        for combo in 0..n.pow(free.len() as u32) {
            let mut rest = combo;
            for &s in &free {
                let x = rest % n + 1;
                rest /= n;
                rows[s] = x;
                cols[s] = x;
            }
            for &(s, i, j) in placed {
                rows[s] = i;
                cols[s] = j;
            }
            let mut exp = 0;
            let mut passed = 0;
            for s in 0..slots {
                exp += space.parity2(rows[s], cols[s]) * passed;
                passed += space.parity(cols[s]);
            }
            let flat = |v: &[usize]| v.iter().fold(0, |acc, &x| acc * n + (x - 1));
            out.add_entry(flat(&rows), flat(&cols), c * sign(exp));
        }
    }
    out
}

/// Coefficients of `P = Σ e_ij ⊗ e_ji (-1)^{j̄}` as `(c, i1, j1, i2, j2)`.
pub fn p_terms(space: &SuperSpace) -> Vec<(Q, [usize; 4])> {
    let mut out = Vec::new();
    for i in space.indices() {
        for j in space.indices() {
            out.push((sign(space.parity(j)), [i, j, j, i]));
        }
    }
    out
}

/// Coefficients of `Q = Σ e_ij ⊗ e_{i'j'} (-1)^{īj̄} θ_i θ_j`.
pub fn q_terms(space: &SuperSpace) -> Vec<(Q, [usize; 4])> {
    let mut out = Vec::new();
    for i in space.indices() {
        for j in space.indices() {
            let c = sign(space.parity(i) * space.parity(j)) * qi((space.theta(i) * space.theta(j)) as i64);
            out.push((c, [i, j, space.prime(i), space.prime(j)]));
        }
    }
    out
}

fn place(terms: &[(Q, [usize; 4])], scale: &Q, a: usize, b: usize) -> Vec<(Q, Vec<Placement>)> {
    terms.iter().map(|(c, [i1, j1, i2, j2])| (c * scale, vec![(a, *i1, *j1), (b, *i2, *j2)])).collect()
}

pub fn p_operator(space: &SuperSpace) -> SparseMatrix {
    embed(space, 2, &place(&p_terms(space), &Q::one(), 0, 1))
}

pub fn q_operator(space: &SuperSpace) -> SparseMatrix {
    embed(space, 2, &place(&q_terms(space), &Q::one(), 0, 1))
}

/// `R(u) = 1 - p·P/u + q·Q/(u - κ')`. The standard R-matrix has `p = q = 1`
/// and `κ' = κ`; the other values exist for negative controls.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RMatrixForm {
    pub p_coeff: Q,
    pub q_coeff: Q,
    pub kappa: Q,
}

/// Deliberate corruptions of the R-matrix used as negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mutation {
    FlipQSign,
    KappaPlusOne,
}

impl Mutation {
    pub const ALL: [Mutation; 2] = [Mutation::FlipQSign, Mutation::KappaPlusOne];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::FlipQSign => "flip-Q-sign",
            Mutation::KappaPlusOne => "kappa-plus-one",
        }
    }
}

impl RMatrixForm {
    pub fn standard(space: &SuperSpace) -> Self {
        RMatrixForm { p_coeff: Q::one(), q_coeff: Q::one(), kappa: space.kappa().clone() }
    }

    pub fn mutated(space: &SuperSpace, mutation: Mutation) -> Self {
        let mut f = Self::standard(space);
        match mutation {
            Mutation::FlipQSign => f.q_coeff = -f.q_coeff,
            Mutation::KappaPlusOne => f.kappa += Q::one(),
        }
        f
    }

    pub fn is_standard(&self, space: &SuperSpace) -> bool {
        *self == Self::standard(space)
    }

    /// `E⊗E` coefficients of `R(u)`.
    pub fn terms(&self, space: &SuperSpace, u: &Q) -> Result<Vec<(Q, [usize; 4])>, TensorError> {
        if u.is_zero() || *u == self.kappa {
            return Err(TensorError::Pole(crate::rational::fmt_q(u)));
        }
        let mut out = Vec::new();
        for i in space.indices() {
            for j in space.indices() {
                out.push((Q::one(), [i, i, j, j]));
            }
        }
        let pc = -(&self.p_coeff) / u;
        let qc = &self.q_coeff / (u - &self.kappa);
        out.extend(p_terms(space).into_iter().map(|(c, ix)| (c * &pc, ix)));
        out.extend(q_terms(space).into_iter().map(|(c, ix)| (c * &qc, ix)));
        Ok(out)
    }
}

/// `R(u)` with the given form on `V ⊗ V`.
pub fn build_r_form(space: &SuperSpace, form: &RMatrixForm, u: &Q) -> Result<SparseMatrix, TensorError> {
    Ok(embed(space, 2, &place(&form.terms(space, u)?, &Q::one(), 0, 1)))
}

/// `R(u) = 1 - P/u + Q/(u-κ)` on `V ⊗ V`.
pub fn build_r(space: &SuperSpace, u: &Q) -> Result<SparseMatrix, TensorError> {
    build_r_form(space, &RMatrixForm::standard(space), u)
}

/// `R` placed in slots `(a, b)` of `V^{⊗3}`.
pub fn r_in_slots(
    space: &SuperSpace,
    form: &RMatrixForm,
    u: &Q,
    a: usize,
    b: usize,
) -> Result<SparseMatrix, TensorError> {
    Ok(embed(space, 3, &place(&form.terms(space, u)?, &Q::one(), a, b)))
}

/// `R12(u-v) R13(u) R23(v) - R23(v) R13(u) R12(u-v)`.
pub fn ybe_residual(space: &SuperSpace, form: &RMatrixForm, u: &Q, v: &Q) -> Result<SparseMatrix, TensorError> {
    let r12 = r_in_slots(space, form, &(u - v), 0, 1)?;
    let r13 = r_in_slots(space, form, u, 0, 2)?;
    let r23 = r_in_slots(space, form, v, 1, 2)?;
    let lhs = r12.mul(&r13).mul(&r23);
    let rhs = r23.mul(&r13).mul(&r12);
    Ok(lhs.sub(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn spaces() -> Vec<SuperSpace> {
        [(3, 1), (4, 1), (3, 2)].into_iter().map(|(a, b)| SuperSpace::new(a, b).unwrap()).collect()
    }

    #[test]
    fn permutation_squares_to_identity() {
        for s in spaces() {
            let p = p_operator(&s);
            assert_eq!(p.mul(&p), SparseMatrix::identity(s.size().pow(2)));
        }
    }

    #[test]
    fn permutation_swaps_tensor_factors_with_sign() {
        // P(e_a ⊗ e_b) = (-1)^{ā b̄} e_b ⊗ e_a
        let s = SuperSpace::new(3, 1).unwrap();
        let p = p_operator(&s);
        let n = s.size();
        for a in 1..=n {
            for b in 1..=n {
                let col = (a - 1) * n + (b - 1);
                let row = (b - 1) * n + (a - 1);
                assert_eq!(p.get(row, col), sign(s.parity(a) * s.parity(b)));
            }
        }
    }

    #[test]
    fn r_has_poles_at_zero_and_kappa() {
        let s = SuperSpace::new(3, 1).unwrap();
        assert!(build_r(&s, &q(0, 1)).is_err());
        assert!(build_r(&s, &q(-1, 2)).is_err());
        assert!(build_r(&s, &q(1, 1)).is_ok());
    }

    #[test]
    fn r_at_one_from_definition() {
        // R(1) = 1 - P + Q/(1 - κ), κ = -1/2 for (3,1): Q enters with 2/3.
        let s = SuperSpace::new(3, 1).unwrap();
        let r = build_r(&s, &q(1, 1)).unwrap();
        let expect = SparseMatrix::identity(25).sub(&p_operator(&s)).add(&q_operator(&s).scale(&q(2, 3)));
        assert_eq!(r, expect);
        // e_3 ⊗ e_3 (both even, 3 = 3'): diagonal entry 1 - 1 + 2/3.
        assert_eq!(r.get(12, 12), q(2, 3));
    }

    #[test]
    fn ybe_at_five_two() {
        for s in spaces() {
            let f = RMatrixForm::standard(&s);
            assert!(ybe_residual(&s, &f, &q(5, 1), &q(2, 1)).unwrap().is_zero(), "{s}");
        }
    }

    #[test]
    fn flipped_q_sign_breaks_ybe() {
        let s = SuperSpace::new(3, 1).unwrap();
        let f = RMatrixForm::mutated(&s, Mutation::FlipQSign);
        assert!(!ybe_residual(&s, &f, &q(5, 1), &q(2, 1)).unwrap().is_zero());
    }
}
