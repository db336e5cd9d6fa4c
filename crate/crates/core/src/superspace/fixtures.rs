//! Constants of the R-matrix algebra computed by direct multiplication.
//!
//! `Q² = c·Q`, `PQ = QP = s·Q` and the scalar `R(u)R(-u) = f(u)·1` are not
//! assumed; they are measured here and frozen in
//! `fixtures/r_matrix_constants.json`, which regression tests compare against.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{build_r, p_operator, q_operator, SparseMatrix, SuperSpace};
use crate::poly::Poly;
use crate::rational::{fmt_q, parse_q, qi, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RMatrixConstants {
    #[serde(rename = "N")]
    pub n_big: usize,
    pub m: usize,
    #[serde(rename = "Q_squared_coeff")]
    pub q_squared_coeff: String,
    #[serde(rename = "PQ_sign")]
    pub pq_sign: i64,
    /// Coefficients (lowest first) of `u²(u² - κ²)·f(u)` where `R(u)R(-u) = f(u)·1`.
    pub unitarity_scalar_numer_poly: Vec<String>,
}

pub const FIXTURE_JSON: &str = include_str!("../../fixtures/r_matrix_constants.json");

/// The frozen fixture table.
pub fn load() -> Vec<RMatrixConstants> {
    serde_json::from_str(FIXTURE_JSON).expect("fixture file is valid JSON")
}

/// `Some(c)` when `a = c·b` (with `b` nonzero).
fn proportionality(a: &SparseMatrix, b: &SparseMatrix) -> Option<Q> {
    let (i, j, bv) = b.entries().next()?;
    let c = a.get(i, j) / bv;
    (a.sub(&b.scale(&c))).is_zero().then_some(c)
}

fn scalar_value(a: &SparseMatrix) -> Option<Q> {
    let c = a.get(0, 0);
    a.sub(&SparseMatrix::identity(a.dim()).scale(&c)).is_zero().then_some(c)
}

/// Measures the constants for one space.
pub fn compute(space: &SuperSpace) -> RMatrixConstants {
    let p = p_operator(space);
    let q = q_operator(space);
    let q2 = proportionality(&q.mul(&q), &q).expect("Q² is proportional to Q");
    let pq = proportionality(&p.mul(&q), &q).expect("PQ is proportional to Q");
    let qp = proportionality(&q.mul(&p), &q).expect("QP is proportional to Q");
    assert_eq!(pq, qp);
    let kappa = space.kappa();
    let mut samples = Vec::new();
    let mut x = qi(2);
    while samples.len() < 6 {
        x += crate::rational::q(1, 3);
        if x.is_zero() || x == *kappa || x == -kappa {
            continue;
        }
        let prod = build_r(space, &x).unwrap().mul(&build_r(space, &-&x).unwrap());
        let f = scalar_value(&prod).expect("R(u)R(-u) is scalar");
        let weight = &x * &x * (&x * &x - kappa * kappa);
        samples.push((x.clone(), f * weight));
    }
    let poly = Poly::interpolate(&samples[..5]);
    assert_eq!(poly.eval(&samples[5].0), samples[5].1, "numerator has degree <= 4");
    RMatrixConstants {
        n_big: space.n_big(),
        m: space.m(),
        q_squared_coeff: fmt_q(&q2),
        pq_sign: if pq == qi(1) {
            1
        } else {
            assert_eq!(pq, qi(-1));
            -1
        },
        unitarity_scalar_numer_poly: poly.coeffs().iter().map(fmt_q).collect(),
    }
}

impl RMatrixConstants {
    pub fn unitarity_poly(&self) -> Poly {
        Poly::new(self.unitarity_scalar_numer_poly.iter().map(|s| parse_q(s).expect("rational")).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frozen_constants_match_recomputation() {
        let table = load();
        assert!(!table.is_empty());
        for entry in table {
            let s = SuperSpace::new(entry.n_big, entry.m).unwrap();
            assert_eq!(compute(&s), entry);
        }
    }
}
