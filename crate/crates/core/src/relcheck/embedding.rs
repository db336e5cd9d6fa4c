use num_traits::Zero;

use crate::gauss::{bordered, max_level};
use crate::matrix::Matrix;
use crate::ncseries::{Bivar, SeriesRing, TruncSeries};
use crate::rational::{sign, Q};
use crate::ring::{Algebra, Ring};

use super::cleared::{for_each_residual, IndexData};
use super::report::Tally;
use super::target::{Elem, Model, Target};
use super::util::{check_bivar, check_series, idx, setup_failure};
use super::SuiteConfig;

/// `t^[ℓ]_ij(u)` for `ℓ+1 ≤ i, j ≤ (ℓ+1)'`, position `(0,0)` holding
/// `t^[ℓ]_{ℓ+1,ℓ+1}`.
fn psi<R: Ring>(ring: &R, tm: &Matrix<R::Elem>, l: usize) -> Result<Matrix<R::Elem>, String> {
    let inner = bordered(ring, tm, l).map_err(|e| e.to_string())?;
    let keep: Vec<usize> = (0..tm.rows() - 2 * l).collect();
    Ok(inner.select(&keep, &keep))
}

/// The embedding `ψ_1`: the quasideterminants `t^[1]_ij(u)` satisfy the
/// defining relation of the smaller algebra, commute with `t_11(u)`, compose
/// to `ψ_2`, and bracket with `e_1k(u)`, `f_k1(u)` as prescribed.
pub fn run<T: Target>(model: &Model<T>, cfg: &SuiteConfig, tally: &mut Tally) {
    let t = &model.target;
    let alg = model.alg();
    let space = model.space().clone();
    let n = space.size();
    let k = cfg.k;
    if max_level(&space) < 1 {
        return;
    }

    // Defining relation of the smaller algebra.
    let ring = SeriesRing::new(alg, k + 1);
    let t1 = match psi(&ring, &model.t_matrix(k + 1), 1) {
        Ok(m) => m,
        Err(e) => return setup_failure(tally, "t^[1] quasideterminants", e),
    };
    let data = IndexData::reduced(&space, 1);
    for_each_residual(alg, &data, &|i, j, r| t1.get(i - 1, j - 1).coeff(r).clone(), k + 1, |q, a, b, z| {
        let mut ix = idx(&q);
        ix.extend([a, b]);
        tally.check(t, "t^[1] satisfies the defining relation", &ix, &z);
    });

    for r in 1..=k {
        let x = model.t(1, 1, r);
        for i in 2..n {
            for j in 2..n {
                for s in 1..=k {
                    let z = alg.supercomm(&x, t1.get(i - 2, j - 2).coeff(s));
                    tally.check(t, "[t_11^(r), t^[1]_ij^(s)]", &idx(&[r, i, j, s]), &z);
                }
            }
        }
    }

    if max_level(&space) >= 2 {
        let ring = SeriesRing::new(alg, k);
        let tm = model.t_matrix(k);
        match (psi(&ring, &tm, 1).and_then(|a| psi(&ring, &a, 1)), psi(&ring, &tm, 2)) {
            (Ok(twice), Ok(direct)) => {
                for i in 0..n - 4 {
                    for j in 0..n - 4 {
                        let ix = idx(&[i + 3, j + 3]);
                        check_series(tally, t, "psi_1 psi_1 = psi_2", &ix, twice.get(i, j), direct.get(i, j), 1..=k);
                    }
                }
            }
            (Err(e), _) | (_, Err(e)) => setup_failure(tally, "psi_1 psi_1 = psi_2", e),
        }
    }

    // [e_1k(u), t^[1]_ij(v)] and [f_k1(u), t^[1]_ji(v)].
    let order = 2 * k - 1;
    let ring = SeriesRing::new(alg, order);
    let tm = model.t_matrix(order);
    let (t1, inv) = match (psi(&ring, &tm, 1), ring.invert(tm.get(0, 0))) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) => return setup_failure(tally, "t^[1] quasideterminants", e),
        (_, Err(e)) => return setup_failure(tally, "t_11 inverse", e),
    };
    let e1: Vec<TruncSeries<Elem<T>>> = (1..=n).map(|j| ring.mul(&inv, tm.get(0, j - 1))).collect();
    let f1: Vec<TruncSeries<Elem<T>>> = (1..=n).map(|j| ring.mul(tm.get(j - 1, 0), &inv)).collect();
    let bv = Bivar::new(alg);
    let p = |i: usize| space.parity(i);
    let tt = |i: usize, j: usize| t1.get(i - 2, j - 2);
    for kk in 2..n {
        for i in 2..n {
            for j in 2..n {
                if kk == space.prime(j) {
                    continue;
                }
                let ix = idx(&[kk, i, j]);
                let lhs = bv.bracket(&e1[kk - 1], tt(i, j), k, k);
                let dd = bv.divided_difference(&e1[j - 1], &Q::zero(), k, k);
                let s = -sign(p(i) + p(kk) + p(i) * p(kk));
                let rhs = bv.scale(&bv.mul_v_left(tt(i, kk), &dd), &s);
                check_bivar(tally, t, "[e_1k(u), t^[1]_ij(v)]", &ix, &lhs, &rhs, 1..=k, 1..=k);

                let ix = idx(&[kk, j, i]);
                let lhs = bv.bracket(&f1[kk - 1], tt(j, i), k, k);
                let dd = bv.divided_difference(&f1[j - 1], &Q::zero(), k, k);
                let s = sign(p(j) + p(kk) + p(j) * p(kk));
                let rhs = bv.scale(&bv.mul_v_right(&dd, tt(kk, i)), &s);
                check_bivar(tally, t, "[f_k1(u), t^[1]_ji(v)]", &ix, &lhs, &rhs, 1..=k, 1..=k);
            }
        }
    }
}
