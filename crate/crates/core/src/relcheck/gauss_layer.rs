use crate::gauss::quasidet;
use crate::ncseries::{SeriesRing, TruncSeries};
use crate::rational::sign;
use crate::ring::{Algebra, Ring};
use crate::superspace::Family;

use super::report::Tally;
use super::target::{Elem, Model, Target};
use super::util::{check_series, idx, setup_failure};
use super::SuiteConfig;

pub fn run<T: Target>(model: &Model<T>, cfg: &SuiteConfig, tally: &mut Tally) {
    let t = &model.target;
    let alg = model.alg();
    let space = model.space().clone();
    let n = space.size();
    let k = cfg.k;
    let ring = SeriesRing::new(alg, k);
    let g = match model.gauss(k, n) {
        Ok(g) => g,
        Err(e) => return setup_failure(tally, "Gauss decomposition", e),
    };
    let tm = model.t_matrix(k);

    let prod = g.ldu().product(&ring);
    for i in 1..=n {
        for j in 1..=n {
            check_series(tally, t, "F H E = T", &idx(&[i, j]), prod.get(i - 1, j - 1), tm.get(i - 1, j - 1), 0..=k);
        }
    }

    // Quasideterminant formulas for h_i, e_ij, f_ji.
    for i in 1..=n {
        let lead: Vec<usize> = (0..i).collect();
        let h = match quasidet(&ring, &tm.select(&lead, &lead), i - 1, i - 1) {
            Ok(h) => h,
            Err(e) => return setup_failure(tally, "quasideterminant", e),
        };
        check_series(tally, t, "h_i quasideterminant", &idx(&[i]), &h, g.h(i), 0..=k);
        let hinv = match ring.invert(&h) {
            Ok(x) => x,
            Err(e) => return setup_failure(tally, "h_i inverse", e),
        };
        for j in i + 1..=n {
            let mut cols: Vec<usize> = (0..i - 1).collect();
            cols.push(j - 1);
            let (qe, qf) = match (
                quasidet(&ring, &tm.select(&lead, &cols), i - 1, i - 1),
                quasidet(&ring, &tm.select(&cols, &lead), i - 1, i - 1),
            ) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return setup_failure(tally, "quasideterminant", e),
            };
            check_series(tally, t, "e_ij quasideterminant", &idx(&[i, j]), &ring.mul(&hinv, &qe), g.e(i, j), 0..=k);
            check_series(tally, t, "f_ji quasideterminant", &idx(&[j, i]), &ring.mul(&qf, &hinv), g.f(j, i), 0..=k);
        }
    }

    // τ(e_ij) = f_ji (-1)^{īj̄+j̄}, τ(f_ji) = e_ij (-1)^{īj̄+ī}, τ(h_i) = h_i
    if t.tau(&alg.zero()).is_some() {
        let tau = |x: &Elem<T>| t.tau(x).expect("tau available");
        for i in 1..=n {
            for r in 1..=k {
                let h = g.h(i).coeff(r);
                tally.check(t, "tau on h_i", &idx(&[i, r]), &alg.sub(&tau(h), h));
            }
            for j in i + 1..=n {
                let (pi, pj) = (space.parity(i), space.parity(j));
                for r in 1..=k {
                    let (e, f) = (g.e(i, j).coeff(r), g.f(j, i).coeff(r));
                    let te = alg.sub(&tau(e), &alg.scale(f, &sign(pi * pj + pj)));
                    tally.check(t, "tau on e_ij", &idx(&[i, j, r]), &te);
                    let tf = alg.sub(&tau(f), &alg.scale(e, &sign(pi * pj + pi)));
                    tally.check(t, "tau on f_ji", &idx(&[j, i, r]), &tf);
                }
            }
        }
    }

    ladder(model, &g, &ring, tally);

    if let (Some(rep), Some(reference)) = (t.rep(), t.reference()) {
        match reference.gauss(k, n) {
            Ok(sym) => {
                let image = sym.map(|p| t.lift_operator(&rep.image(p)).expect("representation target"));
                let (a, b) = (image.ldu(), g.ldu());
                for i in 1..=n {
                    check_series(tally, t, "image of h_i", &idx(&[i]), &a.h[i - 1], &b.h[i - 1], 0..=k);
                    for j in i + 1..=n {
                        let (r, c) = (i - 1, j - 1);
                        check_series(tally, t, "image of e_ij", &idx(&[i, j]), a.e.get(r, c), b.e.get(r, c), 0..=k);
                        check_series(tally, t, "image of f_ji", &idx(&[j, i]), a.f.get(c, r), b.f.get(c, r), 0..=k);
                    }
                }
            }
            Err(e) => setup_failure(tally, "symbolic Gauss decomposition", e),
        }
    }
}

/// Brackets of `e_ij(u)` with the level-one generators `e_{j,j+1}^(1)`.
fn ladder<T: Target>(
    model: &Model<T>,
    g: &crate::gauss::GaussData<Elem<T>>,
    ring: &SeriesRing<'_, T::A>,
    tally: &mut Tally,
) {
    let t = &model.target;
    let alg = model.alg();
    let space = model.space();
    let k = ring.order();
    let (m, rank) = (space.m(), space.rank());
    let top = match space.family() {
        Family::B => rank,
        Family::D => rank - 1,
    };
    let p = |i: usize| space.parity(i);
    let e1 = |i: usize, j: usize| g.e(i, j).coeff(1).clone();
    let bracket_right = |s: &TruncSeries<Elem<T>>, x: &Elem<T>| ring.from_fn(|r| alg.supercomm(s.coeff(r), x));
    let bracket_left = |x: &Elem<T>, s: &TruncSeries<Elem<T>>| ring.from_fn(|r| alg.supercomm(x, s.coeff(r)));

    for j in 1..=top {
        let x = e1(j, j + 1);
        let sj = sign(p(j));
        for i in 1..j {
            let lhs = bracket_right(g.e(i, j), &x);
            check_series(tally, t, "[e_ij, e_j,j+1^(1)]", &idx(&[i, j]), &lhs, &ring.scale(g.e(i, j + 1), &sj), 1..=k);
            let (jp, jp1) = (space.prime(j), space.prime(j + 1));
            let lhs = bracket_left(&x, g.e(i, jp1));
            check_series(
                tally,
                t,
                "[e_j,j+1^(1), e_i,(j+1)']",
                &idx(&[i, j]),
                &lhs,
                &ring.scale(g.e(i, jp), &sj),
                1..=k,
            );
        }
    }
    for i in 1..=m {
        let x = e1(i, i + 1);
        let ip1 = space.prime(i + 1);
        let lhs = bracket_left(&x, g.e(i, ip1));
        let rhs = ring.neg(&ring.add(g.e(i, space.prime(i)), &ring.mul(g.e(i, i + 1), g.e(i, ip1))));
        check_series(tally, t, "[e_i,i+1^(1), e_i,(i+1)']", &idx(&[i]), &lhs, &rhs, 1..=k);
    }
    if space.family() == Family::D {
        let x = e1(rank - 1, space.prime(rank));
        for i in 1..=rank - 2 {
            let lhs = bracket_right(g.e(i, rank - 1), &x);
            check_series(
                tally,
                t,
                "[e_i,m+n-1, e_m+n-1,(m+n)'^(1)]",
                &idx(&[i]),
                &lhs,
                g.e(i, space.prime(rank)),
                1..=k,
            );
        }
    }
}
