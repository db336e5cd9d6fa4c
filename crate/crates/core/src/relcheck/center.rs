use num_traits::{One, Zero};

use crate::evalrep::{scalar_function, OperatorFunctions, RatFun, RepAssignment, REP_POINTS};
use crate::matrix::Matrix;
use crate::ncseries::{SeriesRing, TruncSeries};
use crate::rational::{fmt_q, q, qi, Q};
use crate::ring::{Algebra, Ring};
use crate::sample::{rational_avoiding, seeded};
use crate::superspace::{Family, SuperSpace};

use super::report::Tally;
use super::target::{Model, Target};
use super::util::{check_series, idx, setup_failure};
use super::SuiteConfig;

/// `c(u)` as a product of shifted `h_i`, given `h(i, s) = h_i(u + s)`.
/// `None` if an inverse fails.
pub fn product_formula<R: Ring>(ring: &R, space: &SuperSpace, h: impl Fn(usize, &Q) -> R::Elem) -> Option<R::Elem> {
    let (m, n) = (space.m() as i64, space.n_orth() as i64);
    let mut acc = ring.one();
    let ratio = |acc: &mut R::Elem, i: usize, num: Q, den: Q| -> Option<()> {
        let f = ring.mul(&h(i, &num), &ring.try_inv(&h(i, &den))?);
        *acc = ring.mul(acc, &f);
        Some(())
    };
    for i in 1..=m {
        ratio(&mut acc, i as usize, qi(i - 1), qi(i))?;
    }
    let last = match space.family() {
        Family::B => n,
        Family::D => n - 1,
    };
    for j in 1..=last {
        ratio(&mut acc, (m + j) as usize, qi(m - j + 1), qi(m - j))?;
    }
    let r = (m + n) as usize;
    let tail = match space.family() {
        Family::B => ring.mul(&h(r + 1, &(qi(m - n) + q(1, 2))), &h(r + 1, &qi(m - n))),
        Family::D => ring.mul(&h(r, &qi(m - n + 1)), &h(r + 1, &qi(m - n + 1))),
    };
    Some(ring.mul(&acc, &tail))
}

/// `T(u-κ) T^t(u) = c(u)`, centrality of `c_r`, `c = h_1 h_1'(u-κ)` and the
/// product formula for `c(u)`.
pub fn run<T: Target>(model: &Model<T>, cfg: &SuiteConfig, tally: &mut Tally) {
    let t = &model.target;
    let alg = model.alg();
    let space = model.space().clone();
    let n = space.size();
    let k = cfg.k;
    let ring = SeriesRing::new(alg, k);
    let kappa = space.kappa().clone();

    let tm = model.t_matrix(k);
    let shifted = tm.map(|s| ring.shift(s, &-kappa.clone()));
    let mm = shifted.mul(&ring, &space.super_transpose(&ring, &tm));
    let c = mm.get(0, 0).clone();
    tally.check(t, "c(u) constant term", &[], &alg.sub(c.coeff(0), &alg.one()));
    let zero = ring.zero();
    for i in 1..=n {
        for j in 1..=n {
            let (target, from) = match (i == j, i) {
                (true, 1) => continue,
                (true, _) => (&c, 1),
                (false, _) => (&zero, 0),
            };
            check_series(tally, t, "T(u-kappa) T^t(u) scalar", &idx(&[i, j]), mm.get(i - 1, j - 1), target, from..=k);
        }
    }
    let c1 = alg.sub(c.coeff(1), &alg.add(&model.t(1, 1, 1), &model.t(n, n, 1)));
    tally.check(t, "c_1 = t_11^(1) + t_1'1'^(1)", &[], &c1);
    if let Some(engine) = t.engine() {
        for r in 1..=k {
            let central = t.lift_poly(&engine.central(r)).expect("symbolic target");
            tally.check(t, "engine central element", &idx(&[r]), &alg.sub(&central, c.coeff(r)));
        }
    }
    for r in 1..=k {
        for i in 1..=n {
            for j in 1..=n {
                for s in 1..=k {
                    let z = alg.supercomm(c.coeff(r), &model.t(i, j, s));
                    tally.check(t, "c_r central", &idx(&[r, i, j, s]), &z);
                }
            }
        }
    }

    let g = match model.gauss(k, n) {
        Ok(g) => g,
        Err(e) => return setup_failure(tally, "Gauss decomposition", e),
    };
    let hh = ring.mul(g.h(1), &ring.shift(g.h(n), &-kappa.clone()));
    check_series(tally, t, "c = h_1 h_1'(u-kappa)", &[], &hh, &c, 0..=k);
    match product_formula(&ring, &space, |i, s| ring.shift(g.h(i), s)) {
        Some(p) => check_series(tally, t, "c(u) as product of h_i", &[], &p, &c, 0..=k),
        None => setup_failure(tally, "c(u) as product of h_i", "h_i not invertible"),
    }

    if let Some(rep) = t.rep() {
        exact_in_rep(rep, cfg, tally, &t.label());
    }
}

/// The same identities for the rational functions of the representation,
/// exactly and at sample points.
fn exact_in_rep(rep: &RepAssignment, cfg: &SuiteConfig, tally: &mut Tally, label: &str) {
    let space = rep.space();
    let n = space.size();
    let ring = OperatorFunctions::new(space);
    let rel = |name: &str| format!("{name} @ {label}");
    let central = rep.central_matrix();
    let Some(c) = scalar_function(central.get(0, 0)) else {
        tally.check_bool(false, &rel("central matrix scalar (exact)"), &[], Vec::new);
        return;
    };
    let scalar = |f: &RatFun| Matrix::from_fn(n, n, |r, s| if r == s { f.clone() } else { RatFun::zero() });
    let cm = scalar(&c);
    let zero = scalar(&RatFun::zero());
    for i in 1..=n {
        for j in 1..=n {
            let want = if i == j { &cm } else { &zero };
            let ok = central.get(i - 1, j - 1) == want;
            tally.check_bool(ok, &rel("central matrix scalar (exact)"), &idx(&[i, j]), Vec::new);
        }
    }
    let ldu = match rep.gauss_functions(n) {
        Ok(d) => d,
        Err(e) => return setup_failure(tally, &rel("Gauss decomposition (exact)"), e),
    };
    let h = |i: usize, s: &Q| ldu.h[i - 1].map(|f| f.shift(s));
    let hh = ring.mul(&h(1, &Q::zero()), &h(n, &-space.kappa().clone()));
    let prod = product_formula(&ring, space, h);
    let mut rng = seeded(cfg.seed ^ 0xce47);
    for (name, lhs) in [("c = h_1 h_1'(u-kappa)", Some(hh)), ("c(u) as product of h_i", prod)] {
        let Some(lhs) = lhs else {
            setup_failure(tally, &rel(name), "h_i not invertible");
            continue;
        };
        tally.check_bool(lhs == cm, &rel(&format!("{name} (exact)")), &[], || vec![format!("c(u) = {c}")]);
        let mut done = 0;
        while done < REP_POINTS {
            let u = rational_avoiding(&mut rng, 50, &[]);
            let at = |m: &Matrix<RatFun>| -> Option<Vec<Q>> { m.iter().map(|f| f.eval(&u)).collect() };
            let (Some(a), Some(b)) = (at(&lhs), at(&cm)) else { continue };
            done += 1;
            tally.check_bool(a == b, &rel(&format!("{name} at a point")), &[done as i64], || {
                vec![format!("u = {}", fmt_q(&u))]
            });
        }
    }
    let at_infinity = c.expand_at_infinity(0).is_some_and(|v| v[0].is_one());
    tally.check_bool(at_infinity, &rel("c(u) -> 1"), &[], || vec![format!("c(u) = {c}")]);
}

/// Shifted products of `h_i h_i'` and commutativity of all `h_i` coefficients.
pub fn run_h<T: Target>(model: &Model<T>, cfg: &SuiteConfig, tally: &mut Tally) {
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
    let pair = |i: usize, s: &Q| -> TruncSeries<_> { ring.mul(g.h(i), &ring.shift(g.h(space.prime(i)), s)) };
    let (big_n, m) = (space.n_big() as i64, space.m() as i64);
    for i in 1..=m {
        let s = q(-big_n, 2) + qi(m - i + 1);
        let (i, shift) = (i as usize, s);
        check_series(
            tally,
            t,
            "h_i h_i' shifted (symplectic range)",
            &idx(&[i]),
            &pair(i, &shift),
            &pair(i + 1, &shift),
            0..=k,
        );
    }
    let last = match space.family() {
        Family::B => space.n_orth(),
        Family::D => space.n_orth() - 1,
    };
    for j in 1..=last as i64 {
        let s = q(-big_n, 2) + qi(j + 1);
        let i = (m + j) as usize;
        check_series(
            tally,
            t,
            "h_i h_i' shifted (orthogonal range)",
            &idx(&[i]),
            &pair(i, &s),
            &pair(i + 1, &s),
            0..=k,
        );
    }
    for i in 1..=n {
        for j in i..=n {
            for r in 1..=k {
                for s in 1..=k {
                    let z = alg.supercomm(g.h(i).coeff(r), g.h(j).coeff(s));
                    tally.check(t, "h coefficients commute", &idx(&[i, r, j, s]), &z);
                }
            }
        }
    }
}
