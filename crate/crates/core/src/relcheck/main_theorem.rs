use rand::Rng;

use crate::rational::{q, qi};
use crate::ring::{Algebra, Ring};
use crate::sample::{seeded, small_rational};
use crate::superspace::pairing;

use super::drinfeld::{serre_pairs, serre_sum, super_serre_ends};
use super::report::Tally;
use super::target::{Elem, Model, Target};
use super::util::{idx, setup_failure};
use super::SuiteConfig;

const MU_SERIES: usize = 3;

/// The Drinfeld-type presentation in terms of `κ_{ir}`, `ξ^±_{ir}`.
pub fn run<T: Target>(model: &Model<T>, cfg: &SuiteConfig, tally: &mut Tally) {
    let t = &model.target;
    let alg = model.alg();
    let space = model.space().clone();
    let k = cfg.k;
    let rank = space.rank();
    let m = space.m();
    let cur = match model.currents(2 * k - 1) {
        Ok(c) => c,
        Err(e) => return setup_failure(tally, "Drinfeld currents", e),
    };
    tally.check_bool(cur.well_formed(alg), "currents well formed", &[], Vec::new);
    let kap = |i: usize, r: usize| cur.kappa_coeff(i, r);
    let xi = |p: bool, i: usize, r: usize| cur.xi_coeff(p, i, r);
    let pair = |i: usize, j: usize| pairing(&space, i, j).expect("simple root index");
    let anti = |x: &Elem<T>, y: &Elem<T>| alg.add(&alg.mul(x, y), &alg.mul(y, x));
    let signs = [(true, "+"), (false, "-")];

    for i in 1..=rank {
        for j in 1..=rank {
            for r in 0..k {
                for s in 0..k {
                    let ix = idx(&[i, j, r, s]);
                    if i <= j {
                        tally.check(t, "[kappa_ir, kappa_js]", &ix, &alg.supercomm(kap(i, r), kap(j, s)));
                    }
                    let mut z = alg.supercomm(xi(true, i, r), xi(false, j, s));
                    if i == j {
                        z = alg.sub(&z, kap(i, r + s));
                    }
                    tally.check(t, "[xi+_ir, xi-_js]", &ix, &z);
                }
            }
            let w = pair(i, j);
            for (p, pm) in signs {
                let sw = if p { w.clone() } else { -w.clone() };
                let half = &sw * q(1, 2);
                for s in 0..k - 1 {
                    let z = alg.sub(&alg.supercomm(kap(i, 0), xi(p, j, s)), &alg.scale(xi(p, j, s), &sw));
                    tally.check(t, &format!("[kappa_i0, xi{pm}_js]"), &idx(&[i, j, s]), &z);
                    for r in 0..k - 1 {
                        let ix = idx(&[i, j, r, s]);
                        let lhs = alg.sub(
                            &alg.supercomm(kap(i, r + 1), xi(p, j, s)),
                            &alg.supercomm(kap(i, r), xi(p, j, s + 1)),
                        );
                        let rhs = alg.scale(&anti(kap(i, r), xi(p, j, s)), &half);
                        tally.check(t, &format!("[kappa_i(r+1), xi{pm}_js] shift"), &ix, &alg.sub(&lhs, &rhs));
                        let lhs = alg.sub(
                            &alg.supercomm(xi(p, i, r + 1), xi(p, j, s)),
                            &alg.supercomm(xi(p, i, r), xi(p, j, s + 1)),
                        );
                        let rhs = alg.scale(&anti(xi(p, i, r), xi(p, j, s)), &half);
                        tally.check(t, &format!("[xi{pm}_i(r+1), xi{pm}_js] shift"), &ix, &alg.sub(&lhs, &rhs));
                    }
                }
            }
        }
    }

    for (p, pm) in signs {
        for r in 0..k {
            for s in r..k {
                let z = alg.supercomm(xi(p, m, r), xi(p, m, s));
                tally.check(t, &format!("[xi{pm}_mr, xi{pm}_ms]"), &idx(&[r, s]), &z);
            }
        }
    }
    for r in 0..k {
        for s in 0..k {
            if r + s > 2 {
                continue;
            }
            for (p, pm) in signs {
                let z = alg.supercomm(kap(m, r), xi(p, m, s));
                tally.check(t, &format!("[kappa_mr, xi{pm}_ms]"), &idx(&[r, s]), &z);
            }
        }
    }

    let mut rng = seeded(cfg.seed ^ 0x5e44e1);
    for (i, j, kk) in serre_pairs(&space) {
        for spot in [false, true] {
            let levels: Vec<usize> = (0..=kk).map(|_| if spot { rng.gen_range(0..k) } else { 0 }).collect();
            for (p, pm) in signs {
                let xs: Vec<&Elem<T>> = levels[..kk].iter().map(|&r| xi(p, i, r)).collect();
                let z = serre_sum(alg, &xs, xi(p, j, levels[kk]));
                let mut ix = idx(&[i, j]);
                ix.extend(levels.iter().map(|&r| r as i64));
                tally.check(t, &format!("Serre xi{pm}"), &ix, &z);
            }
        }
    }
    for end in super_serre_ends(&space) {
        for spot in [false, true] {
            let (r, s) = if spot { (rng.gen_range(0..k), rng.gen_range(0..k)) } else { (0, 0) };
            for (p, pm) in signs {
                let left = alg.supercomm(xi(p, m - 1, r), xi(p, m, 0));
                let right = alg.supercomm(xi(p, m, 0), xi(p, end, s));
                let z = alg.supercomm(&left, &right);
                tally.check(t, &format!("super Serre xi{pm}"), &idx(&[m - 1, m, end, r, s]), &z);
            }
        }
    }

    // μ_f: T(u) ↦ f(u) T(u) fixes every κ and ξ coefficient.
    if t.mu_f(&alg.zero(), &[qi(1)]).is_some() {
        let mut rng = seeded(cfg.seed ^ 0x3f);
        for series in 0..MU_SERIES {
            let mut f = vec![qi(1)];
            f.extend((1..=k).map(|_| small_rational(&mut rng, 5)));
            let mut check = |name: &str, i: usize, r: usize, x: &Elem<T>| {
                if let Some(y) = t.mu_f(x, &f) {
                    tally.check(t, name, &idx(&[series, i, r]), &alg.sub(&y, x));
                } else {
                    setup_failure(tally, name, "mu_f undefined");
                }
            };
            for i in 1..=rank {
                for r in 0..k {
                    check("mu_f fixes kappa_ir", i, r, kap(i, r));
                    check("mu_f fixes xi+_ir", i, r, xi(true, i, r));
                    check("mu_f fixes xi-_ir", i, r, xi(false, i, r));
                }
            }
        }
    }
}
