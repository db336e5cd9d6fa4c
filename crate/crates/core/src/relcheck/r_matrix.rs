use num_traits::Zero;

use crate::evalrep::RTT_GATE_POINTS;
use crate::matrix::Matrix;
use crate::rational::{fmt_q, qi, Q};
use crate::ring::Rationals;
use crate::sample::{rational_avoiding, seeded, small_rational};
use crate::superspace::{build_r_form, p_operator, q_operator, ybe_residual, SparseMatrix};

use super::report::Tally;
use super::target::{Model, Target};
use super::SuiteConfig;

pub const YBE_POINTS: usize = 20;
const UNITARITY_POINTS: usize = 5;

fn entries(m: &SparseMatrix) -> Vec<String> {
    m.entries().take(20).map(|(i, j, c)| format!("({i},{j}): {}", fmt_q(c))).collect()
}

/// Operator identities of `P`, `Q`, the super-transpose, the Yang–Baxter
/// equation and unitarity; in a representation, the RTT relation.
pub fn run<T: Target>(model: &Model<T>, cfg: &SuiteConfig, tally: &mut Tally) {
    let t = &model.target;
    let space = model.space();
    if let Some(rep) = t.rep() {
        let rel = format!("RTT @ {}", t.label());
        for (k, (u, v)) in rep.sample_pairs(cfg.seed ^ 0x7e57, RTT_GATE_POINTS).into_iter().enumerate() {
            let res = rep.rtt_residual(&u, &v);
            tally.check_bool(res.is_zero(), &rel, &[k as i64], || {
                let mut d = vec![format!("u = {}, v = {}", fmt_q(&u), fmt_q(&v))];
                d.extend(entries(&res));
                d
            });
        }
        return;
    }
    let Some(engine) = t.engine() else { return };
    let form = engine.form();

    let p = p_operator(space);
    let qo = q_operator(space);
    let id = SparseMatrix::identity(p.dim());
    let mut zero = |rel: &str, m: SparseMatrix| {
        tally.check_bool(m.is_zero(), rel, &[], || entries(&m));
    };
    zero("P^2 = 1", p.mul(&p).sub(&id));
    let tr = qi(space.n_big() as i64 - 2 * space.m() as i64);
    zero("Q^2 = (N-2m) Q", qo.mul(&qo).sub(&qo.scale(&tr)));
    zero("PQ = Q", p.mul(&qo).sub(&qo));
    zero("QP = Q", qo.mul(&p).sub(&qo));

    let mut rng = seeded(cfg.seed);
    let n = space.size();
    for k in 0..3 {
        let a = Matrix::from_fn(n, n, |_, _| small_rational(&mut rng, 20));
        let back = space.super_transpose(&Rationals, &space.super_transpose(&Rationals, &a));
        tally.check_bool(back == a, "super-transpose involutive", &[k], Vec::new);
    }

    let kappa = form.kappa.clone();
    for k in 0..YBE_POINTS {
        let u = rational_avoiding(&mut rng, 50, &[Q::zero(), kappa.clone()]);
        let v = rational_avoiding(&mut rng, 50, &[Q::zero(), kappa.clone(), u.clone(), &u - &kappa]);
        let res = ybe_residual(space, form, &u, &v).expect("sample points avoid poles");
        tally.check_bool(res.is_zero(), "Yang-Baxter", &[k as i64], || {
            let mut d = vec![format!("u = {}, v = {}", fmt_q(&u), fmt_q(&v))];
            d.extend(entries(&res));
            d
        });
    }

    // R(u) R(-u) = (1 - u^{-2}) 1
    for k in 0..UNITARITY_POINTS {
        let u = rational_avoiding(&mut rng, 50, &[Q::zero(), kappa.clone(), -kappa.clone()]);
        let prod = build_r_form(space, form, &u)
            .and_then(|a| Ok(a.mul(&build_r_form(space, form, &-u.clone())?)))
            .expect("sample points avoid poles");
        let c = qi(1) - (&u * &u).recip();
        let res = prod.sub(&id.scale(&c));
        tally.check_bool(res.is_zero(), "unitarity", &[k as i64], || entries(&res));
    }
}
