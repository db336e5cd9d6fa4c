use rand::Rng;

use crate::ncseries::{Gen, NcPoly};
use crate::rational::sign;
use crate::ring::{Algebra, Ring};
use crate::sample::seeded;

use super::cleared::{for_each_residual, residuals_of, IndexData};
use super::report::Tally;
use super::target::{Model, Target};
use super::util::idx;
use super::SuiteConfig;

pub const ASSOCIATIVITY_TRIPLES: usize = 200;
/// Pairs `(g1, g2)` with `r1 + r2 ≤ SOUNDNESS_LEVEL` are compared in a
/// representation.
pub const SOUNDNESS_LEVEL: usize = 4;
/// Random quadruples whose cleared relation is evaluated in a representation.
pub const REP_QUADRUPLES: usize = 40;

fn degree_ok(p: &NcPoly, bound: usize) -> bool {
    p.filtration_degree().is_none_or(|d| d <= bound)
}

pub fn run<T: Target>(model: &Model<T>, cfg: &SuiteConfig, tally: &mut Tally) {
    let t = &model.target;
    let k = cfg.k;
    if t.rep().is_some() {
        soundness(model, tally);
        let n = model.space().size();
        let mut rng = seeded(cfg.seed ^ 0x0c1ea2);
        let quads: Vec<[usize; 4]> = (0..REP_QUADRUPLES).map(|_| [0; 4].map(|_| rng.gen_range(1..=n))).collect();
        let data = IndexData::of(model.space());
        residuals_of(model.alg(), &data, &|i, j, r| model.t(i, j, r), quads, 2 * k, |q, a, b, z| {
            let mut ix = idx(&q);
            ix.extend([a, b]);
            tally.check(t, "cleared defining relation", &ix, &z);
        });
        return;
    }
    let Some(engine) = t.engine() else { return };
    let space = model.space();

    let data = IndexData::of(space);
    for_each_residual(model.alg(), &data, &|i, j, r| model.t(i, j, r), 2 * k, |q, a, b, z| {
        let mut ix = idx(&q);
        ix.extend([a, b]);
        tally.check(t, "cleared defining relation", &ix, &z);
    });

    let n = space.size();
    let mut rng = seeded(cfg.seed ^ 0xa550c);
    let mut done = 0;
    while done < ASSOCIATIVITY_TRIPLES {
        let g: Vec<(usize, usize, usize)> =
            (0..3).map(|_| (rng.gen_range(1..=n), rng.gen_range(1..=n), rng.gen_range(1..=k))).collect();
        let levels: usize = g.iter().map(|x| x.2).sum();
        if levels > k + 2 {
            continue;
        }
        done += 1;
        let [x, y, z] = [0, 1, 2].map(|p| model.t(g[p].0, g[p].1, g[p].2));
        let alg = model.alg();
        let left = alg.mul(&alg.mul(&x, &y), &z);
        let right = alg.mul(&x, &alg.mul(&y, &z));
        let ix = idx(&[g[0].0, g[0].1, g[0].2, g[1].0, g[1].1, g[1].2, g[2].0, g[2].1, g[2].2]);
        tally.check(t, "associativity", &ix, &alg.sub(&left, &right));
        let prod = engine.mul(
            &engine.mul(&engine.t(g[0].0, g[0].1, g[0].2), &engine.t(g[1].0, g[1].1, g[1].2)),
            &engine.t(g[2].0, g[2].1, g[2].2),
        );
        tally.check_bool(degree_ok(&prod, levels - 3), "filtration of products", &ix, || {
            vec![format!("degree {:?} > {}", prod.filtration_degree(), levels - 3)]
        });
    }

    let table = engine.commutator_table(k);
    for (g1, g2, c12) in &table {
        if g1 > g2 {
            continue;
        }
        let c21 = engine.commutator(*g2, *g1);
        let s = sign(engine.gen_parity(*g1) * engine.gen_parity(*g2));
        let ix = idx(&[g1.i(), g1.j(), g1.r(), g2.i(), g2.j(), g2.r()]);
        let z = t.lift_poly(&engine.add(&c21, &engine.scale(c12, &s))).expect("symbolic target");
        tally.check(t, "super-antisymmetry", &ix, &z);
        let bound = g1.r() + g2.r() - 2;
        tally.check_bool(degree_ok(c12, bound), "filtration of commutators", &ix, || {
            vec![format!("degree {:?} > {bound}", c12.filtration_degree())]
        });
    }
}

/// Image of each engine commutator against the super-commutator of images.
fn soundness<T: Target>(model: &Model<T>, tally: &mut Tally) {
    let t = &model.target;
    let (Some(rep), Some(reference)) = (t.rep(), t.reference()) else { return };
    let engine = reference.target.engine().expect("symbolic reference");
    let alg = model.alg();
    let gens: Vec<Gen> = engine.independent_generators(SOUNDNESS_LEVEL - 1);
    for &g1 in &gens {
        for &g2 in &gens {
            if g1.r() + g2.r() > SOUNDNESS_LEVEL {
                continue;
            }
            let lhs = t.lift_operator(&rep.image(&engine.commutator(g1, g2))).expect("representation target");
            let rhs = alg.supercomm(&model.t(g1.i(), g1.j(), g1.r()), &model.t(g2.i(), g2.j(), g2.r()));
            let ix = idx(&[g1.i(), g1.j(), g1.r(), g2.i(), g2.j(), g2.r()]);
            tally.check(t, "commutator image", &ix, &alg.sub(&lhs, &rhs));
        }
    }
}
