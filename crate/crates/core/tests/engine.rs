use proptest::prelude::*;

use osp_yangian::evalrep::{Operators, RepAssignment};
use osp_yangian::ncseries::{Engine, Gen, NcPoly};
use osp_yangian::rational::{q, qi};
use osp_yangian::ring::{Algebra, Ring};
use osp_yangian::SuperSpace;

fn space31() -> SuperSpace {
    SuperSpace::new(3, 1).unwrap()
}

fn gen_strategy(n: usize, max_level: usize) -> impl Strategy<Value = (usize, usize, usize)> {
    (1..=n, 1..=n, 1..=max_level)
}

#[test]
fn degree_zero_generators_are_the_identity() {
    let e = Engine::new(&space31());
    for i in 1..=5 {
        for j in 1..=5 {
            let want = if i == j { NcPoly::one() } else { NcPoly::zero() };
            assert_eq!(e.t(i, j, 0), want);
        }
    }
}

#[test]
fn t11_coefficients_commute() {
    let e = Engine::new(&space31());
    assert!(e.commutator(Gen::new(1, 1, 1), Gen::new(1, 1, 2)).is_zero());
    assert!(e.commutator(Gen::new(1, 1, 2), Gen::new(1, 1, 3)).is_zero());
}

#[test]
fn first_central_coefficient_commutes_with_level_one() {
    let e = Engine::new(&space31());
    let c1 = e.central(1);
    for i in 1..=5 {
        for j in 1..=5 {
            assert!(e.bracket(&c1, &e.t(i, j, 1)).is_zero(), "c_1 vs t_{i}{j}^(1)");
        }
    }
}

#[test]
fn level_one_brackets_are_matrix_units() {
    // [t_ij^(1), t_kl^(1)] has filtration degree ≤ 1, and maps to the
    // super-commutator of images in the evaluation representation.
    let s = space31();
    let e = Engine::new(&s);
    let rep = RepAssignment::build(&s, q(3, 7), 1).unwrap();
    let ops = Operators::new(&s);
    for g1 in e.independent_generators(1) {
        for g2 in e.independent_generators(1) {
            let c = e.commutator(g1, g2);
            assert!(c.filtration_degree().is_none_or(|d| d == 0), "{g1} {g2}: {c}");
            let lhs = rep.image(&c);
            let rhs = ops.supercomm(&rep.generator_image(g1), &rep.generator_image(g2));
            assert_eq!(lhs, rhs, "[{g1}, {g2}]");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn commutators_are_sound_in_the_representation(a in gen_strategy(5, 2), b in gen_strategy(5, 2), shift in -20i64..20) {
        let s = space31();
        let e = Engine::new(&s);
        let rep = RepAssignment::build(&s, qi(shift), 3).unwrap();
        let ops = Operators::new(&s);
        let (x, y) = (e.t(a.0, a.1, a.2), e.t(b.0, b.1, b.2));
        let lhs = rep.image(&e.bracket(&x, &y));
        let rhs = ops.supercomm(&rep.image(&x), &rep.image(&y));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn products_are_associative(a in gen_strategy(5, 2), b in gen_strategy(5, 2), c in gen_strategy(5, 2)) {
        let e = Engine::new(&space31());
        let (x, y, z) = (e.t(a.0, a.1, a.2), e.t(b.0, b.1, b.2), e.t(c.0, c.1, c.2));
        prop_assert_eq!(e.mul(&e.mul(&x, &y), &z), e.mul(&x, &e.mul(&y, &z)));
    }

    #[test]
    fn normal_form_is_idempotent(a in gen_strategy(5, 3), b in gen_strategy(5, 3)) {
        let e = Engine::new(&space31());
        let p = e.mul(&e.t(a.0, a.1, a.2), &e.t(b.0, b.1, b.2));
        prop_assert_eq!(e.normalize(&p), p);
    }

    #[test]
    fn brackets_are_super_antisymmetric(a in gen_strategy(5, 2), b in gen_strategy(5, 2)) {
        let e = Engine::new(&space31());
        let (x, y) = (e.t(a.0, a.1, a.2), e.t(b.0, b.1, b.2));
        let parity = ((a.0 <= 1 || a.0 > 4) as u32 + (a.1 <= 1 || a.1 > 4) as u32) * ((b.0 <= 1 || b.0 > 4) as u32 + (b.1 <= 1 || b.1 > 4) as u32);
        let sign = if parity % 2 == 1 { qi(1) } else { qi(-1) };
        let sum = e.add(&e.bracket(&y, &x), &e.scale(&e.bracket(&x, &y), &-sign));
        prop_assert!(sum.is_zero());
    }
}
