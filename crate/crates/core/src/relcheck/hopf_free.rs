use num_traits::Zero;

use crate::evalrep::Operators;
use crate::matrix::Matrix;
use crate::rational::{q, qi, sign, Q};
use crate::ring::{Algebra, Ring};
use crate::superspace::SuperSpace;

use super::report::Tally;
use super::target::{Elem, Model, Target};
use super::util::idx;
use super::SuiteConfig;

/// `(-1)^{īj̄+ī} θ_i θ_j`, the sign in `F_ij = E_ij - E_{j'i'}(…)`.
fn f_sign(space: &SuperSpace, i: usize, j: usize) -> Q {
    let (pi, pj) = (space.parity(i), space.parity(j));
    sign(pi * pj + pi) * qi((space.theta(i) * space.theta(j)) as i64)
}

/// The matrix `F_ij` of the orthosymplectic Lie superalgebra.
fn f_matrix(space: &SuperSpace, i: usize, j: usize) -> Matrix<Q> {
    let n = space.size();
    let mut m = Matrix::from_fn(n, n, |_, _| Q::zero());
    let (a, b) = (space.prime(j), space.prime(i));
    *m.get_mut(i - 1, j - 1) += qi(1);
    *m.get_mut(a - 1, b - 1) -= f_sign(space, i, j);
    m
}

/// `F_ij ↦ ½(t_ij^(1) - t_{j'i'}^(1)(-1)^{j̄+īj̄} θ_i θ_j)(-1)^ī`.
fn phi<T: Target>(model: &Model<T>, i: usize, j: usize) -> Elem<T> {
    let space = model.space();
    let alg = model.alg();
    let (pi, pj) = (space.parity(i), space.parity(j));
    let s = sign(pj + pi * pj) * qi((space.theta(i) * space.theta(j)) as i64);
    let x = alg.sub(&model.t(i, j, 1), &alg.scale(&model.t(space.prime(j), space.prime(i), 1), &s));
    alg.scale(&x, &(q(1, 2) * sign(pi)))
}

/// Degree-one sector: the images of `F_ij` obey the symmetry of
/// orthosymplectic elements and bracket like the matrices `F_ij`.
pub fn run<T: Target>(model: &Model<T>, _cfg: &SuiteConfig, tally: &mut Tally) {
    let t = &model.target;
    let alg = model.alg();
    let space = model.space().clone();
    let n = space.size();
    let ops = Operators::new(&space);
    let images: Vec<Vec<Elem<T>>> = (1..=n).map(|i| (1..=n).map(|j| phi(model, i, j)).collect()).collect();
    let img = |i: usize, j: usize| &images[i - 1][j - 1];
    let mats: Vec<Vec<Matrix<Q>>> = (1..=n).map(|i| (1..=n).map(|j| f_matrix(&space, i, j)).collect()).collect();
    let mat = |i: usize, j: usize| &mats[i - 1][j - 1];

    for i in 1..=n {
        for j in 1..=n {
            let (a, b) = (space.prime(j), space.prime(i));
            let s = f_sign(&space, i, j);
            let z = alg.add(img(i, j), &alg.scale(img(a, b), &s));
            tally.check(t, "F_ij + F_j'i' symmetry", &idx(&[i, j]), &z);
        }
    }

    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    let ix = idx(&[i, j, k, l]);
                    let bracket = ops.supercomm(mat(i, j), mat(k, l));
                    // M = ½ Σ M_ab F_ab for every M in the orthosymplectic algebra
                    let mut back = ops.zero();
                    let mut image = alg.zero();
                    for a in 1..=n {
                        for b in 1..=n {
                            let c = bracket.get(a - 1, b - 1);
                            if c.is_zero() {
                                continue;
                            }
                            let c = c * q(1, 2);
                            back = ops.add(&back, &ops.scale(mat(a, b), &c));
                            image = alg.add(&image, &alg.scale(img(a, b), &c));
                        }
                    }
                    tally.check_bool(back == bracket, "matrix oracle self-check", &ix, Vec::new);
                    let z = alg.sub(&alg.supercomm(img(i, j), img(k, l)), &image);
                    tally.check(t, "[F_ij, F_kl]", &ix, &z);
                }
            }
        }
    }
}
