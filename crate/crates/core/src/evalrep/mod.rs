//! The evaluation assignment `T(u) ↦ R(u - a)` on `C^{N|2m}`.
//!
//! Nothing in the construction uses the rewriting engine, so images of
//! engine residuals give an independent check. The assignment is a
//! hypothesis: [`RepAssignment::build`] refuses to return it unless the RTT
//! relation holds at seeded sample points.

mod assignment;
mod ratfun;

pub use assignment::{
    expand_operator, scalar_function, OperatorFunctions, Operators, RepAssignment, RepError, RTT_GATE_POINTS,
};
pub use ratfun::{RatFun, RatFunField};

use crate::ncseries::NcPoly;
use crate::rational::Q;
use crate::sample::{seeded, small_rational};
use crate::superspace::SuperSpace;

/// Number of evaluation shifts `a` used for in-representation checks.
pub const REP_POINTS: usize = 5;

/// `count` seeded shifts.
pub fn sample_shifts(seed: u64, count: usize) -> Vec<Q> {
    let mut rng = seeded(seed ^ 0x5e_ed0f_5bf7);
    let mut out: Vec<Q> = Vec::with_capacity(count);
    while out.len() < count {
        let a = small_rational(&mut rng, 50);
        if !out.contains(&a) {
            out.push(a);
        }
    }
    out
}

/// One gated assignment per sampled shift.
pub fn build_family(space: &SuperSpace, seed: u64, count: usize) -> Result<Vec<RepAssignment>, RepError> {
    sample_shifts(seed, count)
        .into_iter()
        .enumerate()
        .map(|(k, a)| RepAssignment::build(space, a, seed.wrapping_add(k as u64)))
        .collect()
}

/// Whether `residual` maps to the zero matrix under every assignment.
pub fn check_in_rep(reps: &[RepAssignment], residual: &NcPoly) -> bool {
    reps.iter().all(|r| r.image(residual).iter().all(num_traits::Zero::is_zero))
}
