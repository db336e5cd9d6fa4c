use std::ops::RangeInclusive;

use crate::ncseries::{BivarSeries, TruncSeries};
use crate::ring::Ring;

use super::report::Tally;
use super::target::{Elem, Target};

pub(crate) fn idx(parts: &[usize]) -> Vec<i64> {
    parts.iter().map(|&x| x as i64).collect()
}

pub(crate) fn with(base: &[i64], extra: &[usize]) -> Vec<i64> {
    let mut v = base.to_vec();
    v.extend(extra.iter().map(|&x| x as i64));
    v
}

/// `lhs - rhs` at every `u^{-r}`, `r ∈ range`; the indices get `r` appended.
pub(crate) fn check_series<T: Target>(
    tally: &mut Tally,
    t: &T,
    relation: &str,
    indices: &[i64],
    lhs: &TruncSeries<Elem<T>>,
    rhs: &TruncSeries<Elem<T>>,
    range: RangeInclusive<usize>,
) {
    for r in range {
        let z = t.alg().sub(lhs.coeff(r), rhs.coeff(r));
        tally.check(t, relation, &with(indices, &[r]), &z);
    }
}

/// `lhs - rhs` at every `u^{-a} v^{-b}` with `a ∈ ra`, `b ∈ rb`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn check_bivar<T: Target>(
    tally: &mut Tally,
    t: &T,
    relation: &str,
    indices: &[i64],
    lhs: &BivarSeries<Elem<T>>,
    rhs: &BivarSeries<Elem<T>>,
    ra: RangeInclusive<usize>,
    rb: RangeInclusive<usize>,
) {
    for a in ra {
        for b in rb.clone() {
            let z = t.alg().sub(lhs.coeff(a, b), rhs.coeff(a, b));
            tally.check(t, relation, &with(indices, &[a, b]), &z);
        }
    }
}

/// Records a construction failure (Gauss pivots, series inverses) as one
/// failed instance.
pub(crate) fn setup_failure(tally: &mut Tally, what: &str, err: impl ToString) {
    let msg = err.to_string();
    tally.check_bool(false, what, &[], || vec![msg]);
}
