//! Simple roots and the Cartan matrix of `osp(N|2m)`.

use thiserror::Error;

use super::{Family, SuperSpace};
use crate::rational::{qi, Q};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("root index {index} out of range 1..={rank}")]
pub struct RootError {
    pub index: usize,
    pub rank: usize,
}

/// Coordinates of `α_i` in the basis `ε_1, …, ε_{m+n}`.
fn alpha(space: &SuperSpace, i: usize) -> Result<Vec<i64>, RootError> {
    let rank = space.rank();
    if i == 0 || i > rank {
        return Err(RootError { index: i, rank });
    }
    let mut v = vec![0; rank];
    if i < rank {
        v[i - 1] = 1;
        v[i] = -1;
    } else {
        match space.family() {
            Family::B => v[rank - 1] = 1,
            Family::D => {
                v[rank - 2] = 1;
                v[rank - 1] = 1;
            }
        }
    }
    Ok(v)
}

fn eps_norm(space: &SuperSpace, k: usize) -> i64 {
    if k <= space.m() {
        -1
    } else {
        1
    }
}

/// `(α_i, α_j)`.
pub fn pairing(space: &SuperSpace, i: usize, j: usize) -> Result<Q, RootError> {
    let (a, b) = (alpha(space, i)?, alpha(space, j)?);
    let s: i64 = (0..space.rank()).map(|k| a[k] * b[k] * eps_norm(space, k + 1)).sum();
    Ok(qi(s))
}

/// `(ε_i, α_j)` with the convention `ε_{m+n+1} = 0`.
pub fn eps_alpha(space: &SuperSpace, i: usize, j: usize) -> Result<Q, RootError> {
    let a = alpha(space, j)?;
    if i == 0 || i > space.rank() + 1 {
        return Err(RootError { index: i, rank: space.rank() + 1 });
    }
    if i == space.rank() + 1 {
        return Ok(qi(0));
    }
    Ok(qi(a[i - 1] * eps_norm(space, i)))
}

/// Cartan matrix entry `c_ij`; in type B the last row is doubled.
pub fn cartan(space: &SuperSpace, i: usize, j: usize) -> Result<Q, RootError> {
    let p = pairing(space, i, j)?;
    Ok(if space.family() == Family::B && i == space.rank() { p * qi(2) } else { p })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent oracle: classical Cartan matrices of B_n and D_n.
    fn classical(family: Family, n: usize, i: usize, j: usize) -> i64 {
        if i == j {
            return 2;
        }
        match family {
            Family::B => {
                if i + 1 == j || j + 1 == i {
                    if i == n && j == n - 1 {
                        -2
                    } else {
                        -1
                    }
                } else {
                    0
                }
            }
            Family::D => {
                let linked = |a: usize, b: usize| (a + 1 == b && b < n) || (a + 2 == n && b == n);
                if linked(i, j) || linked(j, i) {
                    -1
                } else {
                    0
                }
            }
        }
    }

    #[test]
    fn small_values() {
        let s = SuperSpace::new(3, 1).unwrap();
        assert_eq!(pairing(&s, 1, 1).unwrap(), qi(0));
        assert_eq!(pairing(&s, 1, 2).unwrap(), qi(-1));
        assert_eq!(cartan(&s, 2, 2).unwrap(), qi(2));
        let d = SuperSpace::new(6, 1).unwrap();
        assert_eq!(pairing(&d, 3, 4).unwrap(), qi(0));
        assert!(pairing(&s, 3, 1).is_err());
        assert!(pairing(&s, 0, 1).is_err());
    }

    #[test]
    fn orthogonal_block_is_classical() {
        for (nb, m) in [(3, 1), (5, 1), (7, 2), (4, 1), (6, 2), (8, 1)] {
            let s = SuperSpace::new(nb, m).unwrap();
            let n = s.n_orth();
            for a in 1..=n {
                for b in 1..=n {
                    let c = cartan(&s, m + a, m + b).unwrap();
                    assert_eq!(c, qi(classical(s.family(), n, a, b)), "({nb},{m}) {a},{b}");
                }
            }
        }
    }

    #[test]
    fn odd_root_is_isotropic_and_only_odd() {
        for (nb, m) in [(3, 2), (4, 3), (5, 1)] {
            let s = SuperSpace::new(nb, m).unwrap();
            assert_eq!(pairing(&s, m, m).unwrap(), qi(0));
            assert_eq!(eps_alpha(&s, m, m).unwrap(), qi(-1));
            assert_eq!(eps_alpha(&s, s.rank() + 1, 1).unwrap(), qi(0));
        }
    }
}
