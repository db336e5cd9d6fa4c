//! Seeded sampling of small rationals.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rational::{q, Q};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `±p/q` with `0 ≤ p ≤ bound`, `1 ≤ q ≤ bound`.
pub fn small_rational(rng: &mut SeededRng, bound: i64) -> Q {
    let p = rng.gen_range(-bound..=bound);
    let d = rng.gen_range(1..=bound);
    q(p, d)
}

/// A small rational avoiding every value in `avoid`.
pub fn rational_avoiding(rng: &mut SeededRng, bound: i64, avoid: &[Q]) -> Q {
    loop {
        let x = small_rational(rng, bound);
        if !avoid.contains(&x) {
            return x;
        }
    }
}
