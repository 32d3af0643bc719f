//! Seeded generators for small exact test data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::Scalar;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational `p/q` with `|p| ≤ num_bound` and `1 ≤ q ≤ den_bound`.
pub fn small_rational<T: Scalar>(rng: &mut impl Rng, num_bound: i64, den_bound: i64) -> T {
    let p = rng.gen_range(-num_bound..=num_bound);
    let q = rng.gen_range(1..=den_bound);
    T::from_ratio(p, q)
}

pub fn small_vector<T: Scalar>(rng: &mut impl Rng, len: usize, num_bound: i64, den_bound: i64) -> Vec<T> {
    (0..len).map(|_| small_rational(rng, num_bound, den_bound)).collect()
}
