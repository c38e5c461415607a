//! Seeded inputs shared by the benchmarks.

use modlab_core::ffla::{Field, FieldRef, Mat};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn random_matrix(field: &FieldRef, n: usize, m: usize, seed: u64) -> Mat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..n * m).map(|_| field.random(&mut rng)).collect();
    Mat::from_vec(field, n, m, data)
}

pub fn field(p: u64, r: u32) -> FieldRef {
    Field::new(p, r).expect("benchmark fields are valid")
}
