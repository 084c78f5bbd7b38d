#![allow(dead_code)]

use hsx_core::{random_hypergraph, Field, Hypergraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random hypergraphs with `k` in `ks` and `n` up to `n_max`, alternating
/// uniform and random weights.
pub fn random_family<T: Field>(
    seed: u64,
    count: usize,
    ks: std::ops::RangeInclusive<usize>,
    n_max: usize,
) -> Vec<Hypergraph<T>> {
    let mut rng = rng(seed);
    (0..count)
        .map(|i| {
            let k = rng.random_range(ks.clone());
            let n = rng.random_range(k + 1..=n_max.max(k + 1));
            let extra = rng.random_range(0..=6);
            random_hypergraph(&mut rng, n, k, extra, i % 2 == 1).expect("valid parameters")
        })
        .collect()
}

pub fn random_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.random_range(-1.0..1.0)).collect()
}
