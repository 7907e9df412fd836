//! Fixtures shared by the benchmarks.

use dealab::data::{Dataset, Dmu};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn two_input_example() -> Dataset {
    Dataset::new(vec![
        Dmu::integer("A", &[2, 8], &[1]),
        Dmu::integer("B", &[9, 2], &[1]),
        Dmu::integer("C", &[6, 6], &[1]),
    ])
    .expect("valid fixture")
}

pub fn planar_example() -> Dataset {
    Dataset::new(vec![Dmu::integer("A", &[5], &[9]), Dmu::integer("B", &[2], &[2])]).expect("valid fixture")
}

/// `n` DMUs with `m` inputs and `m` outputs drawn from `1..=9`.
pub fn random_dataset(seed: u64, n: usize, m: usize) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dmus = (0..n)
        .map(|i| {
            let x: Vec<i64> = (0..m).map(|_| rng.gen_range(1..=9)).collect();
            let y: Vec<i64> = (0..m).map(|_| rng.gen_range(1..=9)).collect();
            Dmu::integer(format!("D{i}"), &x, &y)
        })
        .collect();
    Dataset::new(dmus).expect("valid random dataset")
}

/// CSV text for `random_dataset`.
pub fn random_csv(seed: u64, n: usize, m: usize) -> String {
    let mut out = Vec::new();
    dealab::io::write_dataset(&random_dataset(seed, n, m), &mut out).expect("in-memory write");
    String::from_utf8(out).expect("utf-8 CSV")
}
