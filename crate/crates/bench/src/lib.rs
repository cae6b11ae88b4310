//! Shared fixtures for the benchmarks.

use rand::Rng;

use deltap_core::rng::chain_rng;
use deltap_core::{BinaryColumn, BinaryMatrix, DirichletParams};

/// Posterior parameters at corpus scale (counts in the thousands).
pub fn corpus_scale_params() -> DirichletParams {
    DirichletParams::new(4275.0, 113.0, 206.0, 23.0).unwrap()
}

/// Posterior parameters at pilot scale (a handful of counts).
pub fn small_params() -> DirichletParams {
    DirichletParams::new(5.0, 3.0, 4.0, 8.0).unwrap()
}

/// Independent Bernoulli columns with spread-out marginals.
pub fn synthetic_matrix(vars: usize, rows: usize, seed: u64) -> BinaryMatrix {
    let mut rng = chain_rng(seed, 0);
    let columns = (0..vars)
        .map(|j| {
            let p = 0.05 + 0.9 * j as f64 / vars as f64;
            let values = (0..rows).map(|_| Some(rng.random::<f64>() < p)).collect();
            BinaryColumn::new(format!("v{j:02}"), values)
        })
        .collect();
    BinaryMatrix::from_columns(columns).expect("valid fixture")
}
