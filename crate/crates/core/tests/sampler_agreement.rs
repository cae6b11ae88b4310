//! Cross-validation of the two sampling mechanisms against each other
//! and against the deterministic grid oracle.

use deltap_core::oracle::{grid_expectation, Functional, GridSpec};
use deltap_core::stats::{mean, sample_sd, two_sample_ks};
use deltap_core::{sample_direct, sample_mcmc, DirichletParams};

#[test]
fn direct_and_mcmc_draw_the_same_added_value_distribution() {
    let params = DirichletParams::new(5.0, 3.0, 4.0, 8.0).unwrap();
    let direct = sample_direct(&params, 20_000, 31).unwrap();
    let mcmc = sample_mcmc(&params, 4, 5_000, 1_000, 31).unwrap();
    let ks = two_sample_ks(direct.delta_ab(), mcmc.delta_ab());
    assert!(ks < 0.025, "KS statistic {ks}");
}

#[test]
fn samplers_match_the_grid_oracle_mean() {
    let params = DirichletParams::new(20.0, 10.0, 5.0, 15.0).unwrap();
    let spec = GridSpec {
        resolution: 120,
        params,
    };
    let oracle = grid_expectation(&spec, Functional::DeltaPAb).unwrap();
    for samples in [
        sample_direct(&params, 40_000, 13).unwrap(),
        sample_mcmc(&params, 4, 10_000, 1_000, 13).unwrap(),
    ] {
        let series = samples.delta_ab();
        let se = sample_sd(series) / samples.effective_draws(series).sqrt();
        let tol = (3.0 * se).max(1e-3);
        assert!(
            (mean(series) - oracle).abs() < tol,
            "{:?}: mean {} vs oracle {oracle}",
            samples.meta().sampler,
            mean(series)
        );
    }
}

#[test]
fn oracle_tail_mass_validates_the_posterior_p_value() {
    // P(dP < 0) from quadrature vs the sampled lower tail.
    let params = DirichletParams::new(15.0, 9.0, 11.0, 14.0).unwrap();
    let spec = GridSpec {
        resolution: 120,
        params,
    };
    let oracle_tail = grid_expectation(&spec, Functional::IndicatorDeltaPNegative).unwrap();
    let samples = sample_direct(&params, 40_000, 23).unwrap();
    let sampled_tail = samples.delta_ab().iter().filter(|x| **x < 0.0).count() as f64
        / samples.len() as f64;
    let se = (oracle_tail * (1.0 - oracle_tail) / samples.len() as f64).sqrt();
    assert!(
        (sampled_tail - oracle_tail).abs() < (3.0 * se).max(1e-3),
        "tail {sampled_tail} vs oracle {oracle_tail}"
    );
}
