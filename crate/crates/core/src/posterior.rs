//! Dirichlet posterior over the 2x2 cell probabilities and two
//! independent samplers for it.
//!
//! The observed counts N and a Dirichlet prior alpha combine into the
//! conjugate posterior Dirichlet(N + alpha). Draws are produced either
//! directly (normalized Gamma variates, i.i.d.) or by random-walk
//! Metropolis on the additive log-ratio transform of the simplex. The
//! two mechanisms target the same distribution; the direct path doubles
//! as an exact oracle for the MCMC path.
//!
//! Per draw we also record the derived quantities
//! `P(A=1) = p10 + p11`, `P(A=1|B=1) = p11 / (p01 + p11)` and the added
//! value `dP(A,B) = P(A=1|B=1) - P(A=1)`, plus their (B, A) counterparts.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::data::ContingencyTable;
use crate::error::{Error, Result};
use crate::rng::{chain_rng, gamma, standard_normal};
use crate::stats::{effective_sample_size, split_rhat};

/// Smallest conditional-probability denominator a draw may carry; below
/// this the draw is rejected and redrawn (counted in the metadata).
pub const DENOMINATOR_FLOOR: f64 = 1e-300;

/// Split-chain potential-scale-reduction threshold; a breach flags the
/// sample set as non-converged but never discards it.
pub const RHAT_THRESHOLD: f64 = 1.01;

/// Concentration parameters of a Dirichlet over the four cells.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirichletParams {
    pub alpha00: f64,
    pub alpha01: f64,
    pub alpha10: f64,
    pub alpha11: f64,
}

impl DirichletParams {
    /// Validated constructor: every component must be strictly positive
    /// and finite.
    pub fn new(alpha00: f64, alpha01: f64, alpha10: f64, alpha11: f64) -> Result<Self> {
        let p = Self {
            alpha00,
            alpha01,
            alpha10,
            alpha11,
        };
        p.validate()?;
        Ok(p)
    }

    /// The flat prior: all concentrations equal to one, i.e. uniform
    /// over the simplex.
    pub fn flat() -> Self {
        Self {
            alpha00: 1.0,
            alpha01: 1.0,
            alpha10: 1.0,
            alpha11: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("alpha00", self.alpha00),
            ("alpha01", self.alpha01),
            ("alpha10", self.alpha10),
            ("alpha11", self.alpha11),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!(
                    "Dirichlet component {name} must be strictly positive, got {v}"
                )));
            }
        }
        Ok(())
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.alpha00, self.alpha01, self.alpha10, self.alpha11]
    }

    pub fn sum(&self) -> f64 {
        self.alpha00 + self.alpha01 + self.alpha10 + self.alpha11
    }

    /// Parameters for the ordered pair (B, A): swaps the 01 and 10 cells.
    pub fn transposed(&self) -> Self {
        Self {
            alpha00: self.alpha00,
            alpha01: self.alpha10,
            alpha10: self.alpha01,
            alpha11: self.alpha11,
        }
    }
}

/// Conjugate update: componentwise counts plus prior concentrations.
/// With the flat prior this is the uniform-prior posterior.
pub fn posterior_params(table: &ContingencyTable, prior: &DirichletParams) -> Result<DirichletParams> {
    prior.validate()?;
    Ok(DirichletParams {
        alpha00: table.n00 as f64 + prior.alpha00,
        alpha01: table.n01 as f64 + prior.alpha01,
        alpha10: table.n10 as f64 + prior.alpha10,
        alpha11: table.n11 as f64 + prior.alpha11,
    })
}

/// One point on the probability simplex over the four cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexPoint {
    pub p00: f64,
    pub p01: f64,
    pub p10: f64,
    pub p11: f64,
}

impl SimplexPoint {
    /// Validated constructor: components in (0, 1) summing to one within
    /// 1e-12.
    pub fn new(p00: f64, p01: f64, p10: f64, p11: f64) -> Result<Self> {
        let p = Self { p00, p01, p10, p11 };
        for v in p.as_array() {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::Numerical(format!(
                    "simplex component {v} outside (0, 1)"
                )));
            }
        }
        if (p.as_array().iter().sum::<f64>() - 1.0).abs() > 1e-12 {
            return Err(Error::Numerical("simplex components do not sum to 1".into()));
        }
        Ok(p)
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.p00, self.p01, self.p10, self.p11]
    }

    pub fn prob_a(&self) -> f64 {
        self.p10 + self.p11
    }

    pub fn prob_b(&self) -> f64 {
        self.p01 + self.p11
    }

    pub fn prob_a_given_b(&self) -> f64 {
        self.p11 / (self.p01 + self.p11)
    }

    pub fn prob_b_given_a(&self) -> f64 {
        self.p11 / (self.p10 + self.p11)
    }

    /// Added value of B for A: how much observing B=1 boosts P(A=1).
    pub fn delta_p_ab(&self) -> f64 {
        self.prob_a_given_b() - self.prob_a()
    }

    pub fn delta_p_ba(&self) -> f64 {
        self.prob_b_given_a() - self.prob_b()
    }
}

/// Which sampling mechanism produced a sample set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplerKind {
    Direct,
    Mcmc,
}

/// Provenance and diagnostics for a sample set.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleMeta {
    pub sampler: SamplerKind,
    pub chains: usize,
    /// Post-burn-in steps per chain (or the requested size for the
    /// direct sampler, which acts as one chain).
    pub steps_per_chain: usize,
    pub burn_in: usize,
    pub seed: u64,
    /// Post-burn-in Metropolis acceptance rate, averaged over chains.
    pub acceptance_rate: Option<f64>,
    /// Split-chain potential scale reduction per cell probability.
    pub rhat: Option<[f64; 4]>,
    /// False when any component's diagnostic breaches the threshold.
    pub converged: Option<bool>,
    /// Draws rejected by the denominator floor and redrawn.
    pub guard_redraws: u64,
}

/// Per-draw derived series aligned with the draw vector.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DerivedSeries {
    pub prob_a: Vec<f64>,
    pub prob_b: Vec<f64>,
    pub prob_a_given_b: Vec<f64>,
    pub prob_b_given_a: Vec<f64>,
    pub delta_ab: Vec<f64>,
    pub delta_ba: Vec<f64>,
}

/// Compute every derived quantity for each draw.
pub fn derive_quantities(draws: &[SimplexPoint]) -> DerivedSeries {
    let mut d = DerivedSeries {
        prob_a: Vec::with_capacity(draws.len()),
        prob_b: Vec::with_capacity(draws.len()),
        prob_a_given_b: Vec::with_capacity(draws.len()),
        prob_b_given_a: Vec::with_capacity(draws.len()),
        delta_ab: Vec::with_capacity(draws.len()),
        delta_ba: Vec::with_capacity(draws.len()),
    };
    for p in draws {
        let pa = p.prob_a();
        let pb = p.prob_b();
        let pab = p.prob_a_given_b();
        let pba = p.prob_b_given_a();
        d.prob_a.push(pa);
        d.prob_b.push(pb);
        d.prob_a_given_b.push(pab);
        d.prob_b_given_a.push(pba);
        d.delta_ab.push(pab - pa);
        d.delta_ba.push(pba - pb);
    }
    d
}

/// Posterior draws plus their derived series and provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    draws: Vec<SimplexPoint>,
    derived: DerivedSeries,
    meta: SampleMeta,
}

impl SampleSet {
    fn new(draws: Vec<SimplexPoint>, meta: SampleMeta) -> Self {
        let derived = derive_quantities(&draws);
        Self {
            draws,
            derived,
            meta,
        }
    }

    pub fn len(&self) -> usize {
        self.draws.len()
    }

    pub fn is_empty(&self) -> bool {
        self.draws.is_empty()
    }

    pub fn draws(&self) -> &[SimplexPoint] {
        &self.draws
    }

    pub fn meta(&self) -> &SampleMeta {
        &self.meta
    }

    pub fn delta_ab(&self) -> &[f64] {
        &self.derived.delta_ab
    }

    pub fn delta_ba(&self) -> &[f64] {
        &self.derived.delta_ba
    }

    pub fn prob_a(&self) -> &[f64] {
        &self.derived.prob_a
    }

    pub fn prob_b(&self) -> &[f64] {
        &self.derived.prob_b
    }

    pub fn prob_a_given_b(&self) -> &[f64] {
        &self.derived.prob_a_given_b
    }

    pub fn prob_b_given_a(&self) -> &[f64] {
        &self.derived.prob_b_given_a
    }

    /// Effective sample size of one derived series: the raw count for
    /// i.i.d. direct draws, the autocorrelation-adjusted count for MCMC.
    pub fn effective_draws(&self, series: &[f64]) -> f64 {
        match self.meta.sampler {
            SamplerKind::Direct => series.len() as f64,
            SamplerKind::Mcmc => {
                effective_sample_size(series, self.meta.chains, self.meta.steps_per_chain)
            }
        }
    }
}

/// Draw `size` i.i.d. points from Dirichlet(params) by normalizing four
/// independent Gamma(alpha_ij, 1) variates. Deterministic given the seed.
pub fn sample_direct(params: &DirichletParams, size: usize, seed: u64) -> Result<SampleSet> {
    params.validate()?;
    if size == 0 {
        return Err(Error::Config("sample size must be at least 1".into()));
    }
    let alpha = params.as_array();
    let mut rng = chain_rng(seed, 0);
    let mut draws = Vec::with_capacity(size);
    let mut guard_redraws = 0u64;
    while draws.len() < size {
        let g: [f64; 4] = [
            gamma(&mut rng, alpha[0]),
            gamma(&mut rng, alpha[1]),
            gamma(&mut rng, alpha[2]),
            gamma(&mut rng, alpha[3]),
        ];
        let total: f64 = g.iter().sum();
        let p = SimplexPoint {
            p00: g[0] / total,
            p01: g[1] / total,
            p10: g[2] / total,
            p11: g[3] / total,
        };
        if !draw_passes_guard(&p) {
            guard_redraws += 1;
            if guard_redraws > 10_000 {
                return Err(Error::Numerical(
                    "direct sampler exceeded the redraw budget; parameters are pathological".into(),
                ));
            }
            continue;
        }
        draws.push(p);
    }
    Ok(SampleSet::new(
        draws,
        SampleMeta {
            sampler: SamplerKind::Direct,
            chains: 1,
            steps_per_chain: size,
            burn_in: 0,
            seed,
            acceptance_rate: None,
            rhat: None,
            converged: None,
            guard_redraws,
        },
    ))
}

fn draw_passes_guard(p: &SimplexPoint) -> bool {
    p.as_array().iter().all(|v| v.is_finite() && *v > 0.0 && *v < 1.0)
        && p.p01 + p.p11 >= DENOMINATOR_FLOOR
        && p.p10 + p.p11 >= DENOMINATOR_FLOOR
}

/// Random-walk Metropolis targeting Dirichlet(params).
///
/// The chain moves in the additive log-ratio coordinates
/// `y_k = ln(p_k / p00)` for k in {01, 10, 11}; the transform is
/// unconstrained, and its Jacobian folds the target into the simple form
/// `log t(y) = sum_ij alpha_ij * ln p_ij(y)`. Proposals are Gaussian
/// steps shaped by the delta-method covariance of y under the target
/// (the shared reference cell correlates the coordinates), with a global
/// scale adapted during burn-in toward a 25-40% acceptance rate and
/// frozen afterwards. Each chain runs on its own ChaCha stream, so
/// results are independent of scheduling.
pub fn sample_mcmc(
    params: &DirichletParams,
    chains: usize,
    steps: usize,
    burn_in: usize,
    seed: u64,
) -> Result<SampleSet> {
    params.validate()?;
    if chains < 2 {
        return Err(Error::Config(format!(
            "MCMC needs at least 2 chains for convergence diagnostics, got {chains}"
        )));
    }
    if steps == 0 {
        return Err(Error::Config("steps per chain must be at least 1".into()));
    }

    let alpha = params.as_array();
    let total = params.sum();
    // Delta-method covariance of y under Dirichlet(alpha):
    // Cov(y_k, y_l) ~ (delta_kl * total/alpha_k + total/alpha_00)
    //                / (total + 1).
    let proposal_shape: [[f64; 3]; 3] = {
        let c = total / alpha[0];
        let mut cov = [[0.0; 3]; 3];
        for (i, row) in cov.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let diag = if i == j { total / alpha[i + 1] } else { 0.0 };
                *cell = (diag + c) / (total + 1.0);
            }
        }
        cholesky3(cov)
    };
    let log_target = |y: &[f64; 3]| -> (f64, SimplexPoint) {
        // Shift by the max exponent so the softmax never overflows.
        let m = y.iter().fold(0.0f64, |acc, v| acc.max(*v));
        let w0 = (-m).exp();
        let w = [(y[0] - m).exp(), (y[1] - m).exp(), (y[2] - m).exp()];
        let denom = w0 + w[0] + w[1] + w[2];
        let p = SimplexPoint {
            p00: w0 / denom,
            p01: w[0] / denom,
            p10: w[1] / denom,
            p11: w[2] / denom,
        };
        let ln_denom = denom.ln();
        let lt = alpha[0] * (-m - ln_denom)
            + alpha[1] * (y[0] - m - ln_denom)
            + alpha[2] * (y[1] - m - ln_denom)
            + alpha[3] * (y[2] - m - ln_denom);
        (lt, p)
    };

    let mut draws = Vec::with_capacity(chains * steps);
    let mut accept_total = 0u64;
    let mut guard_rejects = 0u64;
    for chain in 0..chains {
        let mut rng = chain_rng(seed, chain as u64);
        // Start at the posterior mean.
        let mut y = [
            (alpha[1] / alpha[0]).ln(),
            (alpha[2] / alpha[0]).ln(),
            (alpha[3] / alpha[0]).ln(),
        ];
        let (mut lt, mut p) = log_target(&y);
        let mut scale = 2.38 / (3.0f64).sqrt();
        let mut window_accepts = 0u32;
        const WINDOW: usize = 50;
        for step in 0..burn_in + steps {
            let z = [
                standard_normal(&mut rng),
                standard_normal(&mut rng),
                standard_normal(&mut rng),
            ];
            let mut proposal = y;
            for (i, row) in proposal_shape.iter().enumerate() {
                proposal[i] += scale * (row[0] * z[0] + row[1] * z[1] + row[2] * z[2]);
            }
            let (lt_new, p_new) = log_target(&proposal);
            let accept = if !lt_new.is_finite() || !draw_passes_guard(&p_new) {
                guard_rejects += 1;
                false
            } else {
                let log_ratio = lt_new - lt;
                log_ratio >= 0.0 || rng.random::<f64>().ln() < log_ratio
            };
            if accept {
                y = proposal;
                lt = lt_new;
                p = p_new;
                window_accepts += 1;
                if step >= burn_in {
                    accept_total += 1;
                }
            }
            if step < burn_in {
                // Adapt the global factor toward the 25-40% window, then
                // freeze it so the post-burn-in kernel is fixed.
                if (step + 1) % WINDOW == 0 {
                    let rate = window_accepts as f64 / WINDOW as f64;
                    if rate < 0.25 {
                        scale *= 0.8;
                    } else if rate > 0.40 {
                        scale *= 1.25;
                    }
                    scale = scale.clamp(1e-3, 1e2);
                    window_accepts = 0;
                }
                if step + 1 == burn_in {
                    window_accepts = 0;
                }
            } else {
                draws.push(p);
            }
        }
    }

    let series = |pick: fn(&SimplexPoint) -> f64| -> Vec<f64> { draws.iter().map(pick).collect() };
    let rhat = [
        split_rhat(&series(|p| p.p00), chains, steps),
        split_rhat(&series(|p| p.p01), chains, steps),
        split_rhat(&series(|p| p.p10), chains, steps),
        split_rhat(&series(|p| p.p11), chains, steps),
    ];
    let converged = rhat.iter().all(|r| r.is_nan() || *r <= RHAT_THRESHOLD);
    Ok(SampleSet::new(
        draws,
        SampleMeta {
            sampler: SamplerKind::Mcmc,
            chains,
            steps_per_chain: steps,
            burn_in,
            seed,
            acceptance_rate: Some(accept_total as f64 / (chains * steps) as f64),
            rhat: Some(rhat),
            converged: Some(converged),
            guard_redraws: guard_rejects,
        },
    ))
}

/// Lower Cholesky factor of a symmetric positive-definite 3x3 matrix.
fn cholesky3(m: [[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut l = [[0.0; 3]; 3];
    l[0][0] = m[0][0].sqrt();
    l[1][0] = m[1][0] / l[0][0];
    l[1][1] = (m[1][1] - l[1][0] * l[1][0]).sqrt();
    l[2][0] = m[2][0] / l[0][0];
    l[2][1] = (m[2][1] - l[2][0] * l[1][0]) / l[1][1];
    l[2][2] = (m[2][2] - l[2][0] * l[2][0] - l[2][1] * l[2][1]).sqrt();
    l
}

/// Closed-form posterior expectations used as test oracles and for
/// reporting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticMoments {
    pub e_p: [f64; 4],
    pub e_prob_a: f64,
    pub e_prob_b: f64,
    /// Mean of p11 / (p01 + p11); the aggregation property makes this a
    /// Beta(alpha11, alpha01) mean.
    pub e_prob_a_given_b: f64,
    pub e_prob_b_given_a: f64,
    pub e_delta_ab: f64,
    pub e_delta_ba: f64,
}

/// Exact Dirichlet/Beta moments of the reported quantities.
pub fn analytic_moments(params: &DirichletParams) -> AnalyticMoments {
    let a = params.as_array();
    let total = params.sum();
    let e_p = [a[0] / total, a[1] / total, a[2] / total, a[3] / total];
    let e_prob_a = (a[2] + a[3]) / total;
    let e_prob_b = (a[1] + a[3]) / total;
    let e_prob_a_given_b = a[3] / (a[1] + a[3]);
    let e_prob_b_given_a = a[3] / (a[2] + a[3]);
    AnalyticMoments {
        e_p,
        e_prob_a,
        e_prob_b,
        e_prob_a_given_b,
        e_prob_b_given_a,
        e_delta_ab: e_prob_a_given_b - e_prob_a,
        e_delta_ba: e_prob_b_given_a - e_prob_b,
    }
}
