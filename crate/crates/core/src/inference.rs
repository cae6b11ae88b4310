//! Decision-ready summaries of posterior sample sets, and the all-pairs
//! screening driver with Bonferroni correction.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data::{contingency, BinaryMatrix, ContingencyTable};
use crate::error::{Error, Result};
use crate::posterior::{
    posterior_params, sample_direct, sample_mcmc, DirichletParams, SampleSet, SamplerKind,
};
use crate::rng::pair_seed;
use crate::stats::{mean, quantile_sorted, sample_sd};

/// Which ordered reading of an unordered pair a figure refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// dP(A, B): the boost B gives to A.
    Ab,
    /// dP(B, A): the boost A gives to B.
    Ba,
}

/// How a pair relates once significance is settled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// Significant with positive added value.
    Associated,
    /// Significant with negative added value.
    Opposed,
    /// Not significant; the data is compatible with independence.
    IndependentCompatible,
}

impl Relation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Relation::Associated => "associated",
            Relation::Opposed => "opposed",
            Relation::IndependentCompatible => "independent-compatible",
        }
    }
}

/// Point and interval summary of one added-value posterior.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PosteriorSummary {
    pub mean: f64,
    pub sd: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub ci_level: f64,
    /// Two-sided tail mass: 2 * min(P(dP <= 0), P(dP >= 0)), clipped to
    /// [0, 1]. A value of exactly 0 means "below Monte Carlo resolution";
    /// report it as `< 1/draws`.
    pub p_value: f64,
    /// Monte Carlo standard error of the mean (effective sample size
    /// based for MCMC draws).
    pub mc_standard_error: f64,
    pub draws: usize,
}

impl PosteriorSummary {
    /// The smallest p-value the draw count can resolve.
    pub fn p_value_floor(&self) -> f64 {
        1.0 / self.draws as f64
    }

    /// True when the p-value collapsed to zero and only the floor is
    /// reportable.
    pub fn p_value_below_resolution(&self) -> bool {
        self.p_value == 0.0
    }
}

/// Mean and spread of an auxiliary posterior series (marginals and
/// conditionals feeding the bar report).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanSd {
    pub mean: f64,
    pub sd: f64,
}

fn mean_sd(xs: &[f64]) -> MeanSd {
    MeanSd {
        mean: mean(xs),
        sd: sample_sd(xs),
    }
}

/// Full per-pair outcome of the analysis.
#[derive(Debug, Clone, PartialEq)]
pub struct PairResult {
    pub table: ContingencyTable,
    pub summary_ab: PosteriorSummary,
    pub summary_ba: PosteriorSummary,
    pub prob_a: MeanSd,
    pub prob_b: MeanSd,
    pub prob_a_given_b: MeanSd,
    pub prob_b_given_a: MeanSd,
    /// The orientation with the larger absolute mean added value.
    pub chosen_orientation: Orientation,
    pub significant: bool,
    pub relation: Relation,
    /// Either variable was constant in the retained rows.
    pub degenerate: bool,
    /// Seed the pair's draws were generated from.
    pub seed: u64,
}

impl PairResult {
    pub fn var_a(&self) -> &str {
        &self.table.label_a
    }

    pub fn var_b(&self) -> &str {
        &self.table.label_b
    }

    pub fn chosen_summary(&self) -> &PosteriorSummary {
        match self.chosen_orientation {
            Orientation::Ab => &self.summary_ab,
            Orientation::Ba => &self.summary_ba,
        }
    }

    /// The larger of the two orientation means; the edge weight and
    /// distance inputs of the relational outputs.
    pub fn max_orientation_mean(&self) -> f64 {
        self.summary_ab.mean.max(self.summary_ba.mean)
    }
}

/// Settings shared by every analysis entry point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    /// Per-test significance level before multiple-comparison correction.
    pub base_significance: f64,
    pub prior: DirichletParams,
    pub sampler: SamplerKind,
    /// Draw count for the direct sampler.
    pub draws: usize,
    pub chains: usize,
    pub steps: usize,
    pub burn_in: usize,
    pub seed: u64,
    pub ci_level: f64,
    /// Hard floor on draws before a summary is meaningful.
    pub min_draws: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            base_significance: 0.02,
            prior: DirichletParams::flat(),
            sampler: SamplerKind::Direct,
            draws: 40_000,
            chains: 4,
            steps: 10_000,
            burn_in: 1_000,
            seed: 42,
            ci_level: 0.95,
            min_draws: 1_000,
        }
    }
}

impl AnalysisConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.base_significance > 0.0 && self.base_significance < 1.0) {
            return Err(Error::Config(format!(
                "base significance must lie in (0, 1), got {}",
                self.base_significance
            )));
        }
        if !(self.ci_level > 0.0 && self.ci_level < 1.0) {
            return Err(Error::Config(format!(
                "credible-interval level must lie in (0, 1), got {}",
                self.ci_level
            )));
        }
        self.prior.validate()?;
        match self.sampler {
            SamplerKind::Direct if self.draws == 0 => {
                Err(Error::Config("direct sampler needs at least 1 draw".into()))
            }
            SamplerKind::Mcmc if self.chains < 2 => Err(Error::Config(
                "MCMC needs at least 2 chains for convergence diagnostics".into(),
            )),
            SamplerKind::Mcmc if self.steps == 0 => {
                Err(Error::Config("MCMC needs at least 1 step per chain".into()))
            }
            _ => Ok(()),
        }
    }

    fn sample(&self, params: &DirichletParams, seed: u64) -> Result<SampleSet> {
        match self.sampler {
            SamplerKind::Direct => sample_direct(params, self.draws, seed),
            SamplerKind::Mcmc => {
                sample_mcmc(params, self.chains, self.steps, self.burn_in, seed)
            }
        }
    }
}

/// Family-wise corrected per-test threshold: base / num_tests.
pub fn bonferroni_threshold(base: f64, num_tests: usize) -> f64 {
    assert!(num_tests >= 1, "at least one test is required");
    base / num_tests as f64
}

/// Summarize the added-value series of one orientation: mean, spread,
/// equal-tailed credible interval from empirical quantiles, and the
/// two-sided tail-mass p-value.
pub fn summarize(
    samples: &SampleSet,
    which: Orientation,
    ci_level: f64,
    min_draws: usize,
) -> Result<PosteriorSummary> {
    let series = match which {
        Orientation::Ab => samples.delta_ab(),
        Orientation::Ba => samples.delta_ba(),
    };
    if series.len() < min_draws {
        return Err(Error::TooFewDraws {
            got: series.len(),
            min: min_draws,
        });
    }
    if !(ci_level > 0.0 && ci_level < 1.0) {
        return Err(Error::Config(format!(
            "credible-interval level must lie in (0, 1), got {ci_level}"
        )));
    }
    let mut sorted = series.to_vec();
    sorted.sort_unstable_by(|a, b| a.total_cmp(b));
    let tail = (1.0 - ci_level) / 2.0;
    let n = series.len() as f64;
    let le_zero = series.iter().filter(|x| **x <= 0.0).count() as f64 / n;
    let ge_zero = series.iter().filter(|x| **x >= 0.0).count() as f64 / n;
    let p_value = (2.0 * le_zero.min(ge_zero)).clamp(0.0, 1.0);
    let sd = sample_sd(series);
    Ok(PosteriorSummary {
        mean: mean(series),
        sd,
        ci_low: quantile_sorted(&sorted, tail),
        ci_high: quantile_sorted(&sorted, 1.0 - tail),
        ci_level,
        p_value,
        mc_standard_error: sd / samples.effective_draws(series).sqrt(),
        draws: series.len(),
    })
}

/// Analyze a single contingency table against an explicit significance
/// threshold. One sample set serves both orientations: transposing the
/// pair only permutes cell indices, so the (B, A) series are exact
/// re-readings of the same draws.
pub fn analyze_table(
    table: &ContingencyTable,
    config: &AnalysisConfig,
    threshold: f64,
) -> Result<PairResult> {
    config.validate()?;
    let params = posterior_params(table, &config.prior)?;
    let seed = pair_seed(config.seed, &table.label_a, &table.label_b);
    let samples = config.sample(&params, seed)?;
    let summary_ab = summarize(&samples, Orientation::Ab, config.ci_level, config.min_draws)?;
    let summary_ba = summarize(&samples, Orientation::Ba, config.ci_level, config.min_draws)?;

    let chosen_orientation = match summary_ab.mean.abs().total_cmp(&summary_ba.mean.abs()) {
        std::cmp::Ordering::Greater => Orientation::Ab,
        std::cmp::Ordering::Less => Orientation::Ba,
        // Exact tie: prefer the orientation whose first label sorts lower.
        std::cmp::Ordering::Equal => {
            if table.label_a <= table.label_b {
                Orientation::Ab
            } else {
                Orientation::Ba
            }
        }
    };
    let chosen = match chosen_orientation {
        Orientation::Ab => &summary_ab,
        Orientation::Ba => &summary_ba,
    };
    let significant = chosen.p_value < threshold;
    let relation = if !significant {
        Relation::IndependentCompatible
    } else if chosen.mean > 0.0 {
        Relation::Associated
    } else {
        Relation::Opposed
    };
    Ok(PairResult {
        degenerate: table.degenerate(),
        table: table.clone(),
        summary_ab,
        summary_ba,
        prob_a: mean_sd(samples.prob_a()),
        prob_b: mean_sd(samples.prob_b()),
        prob_a_given_b: mean_sd(samples.prob_a_given_b()),
        prob_b_given_a: mean_sd(samples.prob_b_given_a()),
        chosen_orientation,
        significant,
        relation,
        seed,
    })
}

/// Analyze one labelled pair of a matrix at the uncorrected base level.
pub fn analyze_pair(
    matrix: &BinaryMatrix,
    a: &str,
    b: &str,
    config: &AnalysisConfig,
) -> Result<PairResult> {
    let table = contingency(matrix, a, b)?;
    analyze_table(&table, config, bonferroni_threshold(config.base_significance, 1))
}

/// Analyze every unordered variable pair with a Bonferroni-corrected
/// threshold. Pairs are ordered lexicographically by label; each pair's
/// seed derives from the master seed and its labels, so results do not
/// depend on column order, execution order, or worker count.
pub fn analyze_all_pairs(matrix: &BinaryMatrix, config: &AnalysisConfig) -> Result<Vec<PairResult>> {
    config.validate()?;
    let mut labels: Vec<&String> = matrix.variable_names().iter().collect();
    if labels.len() < 2 {
        return Err(Error::DataShape(
            "pairwise analysis needs at least two variables".into(),
        ));
    }
    labels.sort();
    let mut pairs = Vec::new();
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            pairs.push((labels[i].as_str(), labels[j].as_str()));
        }
    }
    let threshold = bonferroni_threshold(config.base_significance, pairs.len());
    pairs
        .par_iter()
        .map(|(a, b)| {
            let table = contingency(matrix, a, b)?;
            analyze_table(&table, config, threshold)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::BinaryColumn;
    use crate::posterior::analytic_moments;
    use approx::assert_relative_eq;

    fn direct_config(draws: usize, seed: u64) -> AnalysisConfig {
        AnalysisConfig {
            draws,
            seed,
            ..AnalysisConfig::default()
        }
    }

    #[test]
    fn bonferroni_values() {
        let t = bonferroni_threshold(0.02, 435);
        assert_relative_eq!(t, 4.5977e-5, max_relative = 1e-4);
        // Two significant figures give the published threshold.
        assert!((t - 4.6e-5).abs() < 0.05e-5);
        assert_eq!(bonferroni_threshold(0.02, 1), 0.02);
        assert_eq!(bonferroni_threshold(0.05, 10), 0.005);
    }

    #[test]
    fn one_sided_draws_hit_the_resolution_floor() {
        let params = DirichletParams::new(4409.0, 4.0, 195.0, 9.0).unwrap();
        let samples = sample_direct(&params, 40_000, 1).unwrap();
        let s = summarize(&samples, Orientation::Ab, 0.95, 1_000).unwrap();
        assert!(s.p_value_below_resolution());
        assert_eq!(s.p_value_floor(), 1.0 / 40_000.0);
    }

    #[test]
    fn symmetric_draws_give_p_near_one() {
        let samples = sample_direct(&DirichletParams::flat(), 40_000, 2).unwrap();
        let s = summarize(&samples, Orientation::Ab, 0.95, 1_000).unwrap();
        assert!(s.p_value > 0.9, "p = {}", s.p_value);
        assert!(s.ci_low <= s.mean && s.mean <= s.ci_high);
    }

    #[test]
    fn too_few_draws_is_an_error() {
        let samples = sample_direct(&DirichletParams::flat(), 100, 3).unwrap();
        assert!(matches!(
            summarize(&samples, Orientation::Ab, 0.95, 1_000),
            Err(Error::TooFewDraws { got: 100, min: 1000 })
        ));
    }

    #[test]
    fn grief_sadness_headline_mean() {
        // A = sadness, B = grief: mean dP = 9/13 - 204/4617.
        let table = ContingencyTable::new("sadness", "grief", 4408, 3, 194, 8);
        let r = analyze_table(&table, &direct_config(40_000, 42), 0.02).unwrap();
        let expected = 9.0 / 13.0 - 204.0 / 4617.0;
        assert!(
            (r.summary_ab.mean - expected).abs() < 3.0 * r.summary_ab.mc_standard_error,
            "mean {} vs {}",
            r.summary_ab.mean,
            expected
        );
        assert_eq!(r.chosen_orientation, Orientation::Ab);
        assert_eq!(r.relation, Relation::Associated);
    }

    #[test]
    fn joy_admiration_added_value() {
        // A = joy, B = admiration.
        let table = ContingencyTable::new("joy", "admiration", 4274, 205, 112, 22);
        let config = direct_config(40_000, 7);
        let r = analyze_table(&table, &config, 0.02).unwrap();
        let m = analytic_moments(&posterior_params(&table, &config.prior).unwrap());
        assert_relative_eq!(m.e_delta_ab, 23.0 / 229.0 - 136.0 / 4617.0, epsilon = 1e-12);
        assert!(
            (r.summary_ab.mean - m.e_delta_ab).abs() < 3.0 * r.summary_ab.mc_standard_error
        );
    }

    #[test]
    fn p_values_match_across_orientations() {
        let table = ContingencyTable::new("a", "b", 50, 13, 8, 29);
        let r = analyze_table(&table, &direct_config(20_000, 5), 0.02).unwrap();
        assert_eq!(r.summary_ab.p_value, r.summary_ba.p_value);
    }

    #[test]
    fn self_pair_is_associated() {
        let col = BinaryColumn::from_bits("x", &[1, 0, 1, 1, 0, 1, 0, 0, 1, 0]);
        let other = BinaryColumn::from_bits("y", &[0, 1, 0, 0, 1, 0, 1, 1, 0, 1]);
        let m = BinaryMatrix::from_columns(vec![col, other]).unwrap();
        let r = analyze_pair(&m, "x", "x", &direct_config(40_000, 9)).unwrap();
        assert!(r.prob_a_given_b.mean > 0.8);
        assert_eq!(r.relation, Relation::Associated);
    }

    #[test]
    fn degenerate_variable_is_flagged() {
        let ones = BinaryColumn::from_bits("const", &[1; 12]);
        let x = BinaryColumn::from_bits("x", &[0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1]);
        let m = BinaryMatrix::from_columns(vec![ones, x]).unwrap();
        let r = analyze_pair(&m, "const", "x", &direct_config(2_000, 1)).unwrap();
        assert!(r.degenerate);
    }

    #[test]
    fn all_pairs_is_lexicographic_and_counts_pairs() {
        let cols = ["d", "b", "a", "c"]
            .iter()
            .enumerate()
            .map(|(i, name)| {
                let bits: Vec<u8> = (0..20).map(|r| ((r + i) % 3 == 0) as u8).collect();
                BinaryColumn::from_bits(*name, &bits)
            })
            .collect();
        let m = BinaryMatrix::from_columns(cols).unwrap();
        let results = analyze_all_pairs(&m, &direct_config(2_000, 3)).unwrap();
        let pairs: Vec<(String, String)> = results
            .iter()
            .map(|r| (r.var_a().to_string(), r.var_b().to_string()))
            .collect();
        let expected: Vec<(String, String)> = [
            ("a", "b"),
            ("a", "c"),
            ("a", "d"),
            ("b", "c"),
            ("b", "d"),
            ("c", "d"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
        assert_eq!(pairs, expected);
    }

    #[test]
    fn column_order_does_not_change_results() {
        let a = BinaryColumn::from_bits("a", &[1, 0, 1, 1, 0, 0, 1, 0]);
        let b = BinaryColumn::from_bits("b", &[1, 1, 0, 1, 0, 1, 0, 0]);
        let c = BinaryColumn::from_bits("c", &[0, 0, 1, 0, 1, 1, 0, 1]);
        let config = direct_config(2_000, 11);
        let m1 = BinaryMatrix::from_columns(vec![a.clone(), b.clone(), c.clone()]).unwrap();
        let m2 = BinaryMatrix::from_columns(vec![c, a, b]).unwrap();
        assert_eq!(
            analyze_all_pairs(&m1, &config).unwrap(),
            analyze_all_pairs(&m2, &config).unwrap()
        );
    }
}
