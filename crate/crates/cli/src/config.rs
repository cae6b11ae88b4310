//! Run configuration: a TOML file with `[prior]`, `[sampler]`,
//! `[significance]`, and `[simulation]` sections, plus command-line
//! overrides. Every key has a default matching the shipped analysis
//! settings (flat prior, direct sampler with 40,000 draws, 4 MCMC
//! chains of 10,000 steps after 1,000 burn-in, base significance 0.02,
//! 95% credible intervals).

use std::path::Path;

use serde::{Deserialize, Serialize};

use deltap_core::{rng::pair_seed, AnalysisConfig, DirichletParams, SamplerKind, SyntheticSpec};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigFile {
    pub prior: PriorSection,
    pub sampler: SamplerSection,
    pub significance: SignificanceSection,
    pub simulation: SimulationSection,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PriorSection {
    pub alpha00: f64,
    pub alpha01: f64,
    pub alpha10: f64,
    pub alpha11: f64,
}

impl Default for PriorSection {
    fn default() -> Self {
        Self {
            alpha00: 1.0,
            alpha01: 1.0,
            alpha10: 1.0,
            alpha11: 1.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SamplerSection {
    pub kind: SamplerKind,
    pub draws: usize,
    pub chains: usize,
    pub steps: usize,
    pub burn_in: usize,
    pub seed: u64,
}

impl Default for SamplerSection {
    fn default() -> Self {
        Self {
            kind: SamplerKind::Direct,
            draws: 40_000,
            chains: 4,
            steps: 10_000,
            burn_in: 1_000,
            seed: 42,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SignificanceSection {
    pub base: f64,
    pub ci_level: f64,
    pub min_draws: usize,
}

impl Default for SignificanceSection {
    fn default() -> Self {
        Self {
            base: 0.02,
            ci_level: 0.95,
            min_draws: 1_000,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulationSection {
    pub specs: Vec<SpecEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecEntry {
    pub prob_a: f64,
    pub prob_b: f64,
    pub delta_p: f64,
    pub n: usize,
    /// Defaults to a seed derived from the master seed and the spec's
    /// position.
    pub seed: Option<u64>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        toml::from_str(&text).map_err(|e| {
            CliError::Config(format!("{}: {e}", path.display()))
        })
    }

    pub fn analysis_config(&self) -> AnalysisConfig {
        AnalysisConfig {
            base_significance: self.significance.base,
            prior: DirichletParams {
                alpha00: self.prior.alpha00,
                alpha01: self.prior.alpha01,
                alpha10: self.prior.alpha10,
                alpha11: self.prior.alpha11,
            },
            sampler: self.sampler.kind,
            draws: self.sampler.draws,
            chains: self.sampler.chains,
            steps: self.sampler.steps,
            burn_in: self.sampler.burn_in,
            seed: self.sampler.seed,
            ci_level: self.significance.ci_level,
            min_draws: self.significance.min_draws,
        }
    }

    /// The simulation suite: the configured specs, or the default
    /// eight-spec suite when none are configured.
    pub fn simulation_specs(&self, master_seed: u64) -> Vec<SyntheticSpec> {
        if self.simulation.specs.is_empty() {
            return SyntheticSpec::default_suite(master_seed);
        }
        self.simulation
            .specs
            .iter()
            .enumerate()
            .map(|(i, e)| SyntheticSpec {
                prob_a: e.prob_a,
                prob_b: e.prob_b,
                delta_p: e.delta_p,
                n: e.n,
                seed: e
                    .seed
                    .unwrap_or_else(|| pair_seed(master_seed, "simulation-spec", &i.to_string())),
            })
            .collect()
    }
}

/// Command-line overrides applied on top of the config file.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub sampler: Option<SamplerKind>,
    pub chains: Option<usize>,
    pub steps: Option<usize>,
    pub burn_in: Option<usize>,
}

pub fn resolve_config(
    path: Option<&Path>,
    overrides: &Overrides,
) -> Result<(ConfigFile, AnalysisConfig)> {
    let file = match path {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let mut config = file.analysis_config();
    if let Some(seed) = overrides.seed {
        config.seed = seed;
    }
    if let Some(sampler) = overrides.sampler {
        config.sampler = sampler;
    }
    if let Some(chains) = overrides.chains {
        config.chains = chains;
    }
    if let Some(steps) = overrides.steps {
        config.steps = steps;
    }
    if let Some(burn_in) = overrides.burn_in {
        config.burn_in = burn_in;
    }
    config.validate().map_err(CliError::from)?;
    Ok((file, config))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn defaults_match_shipped_settings() {
        let cfg = ConfigFile::default().analysis_config();
        assert_eq!(cfg, AnalysisConfig::default());
    }

    #[test]
    fn partial_file_fills_in_defaults() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "[sampler]\nkind = \"mcmc\"\nseed = 7\n\n[significance]\nbase = 0.05").unwrap();
        let cfg = ConfigFile::load(f.path()).unwrap();
        let a = cfg.analysis_config();
        assert_eq!(a.sampler, SamplerKind::Mcmc);
        assert_eq!(a.seed, 7);
        assert_eq!(a.base_significance, 0.05);
        assert_eq!(a.chains, 4);
        assert_eq!(a.prior, DirichletParams::flat());
    }

    #[test]
    fn unknown_keys_are_config_errors() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "[sampler]\nknid = \"direct\"").unwrap();
        match ConfigFile::load(f.path()) {
            Err(e @ CliError::Config(_)) => assert_eq!(e.exit_code(), 3),
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn configured_specs_get_derived_seeds() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(
            f,
            "[[simulation.specs]]\nprob_a = 0.3\nprob_b = 0.2\ndelta_p = 0.1\nn = 500"
        )
        .unwrap();
        let cfg = ConfigFile::load(f.path()).unwrap();
        let specs = cfg.simulation_specs(42);
        assert_eq!(specs.len(), 1);
        assert_eq!(specs[0].n, 500);
        assert_eq!(specs, cfg.simulation_specs(42));
        assert_ne!(specs[0].seed, cfg.simulation_specs(43)[0].seed);
    }

    #[test]
    fn empty_simulation_uses_default_suite() {
        let specs = ConfigFile::default().simulation_specs(42);
        assert_eq!(specs.len(), 8);
    }
}
