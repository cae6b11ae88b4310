//! Bayesian measurement of association between binary variables.
//!
//! Given co-occurrence counts for a pair of binary variables (A, B), the
//! crate computes the full posterior of the added value
//! `dP(A,B) = P(A=1|B=1) - P(A=1)` under a Dirichlet-multinomial model,
//! yielding point estimates, credible intervals, and posterior p-values
//! for the hypothesis of independence. On top of the pair-level engine
//! it provides an all-pairs screening driver with Bonferroni correction,
//! synthetic-data generation for validation, and relational outputs
//! (edge lists, distance matrices) for downstream embedding.
//!
//! Sampling is deterministic: all randomness flows from a single master
//! seed, with per-pair and per-chain streams derived from it.

pub mod data;
pub mod error;
pub mod inference;
pub mod oracle;
pub mod posterior;
pub mod relational;
pub mod rng;
pub mod stats;
pub mod synthesis;

pub use data::{
    conjoin, contingency, one_hot_encode, BinaryColumn, BinaryMatrix, CategoricalColumn,
    ContingencyTable,
};
pub use error::{Error, Result};
pub use inference::{
    analyze_all_pairs, analyze_pair, analyze_table, bonferroni_threshold, summarize,
    AnalysisConfig, MeanSd, Orientation, PairResult, PosteriorSummary, Relation,
};
pub use posterior::{
    analytic_moments, derive_quantities, posterior_params, sample_direct, sample_mcmc,
    AnalyticMoments, DirichletParams, SampleMeta, SampleSet, SamplerKind, SimplexPoint,
};
pub use relational::{build_distance_matrix, build_edges, DistanceMatrix, Edge, EdgeList};
pub use synthesis::{generate_pair, run_spec, validation_run, SyntheticSpec};
