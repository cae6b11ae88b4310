//! Relational views over a completed all-pairs run: the significant
//! positive-association edge list and the pairwise distance matrix for
//! external embedding.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::inference::PairResult;

/// Distances are floored at this offset so the maximizing pair sits at a
/// strictly positive distance.
pub const DISTANCE_FLOOR: f64 = 0.01;

/// One significant positive association.
#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub var_a: String,
    pub var_b: String,
    /// The larger of the two orientation means.
    pub weight: f64,
    pub p_value: f64,
    /// Smallest p-value the pair's draw count can resolve; the
    /// reportable floor when `p_value` is zero.
    pub p_value_floor: f64,
}

/// Edges of the association graph, heaviest first.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EdgeList {
    pub edges: Vec<Edge>,
}

/// Symmetric pairwise distances with a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    labels: Vec<String>,
    values: Vec<f64>,
}

impl DistanceMatrix {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.labels.len() + j]
    }

    pub fn by_label(&self, a: &str, b: &str) -> Result<f64> {
        let i = self
            .labels
            .iter()
            .position(|l| l == a)
            .ok_or_else(|| Error::UnknownVariable(a.to_string()))?;
        let j = self
            .labels
            .iter()
            .position(|l| l == b)
            .ok_or_else(|| Error::UnknownVariable(b.to_string()))?;
        Ok(self.get(i, j))
    }
}

/// Keep the significant pairs whose chosen orientation boosts (rather
/// than suppresses) and weight each edge by its larger orientation mean.
pub fn build_edges(results: &[PairResult]) -> EdgeList {
    let mut edges: Vec<Edge> = results
        .iter()
        .filter(|r| r.significant && r.chosen_summary().mean > 0.0)
        .map(|r| Edge {
            var_a: r.var_a().to_string(),
            var_b: r.var_b().to_string(),
            weight: r.max_orientation_mean(),
            p_value: r.chosen_summary().p_value,
            p_value_floor: r.chosen_summary().p_value_floor(),
        })
        .collect();
    edges.sort_by(|a, b| {
        b.weight
            .total_cmp(&a.weight)
            .then_with(|| a.var_a.cmp(&b.var_a))
            .then_with(|| a.var_b.cmp(&b.var_b))
    });
    EdgeList { edges }
}

/// Distance between two variables: the floor plus the gap between the
/// globally best boost and this pair's best boost. Defined over all
/// pairs regardless of significance; the diagonal is zero by convention.
pub fn build_distance_matrix(results: &[PairResult]) -> Result<DistanceMatrix> {
    if results.is_empty() {
        return Err(Error::DataShape(
            "distance matrix needs at least one pair result".into(),
        ));
    }
    let mut label_set: BTreeSet<&str> = BTreeSet::new();
    for r in results {
        label_set.insert(r.var_a());
        label_set.insert(r.var_b());
    }
    let labels: Vec<String> = label_set.iter().map(|s| s.to_string()).collect();
    let k = labels.len();
    let index = |name: &str| labels.iter().position(|l| l == name).unwrap();
    let expected = k * (k - 1) / 2;
    if results.len() != expected {
        return Err(Error::DataShape(format!(
            "incomplete all-pairs run: {} results for {k} variables (expected {expected})",
            results.len()
        )));
    }

    let global_max = results
        .iter()
        .map(|r| r.max_orientation_mean())
        .fold(f64::NEG_INFINITY, f64::max);
    let mut values = vec![0.0; k * k];
    for r in results {
        let i = index(r.var_a());
        let j = index(r.var_b());
        // Grouping the subtraction keeps the maximizer at the floor
        // exactly.
        let d = DISTANCE_FLOOR + (global_max - r.max_orientation_mean());
        values[i * k + j] = d;
        values[j * k + i] = d;
    }
    Ok(DistanceMatrix { labels, values })
}
