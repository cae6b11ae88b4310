//! The analyze, simulate, and report commands.

use std::path::{Path, PathBuf};
use std::time::Instant;

use deltap_core::{
    analyze_all_pairs, analyze_table, bonferroni_threshold, build_distance_matrix, build_edges,
    generate_pair, run_spec, AnalysisConfig, PairResult, SyntheticSpec,
};

use crate::error::{CliError, Result};
use crate::ingest::{file_sha256, ingest, write_instances, Ingested, InputFormat};
use crate::manifest::{now_unix_ms, run_id, PairSeed, RunManifest, Timing, TOOL_VERSION};
use crate::report::{
    write_distances, write_edges, write_histogram, write_results, write_sim_summary, write_venn,
    SimSummaryRow,
};
use crate::svg::{bar_chart, Bar, ChartLayout};

pub const HISTOGRAM_BINS: usize = 50;

fn ensure_out_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

/// Files produced by `analyze`.
pub struct AnalyzeOutcome {
    pub results: PathBuf,
    pub edges: PathBuf,
    pub distances: PathBuf,
    pub manifest: PathBuf,
    pub run_id: String,
    pub pairs: usize,
}

pub fn cmd_analyze(
    input: &Path,
    format: InputFormat,
    config: &AnalysisConfig,
    out_dir: &Path,
) -> Result<AnalyzeOutcome> {
    let started = Instant::now();
    let started_unix = now_unix_ms();
    let input_hash = file_sha256(input)?;
    let data = ingest(input, format)?;

    let (results, threshold): (Vec<PairResult>, f64) = match &data {
        Ingested::Instances(matrix) => {
            let k = matrix.n_vars();
            let num_tests = k * (k - 1) / 2;
            let threshold = bonferroni_threshold(config.base_significance, num_tests.max(1));
            (analyze_all_pairs(matrix, config)?, threshold)
        }
        Ingested::Contingency(table) => {
            let threshold = bonferroni_threshold(config.base_significance, 1);
            (vec![analyze_table(table, config, threshold)?], threshold)
        }
    };

    let id = run_id("analyze", Some(&input_hash), config, &[]);
    ensure_out_dir(out_dir)?;
    let results_path = out_dir.join("results.csv");
    let edges_path = out_dir.join("edges.csv");
    let distances_path = out_dir.join("distances.csv");
    let manifest_path = out_dir.join("manifest.json");

    write_results(&results_path, &results, threshold, &id)?;
    write_edges(&edges_path, &build_edges(&results), &id)?;
    write_distances(&distances_path, &build_distance_matrix(&results)?, &id)?;

    let manifest = RunManifest {
        tool_version: TOOL_VERSION.to_string(),
        command: "analyze".into(),
        run_id: id.clone(),
        input_path: Some(input.display().to_string()),
        input_sha256: Some(input_hash),
        master_seed: config.seed,
        config: *config,
        simulation_specs: vec![],
        per_pair_seeds: results
            .iter()
            .map(|r| PairSeed {
                var_a: r.var_a().to_string(),
                var_b: r.var_b().to_string(),
                seed: r.seed,
            })
            .collect(),
        timing: Timing {
            started_unix_ms: started_unix,
            elapsed_ms: started.elapsed().as_millis(),
        },
    };
    manifest.write(&manifest_path)?;

    Ok(AnalyzeOutcome {
        results: results_path,
        edges: edges_path,
        distances: distances_path,
        manifest: manifest_path,
        run_id: id,
        pairs: results.len(),
    })
}

/// Files produced by `simulate`.
pub struct SimulateOutcome {
    pub summary: PathBuf,
    pub data_files: Vec<PathBuf>,
    pub histogram_files: Vec<PathBuf>,
    pub manifest: PathBuf,
    pub run_id: String,
}

pub fn cmd_simulate(
    specs: &[SyntheticSpec],
    config: &AnalysisConfig,
    out_dir: &Path,
) -> Result<SimulateOutcome> {
    let started = Instant::now();
    let started_unix = now_unix_ms();
    for spec in specs {
        spec.validate()?;
    }
    let id = run_id("simulate", None, config, specs);
    ensure_out_dir(out_dir)?;

    let mut data_files = Vec::new();
    let mut histogram_files = Vec::new();
    let mut summary_rows = Vec::new();
    for (i, spec) in specs.iter().enumerate() {
        let matrix = generate_pair(spec)?;
        let data_path = out_dir.join(format!("sim_data_{:02}.csv", i + 1));
        write_instances(&data_path, &matrix, Some(&id))?;
        data_files.push(data_path);

        let (samples, summary) = run_spec(spec, config)?;
        let hist_path = out_dir.join(format!("hist_{:02}.csv", i + 1));
        write_histogram(&hist_path, &samples, HISTOGRAM_BINS, &id)?;
        histogram_files.push(hist_path);
        summary_rows.push(SimSummaryRow {
            spec: *spec,
            summary,
        });
    }
    let summary_path = out_dir.join("summary.csv");
    write_sim_summary(&summary_path, &summary_rows, &id)?;

    let manifest_path = out_dir.join("manifest.json");
    RunManifest {
        tool_version: TOOL_VERSION.to_string(),
        command: "simulate".into(),
        run_id: id.clone(),
        input_path: None,
        input_sha256: None,
        master_seed: config.seed,
        config: *config,
        simulation_specs: specs.to_vec(),
        per_pair_seeds: vec![],
        timing: Timing {
            started_unix_ms: started_unix,
            elapsed_ms: started.elapsed().as_millis(),
        },
    }
    .write(&manifest_path)?;

    Ok(SimulateOutcome {
        summary: summary_path,
        data_files,
        histogram_files,
        manifest: manifest_path,
        run_id: id,
    })
}

/// Files produced by `report`.
pub struct ReportOutcome {
    pub chart: PathBuf,
    pub venn: Option<PathBuf>,
    pub venn_counts: Option<(u64, u64, u64)>,
}

pub fn cmd_report(
    results_path: &Path,
    pair: Option<(&str, &str)>,
    out_dir: &Path,
) -> Result<ReportOutcome> {
    let (rows, run_id) = crate::report::read_results(results_path)?;
    let id = run_id.unwrap_or_else(|| "unknown".to_string());
    ensure_out_dir(out_dir)?;

    // Bars: significant pairs, largest boost first.
    let mut significant: Vec<&crate::report::ResultRow> =
        rows.iter().filter(|r| r.significant).collect();
    significant.sort_by(|a, b| {
        b.chosen_mean()
            .total_cmp(&a.chosen_mean())
            .then_with(|| a.var_a.cmp(&b.var_a))
            .then_with(|| a.var_b.cmp(&b.var_b))
    });
    let bars: Vec<Bar> = significant.iter().map(|r| Bar::from_row(r)).collect();
    let chart_path = out_dir.join("chart.svg");
    std::fs::write(&chart_path, bar_chart(&bars, &id, &ChartLayout::default()))
        .map_err(|e| CliError::io(&chart_path, e))?;

    let mut venn_path = None;
    let mut venn_counts = None;
    if let Some((a, b)) = pair {
        let row = rows
            .iter()
            .find(|r| {
                (r.var_a == a && r.var_b == b) || (r.var_a == b && r.var_b == a)
            })
            .ok_or_else(|| {
                CliError::Runtime(format!("pair '{a},{b}' not found in {}", results_path.display()))
            })?;
        let path = out_dir.join(format!("venn_{}_{}.csv", sanitize(&row.var_a), sanitize(&row.var_b)));
        write_venn(&path, row, &id)?;
        venn_counts = Some((row.n10, row.n01, row.n11));
        venn_path = Some(path);
    }

    Ok(ReportOutcome {
        chart: chart_path,
        venn: venn_path,
        venn_counts,
    })
}

fn sanitize(label: &str) -> String {
    label
        .chars()
        .map(|c| if c.is_alphanumeric() { c } else { '_' })
        .collect()
}
