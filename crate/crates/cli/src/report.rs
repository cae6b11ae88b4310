//! Report file writers and the results-table reader.
//!
//! All CSV outputs start with `# run_id: <id>` so every artifact
//! cross-references the manifest. Numbers use up to six significant
//! digits; p-values below Monte Carlo resolution print as `<2.5e-05`
//! style strings.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use deltap_core::{DistanceMatrix, EdgeList, Orientation, PairResult, SampleSet};

use crate::error::{CliError, Result};
use crate::format::{fmt_p, fmt_sig};

pub const RESULTS_HEADER: &str = "var_a,var_b,n,n00,n01,n10,n11,orientation,mean_ab,sd_ab,ci_low_ab,ci_high_ab,mc_se_ab,mean_ba,sd_ba,ci_low_ba,ci_high_ba,mc_se_ba,p_value,prob_a,prob_b,prob_a_given_b,sd_prob_a_given_b,prob_b_given_a,sd_prob_b_given_a,significant,relation,degenerate";

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(
        File::create(path).map_err(|e| CliError::io(path, e))?,
    ))
}

fn orientation_str(o: Orientation) -> &'static str {
    match o {
        Orientation::Ab => "ab",
        Orientation::Ba => "ba",
    }
}

/// Write the pair-results table sorted by p-value ascending, then by the
/// chosen orientation's absolute mean descending, then by labels.
pub fn write_results(
    path: &Path,
    results: &[PairResult],
    threshold: f64,
    run_id: &str,
) -> Result<()> {
    let mut sorted: Vec<&PairResult> = results.iter().collect();
    sorted.sort_by(|x, y| {
        x.chosen_summary()
            .p_value
            .total_cmp(&y.chosen_summary().p_value)
            .then_with(|| {
                y.chosen_summary()
                    .mean
                    .abs()
                    .total_cmp(&x.chosen_summary().mean.abs())
            })
            .then_with(|| x.var_a().cmp(y.var_a()))
            .then_with(|| x.var_b().cmp(y.var_b()))
    });
    let mut w = create(path)?;
    let io = |e| CliError::io(path, e);
    writeln!(w, "# run_id: {run_id}").map_err(io)?;
    writeln!(w, "# significance_threshold: {}", fmt_sig(threshold)).map_err(io)?;
    writeln!(w, "{RESULTS_HEADER}").map_err(io)?;
    for r in sorted {
        let ab = &r.summary_ab;
        let ba = &r.summary_ba;
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.var_a(),
            r.var_b(),
            r.table.total(),
            r.table.n00,
            r.table.n01,
            r.table.n10,
            r.table.n11,
            orientation_str(r.chosen_orientation),
            fmt_sig(ab.mean),
            fmt_sig(ab.sd),
            fmt_sig(ab.ci_low),
            fmt_sig(ab.ci_high),
            fmt_sig(ab.mc_standard_error),
            fmt_sig(ba.mean),
            fmt_sig(ba.sd),
            fmt_sig(ba.ci_low),
            fmt_sig(ba.ci_high),
            fmt_sig(ba.mc_standard_error),
            fmt_p(ab.p_value, ab.draws),
            fmt_sig(r.prob_a.mean),
            fmt_sig(r.prob_b.mean),
            fmt_sig(r.prob_a_given_b.mean),
            fmt_sig(r.prob_a_given_b.sd),
            fmt_sig(r.prob_b_given_a.mean),
            fmt_sig(r.prob_b_given_a.sd),
            r.significant,
            r.relation.as_str(),
            r.degenerate,
        )
        .map_err(io)?;
    }
    w.flush().map_err(io)
}

/// One parsed row of a results table; the subset the report command
/// needs.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub var_a: String,
    pub var_b: String,
    pub n: u64,
    pub n00: u64,
    pub n01: u64,
    pub n10: u64,
    pub n11: u64,
    pub orientation: Orientation,
    pub mean_ab: f64,
    pub mean_ba: f64,
    /// Zero means "below resolution" (the file showed a `<` floor).
    pub p_value: f64,
    pub p_below_resolution: bool,
    pub prob_a: f64,
    pub prob_b: f64,
    pub prob_a_given_b: f64,
    pub sd_prob_a_given_b: f64,
    pub prob_b_given_a: f64,
    pub sd_prob_b_given_a: f64,
    pub significant: bool,
    pub relation: String,
    pub degenerate: bool,
}

impl ResultRow {
    /// Mean added value of the orientation chosen for reporting.
    pub fn chosen_mean(&self) -> f64 {
        match self.orientation {
            Orientation::Ab => self.mean_ab,
            Orientation::Ba => self.mean_ba,
        }
    }
}

/// Read a results table back, returning the rows and the run id found in
/// the header comments.
pub fn read_results(path: &Path) -> Result<(Vec<ResultRow>, Option<String>)> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut run_id = None;
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("# run_id:") {
            run_id = Some(rest.trim().to_string());
        }
    }
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = rdr
        .headers()
        .map_err(|e| parse(path, None, e.to_string()))?
        .clone();
    let col = |name: &str| -> Result<usize> {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| parse(path, None, format!("missing column '{name}'")))
    };
    let idx: Vec<usize> = [
        "var_a",
        "var_b",
        "n",
        "n00",
        "n01",
        "n10",
        "n11",
        "orientation",
        "mean_ab",
        "mean_ba",
        "p_value",
        "prob_a",
        "prob_b",
        "prob_a_given_b",
        "sd_prob_a_given_b",
        "prob_b_given_a",
        "sd_prob_b_given_a",
        "significant",
        "relation",
        "degenerate",
    ]
    .iter()
    .map(|n| col(n))
    .collect::<Result<_>>()?;

    let mut rows = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| parse(path, Some(i + 2), e.to_string()))?;
        let field = |k: usize| record.get(idx[k]).unwrap_or("");
        let num = |k: usize| -> Result<f64> {
            field(k)
                .parse()
                .map_err(|_| parse(path, Some(i + 2), format!("bad number '{}'", field(k))))
        };
        let int = |k: usize| -> Result<u64> {
            field(k)
                .parse()
                .map_err(|_| parse(path, Some(i + 2), format!("bad count '{}'", field(k))))
        };
        let (p_value, p_below) = match field(10).strip_prefix('<') {
            Some(_) => (0.0, true),
            None => (num(10)?, false),
        };
        rows.push(ResultRow {
            var_a: field(0).to_string(),
            var_b: field(1).to_string(),
            n: int(2)?,
            n00: int(3)?,
            n01: int(4)?,
            n10: int(5)?,
            n11: int(6)?,
            orientation: match field(7) {
                "ab" => Orientation::Ab,
                "ba" => Orientation::Ba,
                other => {
                    return Err(parse(path, Some(i + 2), format!("bad orientation '{other}'")))
                }
            },
            mean_ab: num(8)?,
            mean_ba: num(9)?,
            p_value,
            p_below_resolution: p_below,
            prob_a: num(11)?,
            prob_b: num(12)?,
            prob_a_given_b: num(13)?,
            sd_prob_a_given_b: num(14)?,
            prob_b_given_a: num(15)?,
            sd_prob_b_given_a: num(16)?,
            significant: field(17) == "true",
            relation: field(18).to_string(),
            degenerate: field(19) == "true",
        });
    }
    Ok((rows, run_id))
}

fn parse(path: &Path, row: Option<usize>, message: String) -> CliError {
    CliError::Parse {
        path: path.display().to_string(),
        row,
        col: None,
        message,
    }
}

/// Edge list schema: `var_a,var_b,weight,p_value`.
pub fn write_edges(path: &Path, edges: &EdgeList, run_id: &str) -> Result<()> {
    let mut w = create(path)?;
    let io = |e| CliError::io(path, e);
    writeln!(w, "# run_id: {run_id}").map_err(io)?;
    writeln!(w, "var_a,var_b,weight,p_value").map_err(io)?;
    for e in &edges.edges {
        let p = if e.p_value == 0.0 {
            format!("<{}", fmt_sig(e.p_value_floor))
        } else {
            fmt_sig(e.p_value)
        };
        writeln!(w, "{},{},{},{}", e.var_a, e.var_b, fmt_sig(e.weight), p).map_err(io)?;
    }
    w.flush().map_err(io)
}

/// Distance matrix schema: a header row of labels, then k rows of k
/// comma-separated decimals.
pub fn write_distances(path: &Path, matrix: &DistanceMatrix, run_id: &str) -> Result<()> {
    let mut w = create(path)?;
    let io = |e| CliError::io(path, e);
    writeln!(w, "# run_id: {run_id}").map_err(io)?;
    writeln!(w, "{}", matrix.labels().join(",")).map_err(io)?;
    let k = matrix.len();
    for i in 0..k {
        let row: Vec<String> = (0..k).map(|j| fmt_sig(matrix.get(i, j))).collect();
        writeln!(w, "{}", row.join(",")).map_err(io)?;
    }
    w.flush().map_err(io)
}

/// Histogram of one posterior's added-value draws: `bin_low,bin_high,count`.
pub fn write_histogram(path: &Path, samples: &SampleSet, bins: usize, run_id: &str) -> Result<()> {
    let series = samples.delta_ab();
    let lo = series.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = series.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let width = ((hi - lo) / bins as f64).max(f64::MIN_POSITIVE);
    let mut counts = vec![0u64; bins];
    for x in series {
        let b = (((x - lo) / width) as usize).min(bins - 1);
        counts[b] += 1;
    }
    let mut w = create(path)?;
    let io = |e| CliError::io(path, e);
    writeln!(w, "# run_id: {run_id}").map_err(io)?;
    writeln!(w, "bin_low,bin_high,count").map_err(io)?;
    for (b, c) in counts.iter().enumerate() {
        writeln!(
            w,
            "{},{},{}",
            fmt_sig(lo + b as f64 * width),
            fmt_sig(lo + (b + 1) as f64 * width),
            c
        )
        .map_err(io)?;
    }
    w.flush().map_err(io)
}

/// One row of the simulate summary table.
pub struct SimSummaryRow {
    pub spec: deltap_core::SyntheticSpec,
    pub summary: deltap_core::PosteriorSummary,
}

pub fn write_sim_summary(path: &Path, rows: &[SimSummaryRow], run_id: &str) -> Result<()> {
    let mut w = create(path)?;
    let io = |e| CliError::io(path, e);
    writeln!(w, "# run_id: {run_id}").map_err(io)?;
    writeln!(
        w,
        "spec,prob_a,prob_b,delta_p,n,seed,mean,sd,ci_low,ci_high,p_value,true_delta_in_ci"
    )
    .map_err(io)?;
    for (i, row) in rows.iter().enumerate() {
        let s = &row.summary;
        let covered = row.spec.delta_p >= s.ci_low && row.spec.delta_p <= s.ci_high;
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            i + 1,
            fmt_sig(row.spec.prob_a),
            fmt_sig(row.spec.prob_b),
            fmt_sig(row.spec.delta_p),
            row.spec.n,
            row.spec.seed,
            fmt_sig(s.mean),
            fmt_sig(s.sd),
            fmt_sig(s.ci_low),
            fmt_sig(s.ci_high),
            fmt_p(s.p_value, s.draws),
            covered,
        )
        .map_err(io)?;
    }
    w.flush().map_err(io)
}

/// Venn regions for one named pair: A-only, B-only, both.
pub fn write_venn(path: &Path, row: &ResultRow, run_id: &str) -> Result<()> {
    let mut w = create(path)?;
    let io = |e| CliError::io(path, e);
    writeln!(w, "# run_id: {run_id}").map_err(io)?;
    writeln!(w, "var_a,var_b,a_only,b_only,both").map_err(io)?;
    writeln!(
        w,
        "{},{},{},{},{}",
        row.var_a, row.var_b, row.n10, row.n01, row.n11
    )
    .map_err(io)?;
    w.flush().map_err(io)
}

#[cfg(test)]
mod tests {
    use super::*;
    use deltap_core::{analyze_table, AnalysisConfig, ContingencyTable};

    fn sample_results() -> (Vec<PairResult>, f64) {
        let config = AnalysisConfig {
            draws: 5_000,
            ..AnalysisConfig::default()
        };
        let threshold = 0.02;
        let results = vec![
            analyze_table(
                &ContingencyTable::new("grief", "sadness", 4408, 194, 3, 8),
                &config,
                threshold,
            )
            .unwrap(),
            analyze_table(
                &ContingencyTable::new("calm", "grief", 4000, 300, 300, 13),
                &config,
                threshold,
            )
            .unwrap(),
            analyze_table(
                &ContingencyTable::new("calm", "sadness", 4100, 250, 250, 13),
                &config,
                threshold,
            )
            .unwrap(),
        ];
        (results, threshold)
    }

    #[test]
    fn results_round_trip_and_sort_by_p_then_mean() {
        let (results, threshold) = sample_results();
        let f = tempfile::NamedTempFile::new().unwrap();
        write_results(f.path(), &results, threshold, "cafef00d").unwrap();
        let (rows, run_id) = read_results(f.path()).unwrap();
        assert_eq!(run_id.as_deref(), Some("cafef00d"));
        assert_eq!(rows.len(), 3);
        // grief/sadness has the extreme posterior and sorts first.
        assert_eq!(rows[0].var_a, "grief");
        assert_eq!(rows[0].var_b, "sadness");
        assert!(rows[0].p_below_resolution);
        for pair in rows.windows(2) {
            assert!(pair[0].p_value <= pair[1].p_value);
        }
        assert_eq!((rows[0].n10, rows[0].n01, rows[0].n11), (3, 194, 8));
    }

    #[test]
    fn histogram_counts_sum_to_draws() {
        let params = deltap_core::DirichletParams::flat();
        let samples = deltap_core::sample_direct(&params, 4_000, 3).unwrap();
        let f = tempfile::NamedTempFile::new().unwrap();
        write_histogram(f.path(), &samples, 40, "id").unwrap();
        let text = std::fs::read_to_string(f.path()).unwrap();
        let total: u64 = text
            .lines()
            .skip(2)
            .map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap())
            .sum();
        assert_eq!(total, 4_000);
    }
}
