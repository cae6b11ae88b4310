//! End-to-end checks of the `deltap` binary: exit codes, file outputs,
//! and reproducibility.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn deltap() -> Command {
    Command::new(env!("CARGO_BIN_EXE_deltap"))
}

fn write(path: &Path, content: &str) {
    fs::write(path, content).unwrap();
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn small_instances() -> String {
    let mut csv = String::from("x,y,z\n");
    for i in 0..60 {
        let x = (i % 2) as u8;
        let y = ((i % 3) == 0) as u8;
        let z = ((i % 5) < 2) as u8;
        csv.push_str(&format!("{x},{y},{z}\n"));
    }
    csv
}

#[test]
fn analyze_writes_the_full_bundle() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("data.csv");
    write(&input, &small_instances());
    let out = dir.path().join("out");
    let output = run(deltap()
        .args(["analyze", "--input"])
        .arg(&input)
        .args(["--seed", "7", "--out-dir"])
        .arg(&out));
    assert!(output.status.success(), "{output:?}");
    for name in ["results.csv", "edges.csv", "distances.csv", "manifest.json"] {
        assert!(out.join(name).exists(), "missing {name}");
    }
    let results = fs::read_to_string(out.join("results.csv")).unwrap();
    // Three variables -> three pairs.
    assert_eq!(results.lines().filter(|l| !l.starts_with('#')).count(), 4);
    // Every artifact cross-references the same run id.
    let run_line = results.lines().next().unwrap().to_string();
    assert!(run_line.starts_with("# run_id: "));
    for name in ["edges.csv", "distances.csv"] {
        let text = fs::read_to_string(out.join(name)).unwrap();
        assert_eq!(text.lines().next().unwrap(), run_line, "{name}");
    }
    let manifest = fs::read_to_string(out.join("manifest.json")).unwrap();
    assert!(manifest.contains(run_line.trim_start_matches("# run_id: ").trim()));
}

#[test]
fn encoded_toy_dataset_ingests_as_six_by_five() {
    // Six instances: the one-hot of a 3-valued variable, a second binary
    // variable, and their conjunction.
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("toy.csv");
    write(
        &input,
        "X,Y,Z,V2,(X&V2)\n0,1,0,1,0\n0,0,1,0,0\n1,0,0,1,1\n1,0,0,0,0\n0,1,0,0,0\n1,0,0,1,1\n",
    );
    let matrix = deltap_cli::ingest::read_instances(&input).unwrap();
    assert_eq!(matrix.n_rows(), 6);
    assert_eq!(matrix.n_vars(), 5);
    let out = dir.path().join("out");
    let output = run(deltap()
        .args(["analyze", "--input"])
        .arg(&input)
        .args(["--seed", "1", "--out-dir"])
        .arg(&out));
    assert!(output.status.success(), "{output:?}");
    let results = fs::read_to_string(out.join("results.csv")).unwrap();
    // Five variables -> ten pairs.
    assert_eq!(results.lines().filter(|l| !l.starts_with('#')).count(), 11);
}

#[test]
fn analyze_two_column_input_yields_one_row() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("data.csv");
    write(&input, "a,b\n1,1\n0,1\n1,0\n0,0\n1,1\n0,0\n1,1\n0,1\n");
    let out = dir.path().join("out");
    let output = run(deltap()
        .args(["analyze", "--input"])
        .arg(&input)
        .args(["--seed", "3", "--out-dir"])
        .arg(&out));
    assert!(output.status.success());
    let results = fs::read_to_string(out.join("results.csv")).unwrap();
    assert_eq!(results.lines().filter(|l| !l.starts_with('#')).count(), 2);
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("data.csv");
    write(&input, &small_instances());
    let (out1, out2) = (dir.path().join("o1"), dir.path().join("o2"));
    for out in [&out1, &out2] {
        let output = run(deltap()
            .args(["analyze", "--input"])
            .arg(&input)
            .args(["--seed", "11", "--out-dir"])
            .arg(out));
        assert!(output.status.success());
    }
    for name in ["results.csv", "edges.csv", "distances.csv"] {
        assert_eq!(
            fs::read(out1.join(name)).unwrap(),
            fs::read(out2.join(name)).unwrap(),
            "{name} differs between reruns"
        );
    }
}

#[test]
fn malformed_cell_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.csv");
    write(&input, "a,b\n0,1\n2,0\n");
    let output = run(deltap().args(["analyze", "--input"]).arg(&input));
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("row 3"), "{stderr}");
}

#[test]
fn empty_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("empty.csv");
    write(&input, "");
    let output = run(deltap().args(["analyze", "--input"]).arg(&input));
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn bad_config_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("data.csv");
    write(&input, "a,b\n0,1\n1,0\n");
    let config = dir.path().join("bad.toml");
    write(&config, "[significance]\nbase = 1.5\n");
    let output = run(deltap()
        .args(["analyze", "--input"])
        .arg(&input)
        .arg("--config")
        .arg(&config));
    assert_eq!(output.status.code(), Some(3));
}

#[test]
fn invalid_simulation_spec_exits_3_naming_the_bound() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sim.toml");
    write(
        &config,
        "[[simulation.specs]]\nprob_a = 0.8\nprob_b = 0.5\ndelta_p = 0.3\nn = 100\n",
    );
    let output = run(deltap()
        .arg("simulate")
        .arg("--config")
        .arg(&config)
        .arg("--out-dir")
        .arg(dir.path().join("out")));
    assert_eq!(output.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("prob_a + delta_p"), "{stderr}");
}

#[test]
fn missing_input_exits_4() {
    let output = run(deltap().args(["analyze", "--input", "/nonexistent/x.csv"]));
    assert_eq!(output.status.code(), Some(4));
}

#[test]
fn unknown_pair_in_report_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("data.csv");
    write(&input, &small_instances());
    let out = dir.path().join("out");
    assert!(run(deltap()
        .args(["analyze", "--input"])
        .arg(&input)
        .args(["--seed", "5", "--out-dir"])
        .arg(&out))
    .status
    .success());
    let output = run(deltap()
        .args(["report", "--input"])
        .arg(out.join("results.csv"))
        .args(["--pair", "x,nope", "--out-dir"])
        .arg(&out));
    assert_eq!(output.status.code(), Some(4));
}

#[test]
fn report_emits_chart_and_venn() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("grief.csv");
    write(
        &input,
        "# A = grief, B = sadness\nn00,n01,n10,n11\n4408,194,3,8\n",
    );
    let out = dir.path().join("out");
    assert!(run(deltap()
        .args(["analyze", "--input"])
        .arg(&input)
        .args(["--format", "contingency", "--seed", "9", "--out-dir"])
        .arg(&out))
    .status
    .success());
    let output = run(deltap()
        .args(["report", "--input"])
        .arg(out.join("results.csv"))
        .args(["--pair", "A,B", "--out-dir"])
        .arg(&out));
    assert!(output.status.success(), "{output:?}");
    let chart = fs::read_to_string(out.join("chart.svg")).unwrap();
    assert!(chart.contains("<svg"));
    assert!(chart.contains("rect"));
    let venn = fs::read_to_string(out.join("venn_A_B.csv")).unwrap();
    // A = grief: 3 grief-only, 194 sadness-only, 8 both.
    assert!(venn.lines().last().unwrap().ends_with("3,194,8"));
}

#[test]
fn out_dir_env_var_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("data.csv");
    write(&input, "a,b\n1,0\n0,1\n1,1\n0,0\n");
    let out = dir.path().join("from-env");
    let output = run(deltap()
        .env("DELTAP_OUT_DIR", &out)
        .args(["analyze", "--input"])
        .arg(&input)
        .args(["--seed", "2"]));
    assert!(output.status.success());
    assert!(out.join("results.csv").exists());
}

#[test]
fn simulate_writes_suite_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sim");
    let output = run(deltap()
        .arg("simulate")
        .args(["--seed", "4", "--out-dir"])
        .arg(&out));
    assert!(output.status.success(), "{output:?}");
    for i in 1..=8 {
        assert!(out.join(format!("hist_{i:02}.csv")).exists());
        assert!(out.join(format!("sim_data_{i:02}.csv")).exists());
    }
    assert!(out.join("summary.csv").exists());
    let summary = fs::read_to_string(out.join("summary.csv")).unwrap();
    assert_eq!(summary.lines().filter(|l| !l.starts_with('#')).count(), 9);
}
