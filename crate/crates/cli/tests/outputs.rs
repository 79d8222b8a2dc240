//! File-emission tests: shapes, headers, determinism, and lossless floats.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use prefloop_cli::manifest::parse_manifest;
use prefloop_cli::output::{PLOT_DATA_HEADER, SUMMARY_HEADER};
use prefloop_cli::runner::{run_experiment, RunOptions};

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("prefloop-test-{}-{tag}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn read_dir_files(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut files = BTreeMap::new();
    for entry in fs::read_dir(dir).unwrap() {
        let entry = entry.unwrap();
        if entry.file_type().unwrap().is_file() {
            files.insert(
                entry.file_name().to_string_lossy().into_owned(),
                fs::read(entry.path()).unwrap(),
            );
        }
    }
    files
}

const SMALL: &str = r#"
name = "emit"
seeds = [11, 12]

[sweep]
beta = [1.0, 2.0]

[base]
n = 20
d = 3
steps = 40

[base.dynamics]
gamma_me = 0.1

[base.policy]
kind = "softmax"
"#;

#[test]
fn experiment_emits_expected_files_with_exact_headers() {
    let manifest = parse_manifest(SMALL).unwrap();
    let out = temp_dir("emit");
    let report = run_experiment(
        &manifest,
        &RunOptions {
            out_dir: out.clone(),
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(report.failures, 0);
    assert_eq!(report.rows.len(), 4);

    let dir = out.join("emit");
    let files = read_dir_files(&dir);
    let names: Vec<&String> = files.keys().collect();
    assert_eq!(
        names.len(),
        6,
        "trajectories + summary + plot_data: {names:?}"
    );
    assert!(files.contains_key("summary.csv"));
    assert!(files.contains_key("plot_data.csv"));
    assert!(files.contains_key("emit__beta-1__seed11.csv"));

    let summary = String::from_utf8(files["summary.csv"].clone()).unwrap();
    let header = summary.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, SUMMARY_HEADER);
    assert_eq!(summary.lines().filter(|l| !l.starts_with('#')).count(), 5);

    let plot = String::from_utf8(files["plot_data.csv"].clone()).unwrap();
    let header = plot.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, PLOT_DATA_HEADER);

    let trajectory = String::from_utf8(files["emit__beta-1__seed11.csv"].clone()).unwrap();
    let mut lines = trajectory.lines();
    let echo = lines.next().unwrap();
    assert!(echo.starts_with("# config: {"));
    assert_eq!(
        lines.next().unwrap(),
        "t,item_index,rating,noiseless_rating,pi_0,pi_1,pi_2,u_0,u_1,u_2,pi_norm"
    );
    // 41 snapshots: t = 0..=40.
    assert_eq!(lines.count(), 41);
    fs::remove_dir_all(&out).unwrap();
}

#[test]
fn trajectory_floats_parse_back_exactly() {
    let manifest = parse_manifest(SMALL).unwrap();
    let out = temp_dir("roundtrip");
    run_experiment(
        &manifest,
        &RunOptions {
            out_dir: out.clone(),
            ..Default::default()
        },
    )
    .unwrap();
    let text = fs::read_to_string(out.join("emit").join("emit__beta-2__seed12.csv")).unwrap();
    let mut data_rows = 0;
    for line in text.lines().filter(|l| !l.starts_with('#')).skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        for field in &fields[4..] {
            let value: f64 = field.parse().expect("numeric field parses");
            assert_eq!(
                field,
                &prefloop_cli::output::fmt_f64(value),
                "not canonical: {field}"
            );
        }
        data_rows += 1;
    }
    assert_eq!(data_rows, 41);
    fs::remove_dir_all(&out).unwrap();
}

#[test]
fn rerun_is_byte_identical() {
    let manifest = parse_manifest(SMALL).unwrap();
    let out_a = temp_dir("rerun-a");
    let out_b = temp_dir("rerun-b");
    for (out, parallelism) in [(&out_a, 1), (&out_b, 8)] {
        run_experiment(
            &manifest,
            &RunOptions {
                out_dir: out.clone(),
                parallelism,
                ..Default::default()
            },
        )
        .unwrap();
    }
    let a = read_dir_files(&out_a.join("emit"));
    let b = read_dir_files(&out_b.join("emit"));
    assert_eq!(a.keys().collect::<Vec<_>>(), b.keys().collect::<Vec<_>>());
    for (name, bytes) in &a {
        assert_eq!(bytes, &b[name], "file {name} differs between runs");
    }
    fs::remove_dir_all(&out_a).unwrap();
    fs::remove_dir_all(&out_b).unwrap();
}

#[test]
fn zero_step_run_emits_single_snapshot_row() {
    let text = r#"
name = "zero"

[base]
n = 5
d = 2
steps = 0

[base.policy]
kind = "uniform"
"#;
    let manifest = parse_manifest(text).unwrap();
    let out = temp_dir("zero");
    let report = run_experiment(
        &manifest,
        &RunOptions {
            out_dir: out.clone(),
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(report.failures, 0);
    let trajectory = fs::read_to_string(out.join("zero").join("zero__base__seed1.csv")).unwrap();
    let data: Vec<&str> = trajectory
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .collect();
    assert_eq!(data.len(), 1);
    assert!(data[0].starts_with("0,,,"));
    fs::remove_dir_all(&out).unwrap();
}

#[test]
fn failed_cells_are_reported_not_fatal() {
    let text = r#"
name = "mixed"

[sweep]
gamma_me = [0.1, 0.8]
gamma_oc = [0.4]

[base]
n = 5
d = 2
steps = 10
max_runs = 100

[base.policy]
kind = "uniform"
"#;
    // gamma_me 0.8 + gamma_oc 0.4 > 1 fails validation at expansion time,
    // so this manifest must be rejected as a whole.
    assert!(parse_manifest(text).is_err());

    // A config that passes validation but fails at run time is isolated.
    let text = r#"
name = "diverge"

[sweep]
beta = [1.0]

[base]
n = 5
d = 2
steps = 400
rating_noise_std = 0.0

[base.policy]
kind = "greedy"

[base.estimator]
alpha = 1e9
eta = 0.0
"#;
    let manifest = parse_manifest(text).unwrap();
    let out = temp_dir("diverge");
    let report = run_experiment(
        &manifest,
        &RunOptions {
            out_dir: out.clone(),
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(report.failures, 1);
    let summary = fs::read_to_string(out.join("diverge").join("summary.csv")).unwrap();
    let row = summary.lines().find(|l| l.contains("failed")).unwrap();
    assert!(row.contains("non-finite"), "row: {row}");
    fs::remove_dir_all(&out).unwrap();
}
