use std::path::Path;
use std::process::{Command, Output};

fn hypspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypspec")).args(args).output().expect("binary runs")
}

fn enumerate_to(dir: &Path, l_max: &str) -> String {
    let path = dir.join(format!("bolza-{l_max}.txt"));
    let path = path.to_str().unwrap().to_owned();
    let out = hypspec(&["--quiet", "enumerate", "--gens", "bolza", "--lmax", l_max, "--out", &path]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn validate_bolza_passes() {
    let out = hypspec(&["validate", "--gens", "bolza"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
}

#[test]
fn short_spectrum_is_rejected_with_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let spectrum = enumerate_to(dir.path(), "6");
    let out = hypspec(&[
        "variance", "--spectrum", &spectrum, "--A", "1", "--L", "12", "--tau", "2", "--q", "4", "--seed", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_parameters_exit_one() {
    let out = hypspec(&["ifq", "--A", "1", "--L", "1", "--tau", "2", "--q", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let out = hypspec(&[
        "variance", "--A", "1", "--L", "4", "--tau", "2", "--q", "3", "--op", "dirac", "--seed", "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn scan_rows_track_cutoff() {
    let dir = tempfile::tempdir().unwrap();
    let spectrum = enumerate_to(dir.path(), "12");
    let csv = dir.path().join("scan.csv");
    let out = hypspec(&[
        "--quiet", "scan", "--spectrum", &spectrum, "--A", "1", "--L", "2:2:12", "--tau", "2", "--q", "4",
        "--samples", "200", "--seed", "5", "--csv", csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&header[..12], ["q", "A", "L", "tau", "op", "exact_var", "mc_var", "mc_se", "ref_var", "ifq", "samples", "seed"]);
    let cutoffs: Vec<f64> = lines.map(|l| l.split(',').last().unwrap().parse().unwrap()).collect();
    assert_eq!(cutoffs, vec![2.0, 4.0, 6.0, 8.0, 10.0, 12.0]);
}

#[test]
fn outputs_are_reproducible_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let spectrum = enumerate_to(dir.path(), "8");
    let again = std::fs::read(enumerate_to(dir.path(), "8")).unwrap();
    assert_eq!(std::fs::read(&spectrum).unwrap(), again);

    let report = dir.path().join("report.json");
    let run = |workers: &str| {
        let out = hypspec(&[
            "--quiet", "--workers", workers, "variance", "--spectrum", &spectrum, "--A", "1", "--L", "8", "--tau",
            "1.5", "--q", "inf", "--samples", "3000", "--seed", "11", "--out", report.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        std::fs::read(&report).unwrap()
    };
    let first = run("1");
    assert_eq!(first, run("1"));
    assert_eq!(first, run("3"));
    let json: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(json["config"]["sampling"]["seed"], 11);
    assert_eq!(json["result"]["sample_count"], 3000);
}

#[test]
fn rmt_emits_reference_fields() {
    let out = hypspec(&[
        "--json", "rmt", "--kind", "goe", "--n", "128", "--reps", "100", "--W", "16", "--seed", "9",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["variance", "se", "reference", "ratio_to_reference"] {
        assert!(json["result"][key].is_number(), "{key}");
    }
}
