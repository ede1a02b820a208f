use std::path::Path;
use std::process::{Command, Output};

use natstate_cli::commands::{optimize, ObservablesReport, OptimizeReport, SuperpositionReport};
use natstate_cli::RunConfig;
use tempfile::TempDir;

fn natstate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_natstate")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn csv_column(text: &str, col: usize) -> Vec<f64> {
    text.lines().skip(1).map(|l| l.split(',').nth(col).unwrap().parse().unwrap()).collect()
}

#[test]
fn optimize_reports_headline_numbers() {
    let out = natstate(&["optimize"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let d = v["d_star_angstrom"].as_f64().unwrap();
    let u = v["U_cal_per_mole"].as_f64().unwrap();
    let b = v["B_kbar"].as_f64().unwrap();
    assert!((d - 3.953).abs() / 3.953 < 5e-3, "{d}");
    assert!((u + 2690.0).abs() / 2690.0 < 1e-2, "{u}");
    assert!((b - 33.4).abs() / 33.4 < 5e-2, "{b}");
    assert_eq!(v["experiment"]["d_angstrom"].as_f64(), Some(3.992));
}

#[test]
fn optimize_json_round_trips_bit_exactly() {
    let out = natstate(&["optimize"]);
    let parsed: OptimizeReport = serde_json::from_slice(&out.stdout).unwrap();
    let direct = optimize(&RunConfig::default()).unwrap();
    assert_eq!(parsed, direct);
}

#[test]
fn output_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("obs.json");
    let out = natstate(&["observables", "--lambda", "91.33", "--N", "1e21", "--output", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
    let r: ObservablesReport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!((r.product_hbar - 0.57735).abs() < 1e-5);
    assert!((r.chi - 4.0 / (91.33f64 * 91.33 * 1e21)).abs() < 1e-12 * r.chi);
}

#[test]
fn observables_boost_and_spread() {
    let out = natstate(&["observables", "--lambda", "91.33", "--N", "100", "--velocity", "-1,0,2", "--time", "1e-9"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let r: ObservablesReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(r.mean_p[0] < 0.0 && r.mean_p[1] == 0.0 && r.mean_p[2] > 0.0);
    assert!((r.mean_p[2] + 2.0 * r.mean_p[0]).abs() < 1e-12 * r.mean_p[2]);
    assert!(r.chi_at_time.unwrap() > r.chi);
    let bad = natstate(&["observables", "--lambda", "91.33", "--N", "100", "--velocity", "1,2"]);
    assert_eq!(bad.status.code(), Some(1));
    let bad = natstate(&["observables", "--lambda", "91.33", "--N", "0.5"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn selfgrav_boson_chi_falls_as_inverse_cube() {
    let out = natstate(&["selfgrav", "--kind", "boson", "--N-list", "10,100,1000"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("n,beta_star,energy,chi,omega,product\n"));
    let chi = csv_column(&text, 3);
    assert_eq!(chi.len(), 3);
    for w in chi.windows(2) {
        let ratio = w[0] / w[1];
        assert!(ratio > 1e3 && ratio < 1.4e3, "{ratio}");
    }
}

#[test]
fn selfgrav_fermion_uses_config_list() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.json", r#"{"n_list": [8, 64, 512]}"#);
    let out = natstate(&["selfgrav", "--kind", "fermion", "--config", &cfg]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let chi = csv_column(&text, 4);
    for w in chi.windows(2) {
        assert!((w[1] / w[0] - 1.0 / 32.0).abs() < 1e-12);
    }
    let f = csv_column(&text, 2);
    assert!(f.iter().all(|&x| x > 0.1 && x < 10.0));
}

#[test]
fn sweep_lambda_has_minimum_near_optimum() {
    let out = natstate(&["sweep", "--param", "lambda", "--range", "60:130:15", "--fixed", "1.0977"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let lambda = csv_column(&text, 0);
    let total = csv_column(&text, 4);
    assert_eq!(lambda.len(), 15);
    let best = total.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
    assert!((lambda[best] - 91.2).abs() < 5.1, "{}", lambda[best]);
}

#[test]
fn sweep_relaxed_d() {
    let out = natstate(&["sweep", "--param", "d", "--range", "1.05:1.15:5", "--relax", "--fixed", "90"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let total = csv_column(&stdout(&out), 4);
    assert!(total[2] < total[0] && total[2] < total[4]);
}

#[test]
fn superposition_from_spec_file() {
    let dir = TempDir::new().unwrap();
    let h = 0.5f64.sqrt();
    let spec = format!(
        r#"{{"displacements": [[-50, 0, 0], [50, 0, 0]], "weights": [{h}, {h}], "cutoff_a": 0.55, "lambda": 91.33, "n": 1e4}}"#
    );
    let path = write(&dir, "s.json", &spec);
    let out = natstate(&["superposition", "--spec", &path]);
    assert!(out.status.success(), "{}", stderr(&out));
    let r: SuperpositionReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!((r.variance[0] - r.intrinsic_chi - 2500.0).abs() < 1e-9);
    assert_eq!(r.variance[1], r.intrinsic_chi);
    assert_eq!(r.branch_overlap, 0.0);

    let overlapping = spec.replace("0.55", "60");
    let out = natstate(&["superposition", "--spec", &write(&dir, "o.json", &overlapping)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("overlap"));
}

#[test]
fn verify_passes_with_defaults() {
    let out = natstate(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.lines().skip(1).all(|l| l.contains(",PASS,")));
    assert!(text.lines().any(|l| l.starts_with("coulomb") && l.ends_with(",201")));
    assert!(text.lines().count() > 10);
}

#[test]
fn verify_mismatch_exits_three() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.json", r#"{"quad_rel_tol": 0.5}"#);
    let out = natstate(&["verify", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains(",FAIL"));
    assert!(stderr(&out).contains("verification failed"));
}

#[test]
fn convergence_failure_exits_two() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.json", r#"{"max_iterations": 3}"#);
    let out = natstate(&["optimize", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("did not converge"));
}

#[test]
fn input_errors_exit_one_with_distinct_messages() {
    let dir = TempDir::new().unwrap();
    let unknown = natstate(&["bogus"]);
    let malformed = natstate(&["optimize", "--config", &write(&dir, "m.json", "{ not json")]);
    let unknown_key = natstate(&["optimize", "--config", &write(&dir, "k.json", r#"{"lambda_0": 3}"#)]);
    let missing = natstate(&["optimize", "--config", "/nonexistent/config.json"]);
    let unwritable = natstate(&["optimize", "--output", "/nonexistent/dir/out.json"]);
    let messages: Vec<String> = [&unknown, &malformed, &unknown_key, &missing, &unwritable]
        .iter()
        .map(|o| {
            assert_eq!(o.status.code(), Some(1), "{}", stderr(o));
            stderr(o)
        })
        .collect();
    assert!(messages[0].contains("unrecognized subcommand"));
    assert!(messages[1].contains("malformed config"));
    assert!(messages[2].contains("unknown field"));
    assert!(messages[3].contains("cannot read config"));
    assert!(messages[4].contains("cannot write output"));
    assert!(!Path::new("/nonexistent/dir/out.json").exists());
}

#[test]
fn help_documents_csv_columns() {
    let out = natstate(&["selfgrav", "--help"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("beta_star"));
    let out = natstate(&["sweep", "--help"]);
    assert!(stdout(&out).contains("total_cal_per_mole"));
}
