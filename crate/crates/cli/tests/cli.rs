use std::path::PathBuf;
use std::process::{Command, Output};

use fadeperf::config::Method;
use fadeperf::{sweep, CliError, SweepConfig};

fn scratch(name: &str, config: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, config).unwrap();
    path
}

fn fadeperf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fadeperf")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn column(csv: &str, method: &str) -> Vec<(f64, f64, Option<f64>)> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').collect::<Vec<_>>())
        .filter(|f| f[1] == method)
        .map(|f| (f[0].parse().unwrap(), f[2].parse().unwrap(), f[3].parse().ok()))
        .collect()
}

const GNM_BPSK: &str = r#"{
    "metric": {"kind": "bep_coherent_psk"},
    "channels": [{"model": "generalized_gamma", "m": 2, "shape": 1.5}],
    "snr_grid_db": {"start": 0, "stop": 20, "step": 5},
    "methods": ["closed", "mc"],
    "mc_samples": 1000000,
    "mc_seed": 7
}"#;

#[test]
fn closed_form_and_simulation_agree_on_a_gnm_curve() {
    let path = scratch("gnm.json", GNM_BPSK);
    let csv = stdout(&fadeperf(&["abep", "--config", path.to_str().unwrap()]));
    assert!(csv.starts_with("snr_db,method,value,stderr\n"));
    assert!(!csv.contains('\r'));
    let closed = column(&csv, "closed");
    let mc = column(&csv, "mc");
    assert_eq!(closed.len(), 5);
    for ((snr, exact, none), (_, est, se)) in closed.iter().zip(&mc) {
        assert!(none.is_none());
        let se = se.unwrap();
        assert!((exact - est).abs() <= 4.0 * se, "{snr} dB: {exact} vs {est} ± {se}");
    }
    // error probability falls along the emitted grid
    assert!(closed.windows(2).all(|w| w[1].1 < w[0].1));
}

#[test]
fn closed_only_output_ignores_the_seed() {
    let cfg = GNM_BPSK.replace(r#"["closed", "mc"]"#, r#"["closed", "quadrature"]"#);
    let path = scratch("closed.json", &cfg);
    let path = path.to_str().unwrap();
    let a = stdout(&fadeperf(&["abep", "--config", path, "--seed", "1"]));
    let b = stdout(&fadeperf(&["abep", "--config", path, "--seed", "99"]));
    assert_eq!(a, b);
}

#[test]
fn degenerate_grid_gives_one_row_per_method() {
    let cfg = GNM_BPSK
        .replace(r#""stop": 20"#, r#""stop": 0"#)
        .replace(r#"["closed", "mc"]"#, r#"["closed", "quadrature", "gcq"]"#);
    let path = scratch("point.json", &cfg);
    let csv = stdout(&fadeperf(&["abep", "--config", path.to_str().unwrap()]));
    let methods: Vec<_> = csv.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(methods, ["closed", "quadrature", "gcq"]);
}

#[test]
fn capacity_grows_with_branch_count() {
    let channel = r#"{"model": "generalized_gamma", "m": 2, "shape": 0.25}"#;
    let curve = |l: usize| {
        let cfg = SweepConfig::from_json(&format!(
            r#"{{
                "metric": {{"kind": "capacity"}},
                "channels": [{}],
                "snr_grid_db": {{"start": 0, "stop": 20, "step": 5}},
                "methods": ["gcq"]
            }}"#,
            vec![channel; l].join(",")
        ))
        .unwrap();
        sweep::run(&cfg).unwrap().into_iter().map(|r| r.outcome.unwrap().value).collect::<Vec<_>>()
    };
    let (one, two, four) = (curve(1), curve(2), curve(4));
    for k in 0..one.len() {
        assert!(one[k] < two[k] && two[k] < four[k], "point {k}: {} {} {}", one[k], two[k], four[k]);
    }
    assert!(one.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn methods_agree_for_identical_nakagami_branches() {
    let cfg = SweepConfig::from_json(
        r#"{
            "metric": {"kind": "bep_dpsk"},
            "channels": [{"model": "nakagami", "m": 2}, {"model": "nakagami", "m": 2}],
            "snr_grid_db": {"start": -5, "stop": 15, "step": 10},
            "methods": ["closed", "quadrature", "gcq"]
        }"#,
    )
    .unwrap();
    let rows = sweep::run(&cfg).unwrap();
    for point in rows.chunks(3) {
        let closed = point[0].outcome.as_ref().unwrap().value;
        assert_eq!(point[0].method, Method::Closed);
        for r in &point[1..] {
            let v = r.outcome.as_ref().unwrap().value;
            assert!((v - closed).abs() < 1e-6 * closed, "{r:?} vs {closed}");
        }
    }
}

#[test]
fn subcommands_check_the_metric() {
    let path = scratch("bpsk.json", GNM_BPSK);
    let out = fadeperf(&["capacity", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let cap = GNM_BPSK.replace(r#"{"kind": "bep_coherent_psk"}"#, r#"{"kind": "capacity"}"#);
    let path = scratch("cap.json", &cap);
    assert_eq!(fadeperf(&["abep", "--config", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn aup_overrides_the_metric() {
    let cfg = GNM_BPSK.replace(r#"["closed", "mc"]"#, r#"["closed"]"#);
    let path = scratch("aup.json", &cfg);
    let path = path.to_str().unwrap();
    let bpsk = stdout(&fadeperf(&["abep", "--config", path]));
    let aup = stdout(&fadeperf(&["aup", "--config", path, "--a", "1", "--b", "0.5", "--n", "1"]));
    assert_eq!(bpsk, aup);
}

#[test]
fn config_errors_exit_with_two() {
    assert_eq!(fadeperf(&["abep"]).status.code(), Some(2));
    assert_eq!(fadeperf(&["abep", "--config", "/nonexistent/sweep.json"]).status.code(), Some(2));
    let path = scratch("broken.json", &GNM_BPSK.replace(r#""step": 5"#, r#""step": -5"#));
    let out = fadeperf(&["abep", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("step"));
    assert_eq!(CliError::Numerical { failed: 1, total: 2 }.exit_code(), 3);
}

#[test]
fn output_goes_to_the_requested_file() {
    let cfg = GNM_BPSK.replace(r#"["closed", "mc"]"#, r#"["gcq"]"#);
    let path = scratch("file.json", &cfg);
    let out = path.with_extension("csv");
    let run = fadeperf(&["abep", "--config", path.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(stdout(&run).is_empty());
    assert_eq!(std::fs::read_to_string(out).unwrap().lines().count(), 6);
}

#[test]
fn nodes_dumps_a_rule() {
    let csv = stdout(&fadeperf(&["nodes", "--rule", "hermite", "--n", "10"]));
    let weights: f64 = csv.lines().skip(1).map(|l| l.split(',').nth(2).unwrap().parse::<f64>().unwrap()).sum();
    assert_eq!(csv.lines().count(), 11);
    assert!((weights - std::f64::consts::PI.sqrt()).abs() < 1e-12);
    assert_eq!(stdout(&fadeperf(&["nodes", "--n", "8"])).lines().count(), 9);
}
