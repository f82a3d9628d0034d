use std::f64::consts::PI;
use std::process::{Command, Output};

fn unruh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unruh"))
        .args(args)
        .env_remove("UNRUH_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = unruh(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Parsed CSV as header plus rows of raw fields.
fn csv(args: &[&str]) -> (Vec<String>, Vec<Vec<String>>) {
    let text = stdout(args);
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<String>], name: &str) -> Vec<f64> {
    let k = header
        .iter()
        .position(|h| h == name)
        .unwrap_or_else(|| panic!("no column {name}"));
    rows.iter()
        .map(|r| r[k].parse().unwrap_or(f64::NAN))
        .collect()
}

#[test]
fn correlation_at_zero_frequency() {
    let (h, rows) = csv(&["correlations", "--lambda", "0", "--beta-u", "1"]);
    assert!((column(&h, &rows, "g_closed")[0] - 1.0 / (2.0 * PI)).abs() < 1e-15);
}

#[test]
fn correlation_satisfies_kms_and_numeric_agrees() {
    let (h, rows) = csv(&[
        "correlations",
        "--lambda",
        "1,-1",
        "--beta-u",
        "1",
        "--numeric",
    ]);
    let g = column(&h, &rows, "g_closed");
    assert!((g[1] - (-1f64).exp() * g[0]).abs() < 1e-15);
    let numeric = column(&h, &rows, "g_numeric");
    for (n, c) in numeric.iter().zip(&g) {
        assert!(((n - c) / c).abs() < 1e-6);
    }
}

#[test]
fn acceleration_converts_to_inverse_temperature() {
    let by_beta = stdout(&["correlations", "--lambda", "0.5", "--beta-u", "1"]);
    let by_acc = stdout(&[
        "correlations",
        "--lambda",
        "0.5",
        "--acceleration",
        &(2.0 * PI).to_string(),
    ]);
    assert_eq!(by_beta, by_acc);
}

#[test]
fn temperature_flags_are_exclusive_and_required() {
    let out = unruh(&[
        "correlations",
        "--lambda",
        "1",
        "--beta-u",
        "1",
        "--acceleration",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = unruh(&["rate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn single_zero_time_echoes_initial_state() {
    let (h, rows) = csv(&[
        "single",
        "--beta-u",
        "1",
        "--rho0",
        "0.3,-0.2,0.5",
        "--t-max",
        "0",
        "--steps",
        "1",
    ]);
    assert_eq!(rows[0][0], "sample");
    for (name, v) in [("r1", 0.3), ("r2", -0.2), ("r3", 0.5)] {
        assert!((column(&h, &rows, name)[0] - v).abs() < 1e-15);
    }
}

#[test]
fn single_excitation_probability_approaches_boltzmann_value() {
    let (h, rows) = csv(&[
        "single",
        "--beta-u",
        "2",
        "--t-max",
        "200",
        "--steps",
        "4",
        "--observable",
        "excited",
    ]);
    let p = column(&h, &rows, "p_if");
    let expected = 1.0 / (1.0 + 2f64.exp());
    assert_eq!(rows.last().unwrap()[0], "asymptote");
    assert!((p[p.len() - 1] - expected).abs() < 1e-15);
    assert!((p[p.len() - 2] - expected).abs() < 1e-12);
    assert_eq!(p[0], 0.0);
}

#[test]
fn single_rejects_states_outside_the_ball() {
    let out = unruh(&["single", "--beta-u", "1", "--rho0", "0,0.8,0.8"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn single_warns_and_normalizes_axis() {
    let out = unruh(&[
        "single", "--beta-u", "1", "--n", "0,0,2", "--t-max", "0", "--steps", "1",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("normalized"));
}

#[test]
fn rate_matches_closed_form() {
    let (h, rows) = csv(&["rate", "--omega", "1", "--beta-u", "1"]);
    let gamma = column(&h, &rows, "gamma")[0];
    assert!((gamma - (1.0 / PI) / (1f64.exp() - 1.0)).abs() < 1e-16);
    assert!((gamma - 0.185_248_939).abs() < 1e-9);
}

fn two_final(init: &str, extra: &[&str]) -> (Vec<String>, Vec<Vec<String>>) {
    let mut args = vec![
        "two", "--omega", "1", "--beta-u", "2", "--init", init, "--t-max", "60", "--steps", "3",
    ];
    args.extend_from_slice(extra);
    csv(&args)
}

#[test]
fn antiparallel_product_reaches_half() {
    let (h, rows) = two_final("product:(0,0,1),(0,0,-1)", &[]);
    let c = column(&h, &rows, "concurrence");
    assert_eq!(c[0], 0.0);
    assert!((c[c.len() - 1] - 0.5).abs() < 1e-12);
    assert!((c[c.len() - 2] - 0.5).abs() < 1e-5);
    let residual = column(&h, &rows, "asym_residual");
    assert!(residual[residual.len() - 2] < 1e-6);
}

#[test]
fn werner_gain_is_three_tenths() {
    let (h, rows) = two_final("werner:0.4", &[]);
    let c = column(&h, &rows, "concurrence");
    assert!((c[0] - 0.4).abs() < 1e-12);
    assert!((c[c.len() - 1] - c[0] - 0.3).abs() < 1e-12);
}

#[test]
fn singlet_is_pinned() {
    let (h, rows) = two_final("singlet", &["--propagation", "adaptive"]);
    // adaptive steps at rtol 1e-10 leave the singlet only to integrator accuracy
    for c in column(&h, &rows, "concurrence") {
        assert!((c - 1.0).abs() < 1e-9);
    }
    for tau in column(&h, &rows, "tau") {
        assert!((tau + 3.0).abs() < 1e-12);
    }
}

#[test]
fn two_builder_flag() {
    let out = unruh(&["two", "--beta-u", "3", "--init", "singlet"]);
    assert_eq!(out.status.code(), Some(2));
    let (h, rows) = csv(&[
        "two",
        "--beta-u",
        "3",
        "--init",
        "mixed",
        "--builder",
        "full",
        "--steps",
        "2",
    ]);
    for m in column(&h, &rows, "min_eigenvalue") {
        assert!(m > -1e-12);
    }
}

#[test]
fn two_reads_component_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("state.json");
    let mut c = vec![0.0; 16];
    c[0] = 1.0;
    c[15] = -1.0;
    std::fs::write(&path, serde_json::to_string(&c).unwrap()).unwrap();
    let spec = format!("file:{}", path.display());
    let (h, rows) = csv(&[
        "two", "--beta-u", "2", "--init", &spec, "--t-max", "0", "--steps", "1",
    ]);
    assert_eq!(column(&h, &rows, "tau")[0], -1.0);
}

#[test]
fn sweep_tau_follows_closed_form_line() {
    let (h, rows) = csv(&[
        "sweep",
        "--of",
        "concurrence",
        "--param",
        "tau",
        "--start",
        "-3",
        "--stop",
        "1",
        "--points",
        "9",
        "--set",
        "r=1",
    ]);
    let taus = column(&h, &rows, "tau");
    let c = column(&h, &rows, "concurrence");
    for (tau, c) in taus.iter().zip(&c) {
        let line = ((1.0 - tau) / 4.0).max(0.0);
        assert!((c - line).abs() < 1e-12, "tau {tau}: {c} vs {line}");
    }
}

#[test]
fn sweep_ratio_at_fixed_tau_crosses_at_zero() {
    let (h, rows) = csv(&[
        "sweep",
        "--of",
        "concurrence",
        "--param",
        "r",
        "--start",
        "0",
        "--stop",
        "1",
        "--points",
        "5",
        "--set",
        "tau=-1",
    ]);
    let c = column(&h, &rows, "concurrence");
    assert!(c[0].abs() < 1e-12);
    assert!(c[1..].iter().all(|&v| v > 0.0));
    // at R = 1/√3 the threshold sits at τ = −½
    let r = 1.0 / 3f64.sqrt();
    let (h, rows) = csv(&[
        "sweep",
        "--of",
        "concurrence",
        "--param",
        "tau",
        "--start",
        "-0.5",
        "--stop",
        "-0.5",
        "--points",
        "1",
        "--set",
        &format!("r={r}"),
    ]);
    assert!(column(&h, &rows, "concurrence")[0] < 1e-12);
}

#[test]
fn single_point_sweep_matches_rate_command() {
    let (h1, r1) = csv(&["rate", "--omega", "0.7", "--beta-u", "1.3"]);
    let (h2, r2) = csv(&[
        "sweep",
        "--of",
        "rate",
        "--param",
        "omega",
        "--start",
        "0.7",
        "--stop",
        "0.7",
        "--points",
        "1",
        "--set",
        "beta_u=1.3",
    ]);
    let k1 = h1.iter().position(|h| h == "gamma").unwrap();
    let k2 = h2.iter().position(|h| h == "gamma").unwrap();
    assert_eq!(r1[0][k1], r2[0][k2]);
}

#[test]
fn sweep_is_deterministic_and_reports_row_errors() {
    let args = [
        "sweep",
        "--of",
        "concurrence",
        "--param",
        "tau",
        "--start",
        "-3",
        "--stop",
        "2",
        "--points",
        "41",
    ];
    let first = stdout(&args);
    assert_eq!(first, stdout(&args));
    let (h, rows) = csv(&args);
    let err = h.iter().position(|h| h == "error").unwrap();
    let index = h.iter().position(|h| h == "index").unwrap();
    for (k, row) in rows.iter().enumerate() {
        assert_eq!(row[index], k.to_string());
    }
    assert!(rows[0][err].is_empty());
    assert!(!rows.last().unwrap()[err].is_empty());
}

#[test]
fn sweep_rejects_bad_specs() {
    for args in [
        vec![
            "sweep", "--of", "rate", "--param", "tau", "--start", "0", "--stop", "1",
        ],
        vec![
            "sweep", "--of", "rate", "--param", "omega", "--start", "2", "--stop", "1",
        ],
        vec![
            "sweep", "--of", "rate", "--param", "omega", "--start", "1", "--stop", "2", "--points",
            "0",
        ],
        vec![
            "sweep", "--of", "rate", "--param", "omega", "--start", "1", "--stop", "2", "--set",
            "omega=1",
        ],
    ] {
        assert_eq!(unruh(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn numerical_failure_exits_with_three() {
    let out = unruh(&[
        "correlations",
        "--lambda",
        "40",
        "--beta-u",
        "1",
        "--numeric",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn jsonl_output_parses() {
    let text = stdout(&[
        "--format", "jsonl", "single", "--beta-u", "1", "--steps", "2",
    ]);
    let lines: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[3]["kind"], "asymptote");
    assert!(lines[3]["t"].is_null());
    assert!((lines[3]["r3"].as_f64().unwrap() + 0.5f64.tanh()).abs() < 1e-15);
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_unruh"))
        .args(["rate", "--beta-u", "1", "--output", "runs/rate.csv"])
        .env("UNRUH_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(dir.path().join("runs/rate.csv")).unwrap();
    assert!(text.starts_with("omega,beta_u,a,b,c,gamma\n"));
}
