use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn cpv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cpv")).args(args).output().expect("binary runs")
}

fn cpv_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cpv")).args(args).env(key, value).output().expect("binary runs")
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn write_config(dir: &Path, text: &str) -> String {
    let p = dir.join("run.json");
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

/// Data rows of a CSV after the echo line and header.
fn csv_rows(path: &Path) -> (String, Vec<String>, Vec<Vec<f64>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let echo = lines.next().unwrap().to_string();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    (echo, header, rows)
}

#[test]
fn equilibrium_run_stays_put() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{"gammas": [1, 2, 3], "points": "totally_orthogonal",
            "integrator": {"method": "rk4_projected", "dt": 0.001, "steps": 1000, "monitor_every": 100}}"#,
    );
    let out = dir.path().join("out");
    let o = cpv(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let s = &report(&o)["summary"];
    assert!(s["max_energy_drift"].as_f64().unwrap() <= 1e-12);
    assert!(s["max_momentum_drift"].as_f64().unwrap() <= 1e-12);
    assert_eq!(s["termination"], "completed");
    let (echo, header, rows) = csv_rows(&out.join("trajectory.csv"));
    let echoed: Value = serde_json::from_str(echo.strip_prefix("# config: ").unwrap()).unwrap();
    assert_eq!(echoed["points"], "totally_orthogonal");
    assert_eq!(header.len(), 1 + 18 + 1 + 3 + 3);
    assert_eq!(rows.len(), 11);
    for r in &rows {
        assert_eq!(r[1..], rows[0][1..]);
    }
    let json: Value = serde_json::from_str(&fs::read_to_string(out.join("trajectory.json")).unwrap()).unwrap();
    assert_eq!(json["samples"].as_array().unwrap().len(), 11);
    assert_eq!(json["samples"][0]["momentum"].as_array().unwrap().len(), 3);
}

#[test]
fn pair_distance_is_constant() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{"gammas": [1, 2], "points": "random:42", "hamiltonian": "log_sin",
            "integrator": {"method": "rk4_projected", "dt": 0.001, "steps": 2000, "monitor_every": 10}}"#,
    );
    let out = dir.path().join("out");
    let o = cpv(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let (_, header, rows) = csv_rows(&out.join("trajectory.csv"));
    let d = header.iter().position(|h| h == "d12").unwrap();
    for r in &rows {
        assert!((r[d] - rows[0][d]).abs() <= 1e-6);
    }
}

#[test]
fn unresolvable_close_pair_stops_with_partial_output() {
    let dir = tempfile::tempdir().unwrap();
    // points 1e-6 apart: the attracting log-sin velocity cannot be resolved at this step size
    let cfg = write_config(
        dir.path(),
        r#"{"gammas": [1, 1], "points": [[[1, 0], [0, 0], [0, 0]], [[1, 0], [0.000001, 0], [0, 0]]],
            "integrator": {"dt": 0.001, "steps": 100, "monitor_every": 10}}"#,
    );
    let out = dir.path().join("out");
    let o = cpv(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(report(&o)["summary"]["termination"]["collision"].is_object());
    let (_, _, rows) = csv_rows(&out.join("trajectory.csv"));
    assert!(!rows.is_empty());
}

#[test]
fn malformed_config_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "{\"gammas\": [1, 2],\n \"points\": \"triple\",\n \"integrator\": {\"steps\": -3}}");
    let o = cpv(&["simulate", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("integrator.steps") && err.contains("line 3"), "{err}");
    let o = cpv(&["classify", "--config", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn polytope_landmarks_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let run = |g: &str, name: &str, threads: &str| {
        let out = dir.path().join(name);
        let o = cpv_env(
            &["polytope", "--gammas", g, "--samples", "3000", "--seed", "5", "--out", out.to_str().unwrap()],
            "CPV_THREADS",
            threads,
        );
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        out
    };
    let out = run("1,1,1", "equal", "2");
    let text = fs::read_to_string(out.join("landmarks.csv")).unwrap();
    assert_eq!(text.lines().nth(1), Some("label,lambda1,lambda2,lambda3,x,y"));
    let row = |label: &str| -> Vec<f64> {
        let line = text.lines().find(|l| l.starts_with(&format!("{label},"))).unwrap();
        line.split(',').skip(1).map(|x| x.parse().unwrap()).collect()
    };
    assert!(row("b").iter().all(|x| x.abs() < 1e-12));
    assert_eq!(row("c1"), row("c2"));
    assert_eq!(row("c1"), row("c3"));

    let p1 = run("1,2,3", "one", "1");
    let p2 = run("1,2,3", "two", "4");
    for f in ["polytope.csv", "landmarks.csv", "polytope.json"] {
        assert_eq!(fs::read(p1.join(f)).unwrap(), fs::read(p2.join(f)).unwrap(), "{f}");
    }
    let j: Value = serde_json::from_str(&fs::read_to_string(p1.join("polytope.json")).unwrap()).unwrap();
    assert_eq!(j["landmarks"]["a"]["lambda"], serde_json::json!([4.0, -2.0, -2.0]));
    assert_eq!(j["reduced_spaces"]["a"]["kind"], "Point");
    let (_, header, rows) = csv_rows(&p1.join("polytope.csv"));
    assert_eq!(header, ["lambda1", "lambda2", "lambda3", "x", "y"]);
    assert_eq!(rows.len(), 3000);
}

#[test]
fn classify_presets() {
    let dir = tempfile::tempdir().unwrap();
    let classify = |points: &str| {
        let cfg = write_config(dir.path(), &format!(r#"{{"gammas": [2, 3, 4], "points": "{points}"}}"#));
        let o = cpv(&["classify", "--config", &cfg]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        report(&o)
    };
    let r = classify("triple");
    assert_eq!(r["stabilizer_type"], "TriplePoint");
    assert_eq!(r["stabilizer_dim"], 4);
    assert_eq!(r["allowed_velocity_dim"], 0);
    assert!(r["re_residual"]["unavailable"].is_string());
    let r = classify("semi_orthogonal");
    assert_eq!(r["stabilizer_type"], "SemiOrthogonal");
    assert_eq!(r["stabilizer_dim"], 1);
    assert_eq!(r["allowed_velocity_dim"], 1);
    assert!(r["re_residual"]["residual"].as_f64().unwrap() <= 1e-8);
    let r = classify("random:3");
    assert_eq!(r["stabilizer_type"], "Generic");
    assert_eq!(r["stabilizer_dim"], 0);
    assert_eq!(r["momentum_jacobian_rank"], 8);
    assert_eq!(r["on_wall"], false);
    assert_eq!(r["allowed_velocity_dim"], 2);
}

#[test]
fn verify_suites_report_and_exit() {
    let dir = tempfile::tempdir().unwrap();
    let o = cpv(&["verify", "--suite", "tables", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(r["passed"], true);
    assert_eq!(r["suites"][0]["criteria"][0]["id"], 7);
    assert!(dir.path().join("verify_tables.json").exists());
    let o = cpv(&["verify", "--suite", "calibration"]);
    assert_eq!(o.status.code(), Some(0));
    let o = cpv(&["verify", "--suite", "everything"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn probe_at_b() {
    let o = cpv(&["probe", "--gammas", "1,2,3", "--target", "b", "--samples", "12", "--seed", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&o);
    assert_eq!(r["class_counts"]["TotallyOrthogonal"], r["converged"]);
    assert_eq!(r["orbit_clusters"].as_array().unwrap().len(), 1);
    assert_eq!(r["prediction"]["kind"], "Point");
    let o = cpv(&["probe", "--gammas", "1,2,3", "--target", "d"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn thread_cap_is_validated() {
    let o = cpv_env(&["verify", "--suite", "landmarks"], "CPV_THREADS", "zero");
    assert_eq!(o.status.code(), Some(2));
}
