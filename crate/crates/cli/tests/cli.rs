use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsep"))
        .args(args)
        .output()
        .expect("spawn qsep")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn field(v: &Value, key: &str) -> f64 {
    let p = &v["payload"][key];
    p.as_f64()
        .or_else(|| p.to_string().parse().ok())
        .unwrap_or_else(|| panic!("{key} missing in {v}"))
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn csv_rows(args: &[&str]) -> Vec<Vec<String>> {
    let out = run(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn record_envelope() {
    let v = json(&["cond", "--xyz", "0,0,0", "--q", "2"]);
    assert_eq!(v["format"], "qsep/1");
    assert_eq!(v["command"]["name"], "cond");
    assert_eq!(v["command"]["xyz"].as_array().unwrap().len(), 3);
    let text = String::from_utf8(run(&["cond", "--xyz", "0,0,0", "--q", "2"]).stdout).unwrap();
    assert!(text.contains("5.0000000000000000e-01"), "{text}");
}

#[test]
fn entropy_examples() {
    let v = json(&["entropy", "--xyz", "0,0,0", "--q", "1"]);
    assert!((field(&v, "S_q_AB") - 4f64.ln()).abs() < 1e-12);
    assert!((field(&v, "S_q_A") - 2f64.ln()).abs() < 1e-12);
    assert!((field(&v, "S_q_B") - 2f64.ln()).abs() < 1e-12);

    let v = json(&["entropy", "--xyz", "1,1,1", "--q", "2"]);
    assert!(field(&v, "S_q_AB").abs() < 1e-12);

    let v = json(&[
        "entropy",
        "--weights",
        "0.125,0.125,0.125,0.625",
        "--q",
        "2",
    ]);
    assert!((field(&v, "S_q_AB") - 0.5625).abs() < 1e-12);
}

#[test]
fn entropy_rejects_bad_weights() {
    assert_eq!(
        code(&["entropy", "--weights", "0.5,0.5,0.5,-0.5", "--q", "2"]),
        3
    );
    assert_eq!(
        code(&["entropy", "--weights", "0.5,0.5,0.5", "--q", "2"]),
        2
    );
    assert_eq!(code(&["entropy", "--q", "2"]), 2);
    let out = run(&["entropy", "--weights", "0.3,0.3,0.3,0.3", "--q", "2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
}

#[test]
fn cond_examples() {
    let v = json(&["cond", "--xyz", "0,0,0", "--q", "2"]);
    assert!((field(&v, "value") - 0.5).abs() < 1e-12);
    let v = json(&["cond", "--xyz", "1,1,1", "--q", "2"]);
    assert!((field(&v, "value") + 1.0).abs() < 1e-12);
    assert_eq!(field(&v, "S_q_B_given_A"), field(&v, "S_q_A_given_B"));
    let t = "0.577350269";
    let v = json(&["cond", "--xyz", &format!("{t},{t},{t}"), "--q", "2"]);
    assert!(field(&v, "value").abs() < 1e-8);
}

#[test]
fn classify_examples() {
    let verdict = |args: &[&str]| {
        json(args)["payload"]["verdict"]
            .as_str()
            .unwrap()
            .to_string()
    };
    assert_eq!(
        verdict(&["classify", "--xyz", "0.2,0.2,0.2", "--method", "ppt"]),
        "separable"
    );
    assert_eq!(
        verdict(&[
            "classify",
            "--xyz",
            "0.5,0.5,0.5",
            "--method",
            "ar-asymptotic"
        ]),
        "entangled"
    );
    let t = "0.333333333";
    assert_eq!(
        verdict(&["classify", "--xyz", &format!("{t},{t},{t}")]),
        "boundary"
    );
    let v = json(&["classify", "--xyz", "0.5,0.5,0.5", "--method", "ar-scan"]);
    assert_eq!(v["payload"]["criterion"], "ar-scan");
    assert!(v["payload"]["witness_q"].is_number());
}

#[test]
fn classify_csv() {
    let rows = csv_rows(&["classify", "--xyz", "0.5,0.5,0.5", "--format", "csv"]);
    assert_eq!(rows.len(), 2);
    let col = rows[0].iter().position(|h| h == "verdict").unwrap();
    assert_eq!(rows[1][col], "entangled");
}

#[test]
fn threshold_examples() {
    let v = json(&["threshold", "--q", "2", "--direction", "diag"]);
    assert!((field(&v, "threshold") - 1.0 / 3f64.sqrt()).abs() < 1e-9);
    let x = field(&json(&["threshold", "--q", "500"]), "threshold");
    assert!(x > 1.0 / 3.0 && x < 1.0 / 3.0 + 2e-3);
    let v = json(&["threshold", "--q", "2", "--direction", "edge"]);
    assert!((field(&v, "threshold") - (2.0f64 / 3.0).sqrt()).abs() < 1e-9);
    let v = json(&["threshold", "--q", "inf", "--direction", "axis"]);
    assert!((field(&v, "threshold") - 1.0).abs() < 1e-12);
}

#[test]
fn threshold_axis_at_q2_has_no_physical_root() {
    // The q = 2 zero on (x,0,0) lies at sqrt(2), outside the tetrahedron.
    let out = run(&["threshold", "--q", "2", "--direction", "axis"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(!out.stderr.is_empty());
}

#[test]
fn threshold_usage_errors() {
    assert_eq!(code(&["threshold", "--q", "1"]), 3);
    assert_eq!(code(&["threshold", "--q", "2", "--direction", "up"]), 2);
    assert_eq!(code(&["threshold", "--q", "2", "--direction", "0,0,0"]), 2);
}

#[test]
fn qinflex_examples() {
    let v = json(&["qinflex", "--xyz", "0,0,0"]);
    assert_eq!(field(&v, "eta"), 0.0);
    assert!(v["payload"]["q_inflexion"].is_null());
    let v = json(&["qinflex", "--xyz", "1,1,1"]);
    assert_eq!(field(&v, "eta"), 1.0);
    assert_eq!(v["payload"]["vertex"], true);
    let v = json(&["qinflex", "--xyz", "0.6,0.6,0.6"]);
    let q_i = 3.991337506778366;
    assert!((field(&v, "q_inflexion") / q_i - 1.0).abs() < 1e-6);
    assert!((field(&v, "eta") - 1.0 / (1.0 + q_i)).abs() < 1e-6);
}

#[test]
fn domain_and_usage_exit_codes() {
    assert_eq!(code(&["cond", "--xyz", "1,1,1.5", "--q", "2"]), 3);
    assert_eq!(code(&["classify", "--xyz", "1,1"]), 2);
    assert_eq!(code(&["cond", "--xyz", "0,0,0", "--q", "nan"]), 2);
    assert_eq!(code(&["nonsense"]), 2);
    assert_eq!(code(&["scan", "--jobs", "0"]), 2);
    assert_eq!(code(&["scan", "--x", "1:0"]), 2);
    assert_eq!(code(&["scan", "--x", "0:1:0"]), 2);
}

#[test]
fn out_writes_file_and_unwritable_path_fails() {
    let path = tmp("cond.json");
    let out = run(&[
        "cond",
        "--xyz",
        "0,0,0",
        "--q",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let direct = run(&["cond", "--xyz", "0,0,0", "--q", "2"]).stdout;
    assert_eq!(std::fs::read(&path).unwrap(), direct);

    let bad = tmp("missing-dir/fig.csv");
    let out = run(&["figure", "fig1a", "--out", bad.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(!out.stderr.is_empty());
}

#[test]
fn repeated_runs_identical() {
    let a = run(&["qinflex", "--xyz", "0.7,0.5,0.6"]).stdout;
    let b = run(&["qinflex", "--xyz", "0.7,0.5,0.6"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn scan_layout_and_jobs_independence() {
    let args = [
        "scan", "--x", "-1:1:9", "--y", "-1:1:9", "--z", "-1:1:9", "--method", "ppt",
    ];
    let rows = csv_rows(&args);
    assert_eq!(
        rows[0],
        [
            "x",
            "y",
            "z",
            "physical",
            "verdict",
            "criterion",
            "witness",
            "witness_q"
        ]
    );
    assert_eq!(rows.len(), 1 + 9 * 9 * 9);
    for r in &rows[1..] {
        if r[3] == "false" {
            assert_eq!(r[4], "na");
        } else {
            assert!(["separable", "entangled", "boundary"].contains(&r[4].as_str()));
        }
    }
    let mut parallel = args.to_vec();
    parallel.extend(["--jobs", "4"]);
    assert_eq!(run(&args).stdout, run(&parallel).stdout);
}

#[test]
fn scan_outside_tetrahedron_classifies_nothing() {
    let rows = csv_rows(&["scan", "--x", "1.1:1.5:5", "--y", "0:1:3", "--z", "0:1:3"]);
    assert_eq!(rows.len(), 1 + 5 * 3 * 3);
    assert!(rows[1..].iter().all(|r| r[3] == "false" && r[4] == "na"));
}

#[test]
fn fig1a_layout() {
    let rows = csv_rows(&["figure", "fig1a"]);
    assert_eq!(rows[0], ["direction", "x", "q", "S_q_cond"]);
    assert_eq!(rows.len(), 1 + 3 * 3 * 201);
}

#[test]
fn fig1b_symmetric_about_midpoint() {
    let rows = csv_rows(&["figure", "fig1b"]);
    assert_eq!(rows[0], ["x", "y", "z", "q", "S_q_cond"]);
    let data = &rows[1..];
    assert_eq!(data.len(), 3 * 201);
    for curve in data.chunks(201) {
        let v: Vec<f64> = curve.iter().map(|r| r[4].parse().unwrap()).collect();
        for k in 0..201 {
            assert!((v[k] - v[200 - k]).abs() < 1e-12, "asymmetry at {k}");
        }
    }
}

#[test]
fn fig2_extreme_curves_match_closed_forms() {
    let rows = csv_rows(&["figure", "fig2"]);
    assert_eq!(rows[0], ["label", "q", "S_q_cond"]);
    let mut top = 0;
    let mut bottom = 0;
    for r in &rows[1..] {
        let q: f64 = r[1].parse().unwrap();
        let v: f64 = r[2].parse().unwrap();
        let expected = match r[0].as_str() {
            "000" if (q - 1.0).abs() < 1e-12 => 2f64.ln(),
            "000" => (2f64.powf(1.0 - q) - 1.0) / (1.0 - q),
            "xxx=1" if (q - 1.0).abs() < 1e-12 => -2f64.ln(),
            "xxx=1" => -(2f64.powf(q - 1.0) - 1.0) / (q - 1.0),
            _ => continue,
        };
        if r[0] == "000" {
            top += 1
        } else {
            bottom += 1
        }
        assert!((v - expected).abs() < 1e-12, "{r:?}");
    }
    // q = 0 is dropped only for the rank-deficient pure state.
    assert_eq!(top, 1301);
    assert_eq!(bottom, 1300);
}

#[test]
fn fig3_physical_fraction() {
    let rows = csv_rows(&["figure", "fig3", "--jobs", "4"]);
    assert_eq!(rows[0], ["x", "y", "z", "physical", "verdict", "eta"]);
    let data = &rows[1..];
    assert_eq!(data.len(), 41 * 41 * 41);
    let physical = data.iter().filter(|r| r[3] == "true").count();
    // Lattice points of the tetrahedron i + j + k >= 80 in {0..40}^3: C(43, 3).
    assert_eq!(physical, 12341);
    // Continuum ratio: tetrahedron volume 64/6 over cube volume 64.
    let fraction = physical as f64 / data.len() as f64;
    assert!((fraction - 1.0 / 6.0).abs() < 0.02, "{fraction}");
    for r in data {
        let eta: f64 = r[5].parse().unwrap();
        match r[4].as_str() {
            "na" => assert!(eta.is_nan()),
            "separable" | "boundary" => assert_eq!(eta, 0.0, "{r:?}"),
            _ => assert!((0.0..=1.0).contains(&eta)),
        }
    }
}
