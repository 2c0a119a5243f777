use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lambdaopt_core::linalg::{ComplexMatrix, I};
use lambdaopt_core::sampling::{haar_su, random_block_unitary};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lambdaopt"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_out(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_matrix(dir: &Path, name: &str, m: &ComplexMatrix) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(m).unwrap()).unwrap();
    path
}

fn hadamard() -> ComplexMatrix {
    let h = FRAC_1_SQRT_2;
    ComplexMatrix::from_rows(vec![vec![h.into(), I * h], vec![I * h, h.into()]]).unwrap()
}

fn f(v: &Value, key: &str) -> f64 {
    v[key]
        .as_f64()
        .unwrap_or_else(|| panic!("{key} missing in {v}"))
}

#[test]
fn synth_quarter_turn() {
    let v = json_out(&run(&["synth", "--alpha", "0.7853981633974483"]));
    assert!((f(&v, "t") - 15f64.sqrt() * PI / 4.0).abs() < 1e-12);
    assert_eq!((v["k"].as_i64(), v["s2"].as_i64()), (Some(0), Some(2)));
    assert_eq!((v["l"].as_i64(), v["r"].as_i64()), (Some(1), Some(-1)));
    assert_eq!(v["method"], "closed_form");

    let deg = json_out(&run(&["synth", "--alpha", "45", "--degrees"]));
    assert!((f(&deg, "t") - f(&v, "t")).abs() < 1e-12);
}

#[test]
fn synth_exit_codes() {
    assert_eq!(run(&["synth", "--alpha", "0"]).status.code(), Some(2));
    // |alpha_hat| = 0.4 lies outside the closed-form range
    assert_eq!(
        run(&["synth", "--alpha", "2.5132741228718345"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["synth"]).status.code(), Some(1));
    assert_eq!(run(&["synth", "--alpha", "x"]).status.code(), Some(1));
    assert_eq!(
        run(&["synth", "--target", "/nonexistent.json"])
            .status
            .code(),
        Some(1)
    );
    let infeasible = run(&[
        "synth", "--alpha", "0.9", "--beta", "0.4", "--method", "brute", "--k-max", "0", "--s-max",
        "0", "--l-max", "0", "--r-max", "0",
    ]);
    assert_eq!(infeasible.status.code(), Some(3));
}

#[test]
fn brute_force_synthesis_verifies() {
    let dir = TempDir::new().unwrap();
    let out = run(&[
        "synth", "--alpha", "0.9", "--beta", "0.4", "--method", "brute",
    ]);
    let v = json_out(&out);
    assert_eq!(v["method"], "brute_force");
    let path = dir.path().join("r.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let check = run(&["verify", "--result", path.to_str().unwrap()]);
    let report = json_out(&check);
    assert!(report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
}

#[test]
fn hadamard_target_round_trip() {
    let dir = TempDir::new().unwrap();
    let target = write_matrix(dir.path(), "h.json", &hadamard());
    let out = run(&[
        "synth",
        "--target",
        target.to_str().unwrap(),
        "--c-sign",
        "minus",
    ]);
    let v = json_out(&out);
    let conj: ComplexMatrix = serde_json::from_value(v["conj"].clone()).unwrap();
    let k2 = conj.principal_block(1, 2);
    assert!(k2.max_abs_diff(&ComplexMatrix::from_diagonal(&[I, -I])) < 1e-10);

    let result = dir.path().join("r.json");
    std::fs::write(&result, &out.stdout).unwrap();
    let ok = run(&[
        "verify",
        "--result",
        result.to_str().unwrap(),
        "--target",
        target.to_str().unwrap(),
    ]);
    assert_eq!(ok.status.code(), Some(0));

    let mut tampered = v.clone();
    tampered["c"] = Value::from(f(&v, "c") * 1.01);
    std::fs::write(&result, tampered.to_string()).unwrap();
    let bad = run(&["verify", "--result", result.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(4));
}

#[test]
fn oracle_examples_and_determinism() {
    let v = json_out(&run(&[
        "oracle",
        "--alpha-hat",
        "-0.125",
        "--beta-hat",
        "0.125",
    ]));
    let tuple = |v: &Value| ["k", "s2", "l", "r"].map(|k| v[k].as_i64().unwrap());
    assert_eq!(tuple(&v), [0, 2, 1, -1]);
    assert!((f(&v, "T_squared") - 15.0 / 64.0).abs() < 1e-15);

    let args = ["oracle", "--alpha-hat", "0.3", "--beta-hat", "-0.3"];
    let a = run(&args);
    let v = json_out(&a);
    assert_eq!(tuple(&v), [2, 4, 2, -1]);
    assert!((f(&v, "T_squared") - (4.0 / 3.0 - 0.9 - 0.09)).abs() < 1e-12);
    assert_eq!(run(&args).stdout, a.stdout);
    let single = bin()
        .args(args)
        .env("LAMBDAOPT_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(single.stdout, a.stdout);

    let bad = bin()
        .args(args)
        .env("LAMBDAOPT_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let infeasible = run(&[
        "oracle",
        "--alpha-hat",
        "0.2",
        "--beta-hat",
        "0.1",
        "--k-max",
        "0",
        "--s-max",
        "0",
    ]);
    assert_eq!(infeasible.status.code(), Some(3));
    assert_eq!(
        run(&["oracle", "--alpha-hat", "0.7", "--beta-hat", "0.1"])
            .status
            .code(),
        Some(1)
    );
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines
        .next()
        .unwrap()
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    (header, rows)
}

#[test]
fn hadamard_trajectory() {
    let dir = TempDir::new().unwrap();
    let target = write_matrix(dir.path(), "h.json", &hadamard());
    let out = run(&["synth", "--target", target.to_str().unwrap()]);
    let params = dir.path().join("p.json");
    std::fs::write(&params, json_out(&out).to_string()).unwrap();
    let csv = dir.path().join("t.csv");
    let status = run(&[
        "trajectory",
        "--params",
        params.to_str().unwrap(),
        "--samples",
        "201",
        "--output",
        csv.to_str().unwrap(),
    ]);
    assert!(
        status.status.success(),
        "{}",
        String::from_utf8_lossy(&status.stderr)
    );
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(!text.contains('\r'));
    let (header, rows) = csv_rows(&text);
    assert_eq!(rows.len(), 201);
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    let num = |row: &[String], name: &str| row[col(name)].parse::<f64>().unwrap();
    for row in &rows {
        assert!((num(row, "sum_v2") - 2.0).abs() < 1e-10);
    }
    let first = &rows[0];
    assert_eq!(num(first, "t"), 0.0);
    assert_eq!(num(first, "U11_re"), 1.0);
    assert_eq!(num(first, "U12_re"), 0.0);
    let last = rows.last().unwrap();
    assert_eq!(last[col("stratum")], "fiber");
    assert!(num(last, "phi").abs() < 1e-9);
    assert!((num(last, "s") - FRAC_1_SQRT_2).abs() < 1e-9);
    // every float carries 17 significant digits
    assert_eq!(last[col("t")].split('e').next().unwrap().len(), 18);
    // interior samples sit in the regular stratum
    assert_eq!(rows[100][col("stratum")], "regular");

    let two = run(&[
        "trajectory",
        "--params",
        params.to_str().unwrap(),
        "--samples",
        "2",
    ]);
    let (_, rows) = csv_rows(std::str::from_utf8(&two.stdout).unwrap());
    assert_eq!(rows.len(), 2);

    let drift = ComplexMatrix::from_diagonal(&[I * 0.5, I * 0.7, -I * 1.2]);
    let drift = write_matrix(dir.path(), "d.json", &drift);
    let lab = run(&[
        "trajectory",
        "--params",
        params.to_str().unwrap(),
        "--samples",
        "5",
        "--frame",
        "lab",
        "--drift",
        drift.to_str().unwrap(),
        "--gamma",
        "2.8284271247461903",
    ]);
    let (header, rows) = csv_rows(std::str::from_utf8(&lab.stdout).unwrap());
    for row in &rows {
        let get = |name: &str| {
            row[header.iter().position(|h| h == name).unwrap()]
                .parse::<f64>()
                .unwrap()
        };
        let u2: f64 = (1..=4).map(|k| get(&format!("u{k}")).powi(2)).sum();
        assert!((u2 - 8.0).abs() < 1e-9 && (get("sum_v2") - 8.0).abs() < 1e-9);
    }
    let last = rows.last().unwrap();
    let t_end: f64 = last[0].parse().unwrap();
    assert!((t_end - 15f64.sqrt() * PI / 8.0).abs() < 1e-12);

    let missing = run(&["trajectory", "--params", "/nonexistent.json"]);
    assert_eq!(missing.status.code(), Some(1));
    let no_drift = run(&[
        "trajectory",
        "--params",
        params.to_str().unwrap(),
        "--frame",
        "lab",
    ]);
    assert_eq!(no_drift.status.code(), Some(1));
}

#[test]
fn orbit_outputs() {
    let dir = TempDir::new().unwrap();
    let id = write_matrix(dir.path(), "id.json", &ComplexMatrix::identity(3));
    let out = run(&["orbit", "--matrix", id.to_str().unwrap()]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        r#"{"stratum":"fiber","phi":0,"s":1}"#
    );

    let h = FRAC_1_SQRT_2;
    let mut end = ComplexMatrix::identity(3);
    end[(1, 1)] = h.into();
    end[(2, 2)] = h.into();
    end[(1, 2)] = -I * h;
    end[(2, 1)] = -I * h;
    let p = write_matrix(dir.path(), "end.json", &end);
    let out = run(&["orbit", "--matrix", p.to_str().unwrap()]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        r#"{"stratum":"fiber","phi":0,"s":0.7071067811865476}"#
    );

    let mut r = ChaCha8Rng::seed_from_u64(1);
    let x = haar_su(3, &mut r).into_inner();
    let k = random_block_unitary(3, &mut r).into_inner();
    let a = json_out(&run(&[
        "orbit",
        "--matrix",
        write_matrix(dir.path(), "x.json", &x).to_str().unwrap(),
    ]));
    let y = x.conjugate_by(&k);
    let b = json_out(&run(&[
        "orbit",
        "--matrix",
        write_matrix(dir.path(), "y.json", &y).to_str().unwrap(),
    ]));
    assert_eq!(a["stratum"], "regular");
    for key in ["x", "z1"] {
        for part in ["re", "im"] {
            let (u, v) = (
                a[key][part].as_f64().unwrap(),
                b[key][part].as_f64().unwrap(),
            );
            assert!((u - v).abs() < 1e-12, "{key}.{part}: {u} vs {v}");
        }
    }

    let bad = write_matrix(
        dir.path(),
        "bad.json",
        &ComplexMatrix::identity(3).scale_real(1.1),
    );
    let out = run(&["orbit", "--matrix", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("residual"));
}
