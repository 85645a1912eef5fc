mod common;

use std::path::PathBuf;
use std::process::Command;

use common::*;
use serde_json::Value;
use sympal::cli::run_args;
use sympal::*;

struct Workdir(PathBuf);

impl Workdir {
    fn new(name: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("sympal-cli-{}-{name}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Workdir(dir)
    }

    fn write(&self, name: &str, contents: &str) -> String {
        let p = self.0.join(name);
        std::fs::write(&p, contents).unwrap();
        p.to_str().unwrap().to_string()
    }

    fn matrix(&self, name: &str, m: &Matrix) -> String {
        self.write(name, &serde_json::to_string(m).unwrap())
    }
}

impl Drop for Workdir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

struct Run {
    code: i32,
    out: String,
    err: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.out).unwrap_or_else(|e| panic!("{e}: {}", self.out))
    }
}

fn run(args: &[&str]) -> Run {
    run_with_stdin(args, "")
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("sympal").chain(args.iter().copied());
    let code = run_args(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

fn assert_close(got: &[f64], want: &[f64]) {
    assert_eq!(got.len(), want.len());
    for (a, b) in got.iter().zip(want) {
        assert!((a - b).abs() < 1e-12, "{got:?} vs {want:?}");
    }
}

#[test]
fn spectrum_of_diagonal_form() {
    let w = Workdir::new("spectrum");
    let p = w.matrix("m.json", &Matrix::from_diag(&[2.0, 3.0, 2.0, 3.0]));
    let r = run(&["spectrum", &p]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_close(&floats(&r.json()["spectrum"]), &[2.0, 3.0]);
    let r = run(&["--order", "desc", "spectrum", &p]);
    assert_close(&floats(&r.json()["spectrum"]), &[3.0, 2.0]);
}

#[test]
fn spectrum_reads_stdin() {
    let m = serde_json::to_string(&Matrix::from_diag(&[4.0, 1.0])).unwrap();
    let r = run_with_stdin(&["spectrum", "-"], &m);
    assert_eq!(r.code, 0);
    assert_close(&floats(&r.json()["spectrum"]), &[2.0]);
}

#[test]
fn spectrum_exit_codes() {
    let w = Workdir::new("codes");
    let missing = w.0.join("absent.json");
    let r = run(&["spectrum", missing.to_str().unwrap()]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json()["error"]["kind"], "input");

    let garbage = w.write("bad.json", "{\"rows\": 2");
    assert_eq!(run(&["spectrum", &garbage]).code, 1);

    let ragged = w.write("ragged.json", r#"{"rows": 2, "cols": 2, "data": [[1, 0], [0]]}"#);
    assert_eq!(run(&["spectrum", &ragged]).code, 1);

    let indefinite = w.matrix("indef.json", &Matrix::from_diag(&[1.0, -1.0]));
    let r = run(&["spectrum", &indefinite]);
    assert_eq!(r.code, 2);
    let body = r.json();
    assert_eq!(body["error"]["kind"], "precondition");
    assert_eq!(body["error"]["residual"].as_f64().unwrap(), -1.0);
    assert!(r.err.contains("residual"));

    let odd = w.matrix("odd.json", &Matrix::identity(3));
    assert_eq!(run(&["spectrum", &odd]).code, 2);

    assert_eq!(run(&["spectrum"]).code, 1);
    assert_eq!(run(&["frobnicate"]).code, 1);
    assert_eq!(run(&["--tol", "-1", "spectrum", &indefinite]).code, 1);
    assert_eq!(run(&["--rank-tol", "0", "spectrum", &indefinite]).code, 1);
}

#[test]
fn help_goes_to_stdout() {
    let r = run(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("williamson"));
    assert!(r.err.is_empty());
}

#[test]
fn williamson_report_reconstructs_input() {
    let w = Workdir::new("williamson");
    let mut r = rng(71);
    let m = random_pd(&mut r, 4);
    let p = w.matrix("m.json", &m);
    let out = run(&["williamson", &p]);
    assert_eq!(out.code, 0);
    let v = out.json();
    let s: Matrix = serde_json::from_value(v["S"].clone()).unwrap();
    let spectrum = floats(&v["spectrum"]);
    let lam: Vec<f64> = spectrum.iter().chain(&spectrum).copied().collect();
    let back = &s.transpose() * &(&m * &s);
    assert!((&back - &Matrix::from_diag(&lam)).max_abs() < 1e-9);
    assert!(v["residual_diag"].as_f64().unwrap() < 1e-9);
}

#[test]
fn text_format_renders_fields() {
    let w = Workdir::new("text");
    let p = w.matrix("m.json", &Matrix::from_diag(&[1.0, 0.0, 1.0, 0.0]));
    let r = run(&["--format", "text", "degenerate", &p]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("k: 1"), "{}", r.out);
    assert!(r.out.contains("spectrum: 1.0 0.0"), "{}", r.out);
    assert!(r.out.lines().any(|l| l == "S:"));
}

#[test]
fn hormander_reports_parabolic_count() {
    let w = Workdir::new("hormander");
    let p = w.matrix("m.json", &Matrix::from_diag(&[1.0, 0.0]));
    let v = run(&["hormander", &p]).json();
    assert_eq!(v["k"], 0);
    assert_eq!(v["l"], 1);
}

#[test]
fn simdiag_residual_matches_independent_commutator() {
    let w = Workdir::new("simdiag");
    let mut r = rng(72);
    let a = random_pd(&mut r, 4);
    let b = random_pd(&mut r, 4);
    let pa = w.matrix("a.json", &a);
    let pb = w.matrix("b.json", &b);
    let out = run(&["simdiag", &pa, &pb]);
    assert_eq!(out.code, 2);
    let reported = out.json()["error"]["residual"].as_f64().unwrap();
    let j = standard_symplectic_form(2).unwrap();
    let (ja, jb) = (&j * &a, &j * &b);
    let oracle = (&(&ja * &jb) - &(&jb * &ja)).norm_inf();
    assert!((reported - oracle).abs() <= 1e-12 * oracle);
}

#[test]
fn simdiag_and_family_on_commuting_forms() {
    let w = Workdir::new("family");
    let mut r = rng(73);
    let s0 = random_symplectic(&mut r, 2);
    let a = form_with_spectrum(&s0, &[1.0, 2.0]);
    let b = form_with_spectrum(&s0, &[3.0, 0.5]);
    let c = form_with_spectrum(&s0, &[1.0, 1.0]);
    let (pa, pb, pc) = (w.matrix("a.json", &a), w.matrix("b.json", &b), w.matrix("c.json", &c));
    let v = run(&["simdiag", &pa, &pb]).json();
    assert!(floats(&v["residual_diag"]).iter().all(|&x| x < 1e-7));
    let v = run(&["family", &pa, &pb, &pc]).json();
    assert_eq!(v["spectra"].as_array().unwrap().len(), 3);
    assert_eq!(v["commutators"].as_array().unwrap().len(), 3);

    let ka = w.matrix("ka.json", &form_with_spectrum(&s0, &[1.0, 0.0]));
    let kb = w.matrix("kb.json", &form_with_spectrum(&s0, &[0.0, 2.0]));
    assert_eq!(run(&["simdiag", &ka, &kb]).code, 2);
    assert_eq!(run(&["simdiag", "--psd", &ka, &kb]).code, 0);
}

#[test]
fn mean_power_and_flow() {
    let w = Workdir::new("misc");
    let a = w.matrix("a.json", &Matrix::identity(2));
    let b = w.matrix("b.json", &Matrix::from_diag(&[4.0, 4.0]));
    let v = run(&["mean", &a, &b, "--t", "0.5"]).json();
    let g: Matrix = serde_json::from_value(v["mean"].clone()).unwrap();
    assert!((&g - &Matrix::from_diag(&[2.0, 2.0])).max_abs() < 1e-12);
    assert_eq!(run(&["mean", &a, &b, "--t", "2"]).code, 2);

    let v = run(&["power-check", &a, &b, "--s", "-1"]).json();
    assert!(v["residual"].as_f64().unwrap() < 1e-12);

    let m = w.matrix("m.json", &Matrix::from_diag(&[4.0, 1.0]));
    let v = run(&["flow", &m, "--z0", "1,0", "--time", "0.7"]).json();
    let z = floats(&v["z"]);
    assert!((4.0 * z[0] * z[0] + z[1] * z[1] - 4.0).abs() < 1e-10);
    assert_eq!(v["energy"].as_f64().unwrap(), 4.0);
    assert_eq!(run(&["flow", &m, "--z0", "1,0,0", "--time", "1"]).code, 2);
}

#[test]
fn partition_capacity_and_constraints() {
    let w = Workdir::new("apps");
    let manifest = w.write(
        "z.json",
        r#"{"hamiltonians": [{"rows": 2, "cols": 2, "data": [[1, 0], [0, 1]]}], "beta": 1, "hbar": 1, "mode": "noninteracting"}"#,
    );
    let v = run(&["partition", &manifest]).json();
    assert!((v["z"].as_f64().unwrap() - 0.5).abs() < 1e-15);

    let divergent = w.write(
        "d.json",
        r#"{"hamiltonians": [{"rows": 2, "cols": 2, "data": [[1, 0], [0, 0]]}], "beta": 1, "hbar": 1, "mode": "interacting"}"#,
    );
    assert_eq!(run(&["partition", &divergent]).code, 2);

    let ball = w.write("ball.json", r#"{"region": {"type": "ball", "radius": 2}}"#);
    let v = run(&["capacity", &ball]).json();
    assert!((v["capacity"].as_f64().unwrap() - 4.0 * std::f64::consts::PI).abs() < 1e-12);
    let unknown = w.write("u.json", r#"{"region": {"type": "torus", "radius": 2}}"#);
    assert_eq!(run(&["capacity", &unknown]).code, 1);

    let m = w.matrix("m.json", &Matrix::from_diag(&[1.0, 0.0, 1.0, 0.0]));
    let mt = w.matrix("mt.json", &Matrix::from_diag(&[1.0, 2.0, 1.0, 2.0]));
    let v = run(&["constraints", &m, &mt]).json();
    assert_eq!(v["k"], 1);
    assert_eq!(v["chi_indices"], serde_json::json!([1, 3]));
    assert_close(&floats(&v["c"]), &[2.0, 2.0]);
}

#[test]
fn output_is_deterministic() {
    let w = Workdir::new("determinism");
    let mut r = rng(74);
    let p = w.matrix("m.json", &random_pd(&mut r, 6));
    let first = run(&["williamson", &p]).out;
    for _ in 0..3 {
        assert_eq!(run(&["williamson", &p]).out, first);
    }
}

fn binary(args: &[&str], env_tol: Option<&str>) -> std::process::Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sympal"));
    cmd.args(args).env_remove("SYMPAL_TOL");
    if let Some(t) = env_tol {
        cmd.env("SYMPAL_TOL", t);
    }
    cmd.output().unwrap()
}

#[test]
fn binary_honours_tolerance_environment() {
    let w = Workdir::new("binary");
    // asymmetry 1e-6 sits between the default and the loosened sym_tol
    let m = Matrix::from_rows(&[[2.0, 1e-6], [0.0, 2.0]]).unwrap();
    let p = w.matrix("m.json", &m);
    assert_eq!(binary(&["spectrum", &p], None).status.code(), Some(2));
    assert_eq!(binary(&["spectrum", &p], Some("1000")).status.code(), Some(0));
    // the flag wins over the environment
    assert_eq!(binary(&["--tol", "1", "spectrum", &p], Some("1000")).status.code(), Some(2));
    assert_eq!(binary(&["spectrum", &p], Some("nonsense")).status.code(), Some(1));

    let ok = w.matrix("ok.json", &Matrix::identity(2));
    let out = binary(&["spectrum", &ok], None);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_close(&floats(&v["spectrum"]), &[1.0]);
}
