use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fbmh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fbmh")).args(args).env_remove("FBMH_THREADS").output().expect("spawn fbmh")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn norm_brownian_example() {
    let v = json_of(&fbmh(&["norm", "--H", "0.5", "--T", "10"]));
    assert_eq!(v["branch"], "brownian");
    let total = v["total"].as_f64().unwrap();
    assert!((total - (10.0 - (1.0 - (-20f64).exp()) / 2.0)).abs() < 1e-8, "{total}");
    assert!(v.get("generated").is_some());
}

#[test]
fn constants_example() {
    let v = json_of(&fbmh(&["constants", "--H", "0.25", "--no-timestamp"]));
    let a = std::f64::consts::PI.sqrt() / 4.0;
    assert!((v["a"].as_f64().unwrap() - a).abs() < 1e-14);
    assert!((v["sigmaH2"].as_f64().unwrap() - 2.0 / std::f64::consts::PI).abs() < 1e-14);
    assert!((v["sigma2"].as_f64().unwrap() - 0.125).abs() < 1e-14);
    assert!(v.get("generated").is_none());
}

#[test]
fn decay_csv_reparses() {
    let out = fbmh(&["decay", "--H", "0.6", "--T", "25,50,100,200"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# generated "));
    assert!(!text.contains('\r'));
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(str::to_string).collect();
    assert_eq!(header, ["T", "norm_over_2T", "residual", "scaled_residual"]);
    let rows: Vec<Vec<f64>> =
        rdr.records().map(|r| r.unwrap().iter().map(|c| c.parse::<f64>().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 4);
    let sigma2 = json_of(&fbmh(&["constants", "--H", "0.6"]))["sigma2"].as_f64().unwrap();
    for (r, t) in rows.iter().zip([25.0, 50.0, 100.0, 200.0]) {
        assert_eq!(r[0], t);
        assert!((r[2] - (r[1] - sigma2).abs()).abs() < 1e-15);
        // min(1, 3-4H) = 0.6
        assert!((r[3] - r[2] * t.powf(0.6)).abs() < 1e-12 * r[3]);
    }
}

#[test]
fn seventeen_digit_numbers() {
    let out = fbmh(&["constants", "--H", "0.3", "--format", "csv", "--no-timestamp"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let row = text.lines().nth(1).unwrap();
    for cell in row.split(',') {
        let mantissa = cell.split('e').next().unwrap().replace(['.', '-'], "");
        assert_eq!(mantissa.len(), 17, "{cell}");
    }
    // round trip is exact
    let v = json_of(&fbmh(&["constants", "--H", "0.3"]));
    let a: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
    assert_eq!(a, v["a"].as_f64().unwrap());
}

#[test]
fn byte_identical_without_timestamp() {
    let args = ["mc-wt", "--H", "0.6", "--T", "10", "--paths", "64", "--steps", "256", "--seed", "7", "--no-timestamp"];
    let a = fbmh(&args);
    let b = fbmh(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let threaded = Command::new(env!("CARGO_BIN_EXE_fbmh")).args(args).env("FBMH_THREADS", "1").output().unwrap();
    assert_eq!(a.stdout, threaded.stdout);

    let d1 = fbmh(&["decay", "--H", "0.3", "--T", "5,10"]);
    let d2 = fbmh(&["decay", "--H", "0.3", "--T", "5,10"]);
    let strip =
        |o: &Output| String::from_utf8(o.stdout.clone()).unwrap().lines().skip(1).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&d1), strip(&d2));
}

#[test]
fn config_file_precedence() {
    let cfg = scratch("run.cfg");
    fs::write(&cfg, "# defaults\nH = 0.3\nformat=csv\nno-timestamp = true\n").unwrap();
    let c = cfg.to_str().unwrap();
    let out = fbmh(&["constants", "--config", c]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("H,a,sigmaH2,sigma2\n2.9999999999999999e-1,"), "{text}");
    // flags beat the file
    let v = json_of(&fbmh(&["constants", "--config", c, "--H", "0.6", "--format", "json"]));
    assert_eq!(v["H"].as_f64().unwrap(), 0.6);

    fs::write(&cfg, "H=0.3\ncolour=blue\n").unwrap();
    assert_eq!(fbmh(&["constants", "--config", c]).status.code(), Some(2));
}

#[test]
fn writes_report_file() {
    let path = scratch("norm.json");
    let _ = fs::remove_file(&path);
    let out = fbmh(&["norm", "--H", "0.3", "--T", "2", "--out", path.to_str().unwrap(), "--no-timestamp"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["branch"], "lowH");
    assert!(v["total"].as_f64().unwrap() > 0.0);
}

#[test]
fn lemma_report() {
    let v = json_of(&fbmh(&["lemma", "--lemma", "A4", "--no-timestamp"]));
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    assert!(v["max_over_median"].as_f64().unwrap() <= 3.0);
    let v = json_of(&fbmh(&["lemma", "--lemma", "A2", "--beta", "-0.5", "--T", "50"]));
    assert_eq!(v["remainder_exponent"].as_f64().unwrap(), -3.5);
}

#[test]
fn exit_codes() {
    assert_eq!(fbmh(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(fbmh(&["norm", "--bogus"]).status.code(), Some(1));
    assert_eq!(fbmh(&["--help"]).status.code(), Some(0));
    assert_eq!(fbmh(&["--version"]).status.code(), Some(0));
    // validation failures
    assert_eq!(fbmh(&["constants", "--H", "1.5"]).status.code(), Some(2));
    assert_eq!(fbmh(&["constants", "--H", "0.75"]).status.code(), Some(2));
    assert_eq!(fbmh(&["norm", "--H", "0.3"]).status.code(), Some(2));
    assert_eq!(fbmh(&["decay", "--H", "0.3", "--T", "50,25"]).status.code(), Some(2));
    assert_eq!(fbmh(&["lemma", "--lemma", "Z9"]).status.code(), Some(2));
    assert_eq!(fbmh(&["mc-wt", "--H", "0.3", "--steps", "1000"]).status.code(), Some(2));
    // a tolerance below the roundoff floor cannot be met
    assert_eq!(fbmh(&["norm", "--H", "0.3", "--T", "5", "--tol", "1e-30"]).status.code(), Some(3));
    // unwritable output
    assert_eq!(fbmh(&["constants", "--H", "0.3", "--out", "/nonexistent/dir/x.json"]).status.code(), Some(1));
}

#[test]
fn rho_integral_brownian() {
    let v = json_of(&fbmh(&["rho-integral", "--H", "0.5", "--no-timestamp"]));
    assert!((v["value"].as_f64().unwrap() - 0.125).abs() < 1e-6);
    assert_eq!(v["tail_warning"], false);
}
