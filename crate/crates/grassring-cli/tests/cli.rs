use std::path::PathBuf;
use std::process::{Command, Output};

use grassring::catalog::Catalog;
use grassring::duality::CycleClass;
use grassring::{ClassExpr, ExactScalar};

fn grassring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grassring")).args(args).output().expect("spawn grassring")
}

fn stdout(args: &[&str]) -> String {
    let out = grassring(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn first_line(args: &[&str]) -> String {
    stdout(args).lines().next().unwrap_or_default().to_string()
}

fn code(args: &[&str]) -> i32 {
    grassring(args).status.code().expect("exit code")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn volume() {
    assert_eq!(first_line(&["volume", "G(3,7)"]), "16/45 * pi^6");
    assert_eq!(first_line(&["volume", "S(1)"]), "2 * pi");
    let approx = stdout(&["volume", "S(1)", "--approx"]);
    let f: f64 = approx.lines().nth(1).unwrap().trim_start_matches("~ ").parse().unwrap();
    assert!((f - 2.0 * std::f64::consts::PI).abs() < 1e-12);
}

#[test]
fn volume_su3_over_so3_is_slag3() {
    let v = |s: &str| first_line(&["volume", s]).parse::<ExactScalar>().unwrap();
    assert_eq!(v("SU(3)").div(&v("SO(3)")).unwrap(), v("SLAG(3)"));
}

#[test]
fn class_actions() {
    assert_eq!(first_line(&["class", "G(4,8)", "e(E)*e(F)", "reduce"]), "0");
    assert_eq!(first_line(&["class", "G(4,8)", "e(E)^4", "integrate"]), "2");
    assert_eq!(first_line(&["class", "G(3,7)", "1/2*p1(E)+1/2*e(F)", "dual"]), "[ASSOC]");
    assert_eq!(first_line(&["class", "G(2,6)", "e(E)", "star"]), "2/3 * pi^2 * e(E)^3");
}

#[test]
fn outputs_reparse() {
    let reduced = first_line(&["class", "G(4,8)", "p1(E)^2 + e(F)^2", "reduce"]);
    let m = Catalog::default_catalog().model("G(4,8)").unwrap();
    let x: ClassExpr = reduced.parse().unwrap();
    assert_eq!(m.reduce(&x).unwrap(), x);

    let dual = first_line(&["class", "G(2,6)", "e(E)^2", "dual"]);
    let c: CycleClass = dual.parse().unwrap();
    assert_eq!(c.to_string(), dual);

    let g = first_line(&["gauss", "--target", "G(4,8)", "--chi", "24", "--sign", "-16"]);
    assert_eq!(g.parse::<CycleClass>().unwrap().to_explicit_string(), g);
}

#[test]
fn gauss() {
    assert_eq!(first_line(&["gauss", "--target", "G(4,8)", "--chi", "2", "--sign", "0", "--lambda", "0"]), "1*[G(4,5)]");
    assert_eq!(first_line(&["gauss", "--target", "G(2,N)", "--chi", "0"]), "0");
    assert_eq!(
        first_line(&["gauss", "--target", "G(4,8)", "--chi", "24", "--sign", "-16", "--lambda", "0"]),
        "12*[G(4,5)] - 24*[G(2,4)]"
    );
    assert_eq!(code(&["gauss", "--target", "G(5,9)", "--chi", "2"]), 3);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["class", "G(9,9)", "p1(E)", "reduce"]), 3);
    assert_eq!(code(&["class", "G(4,8)", "p1(E)", "integrate"]), 4);
    assert_eq!(code(&["class", "G(4,8)", "p1(E", "reduce"]), 2);
    assert_eq!(code(&["volume", "X(3)"]), 2);
    assert_eq!(code(&["snf", "1/2,1"]), 2);
    let err = String::from_utf8(grassring(&["class", "G(4,8)", "p1(E)", "integrate"]).stderr).unwrap();
    assert!(err.contains("not top degree"), "{err}");
}

#[test]
fn betti_and_gysin() {
    assert_eq!(first_line(&["betti", "G(4,8)"]), "1 + 3t^4 + 4t^8 + 3t^12 + t^16");
    assert_eq!(first_line(&["gysin", "tau2"]), "1 + t^4 + t^8");
    assert_eq!(code(&["gysin", "--fiber-dim", "3", "--total", "1,0,0,0,0,0,0,1", "--base-dim", "4"]), 4);
}

#[test]
fn snf_and_pairing() {
    assert_eq!(first_line(&["snf", "2,4;6,8"]), "S = 2,0;0,4");
    let out = stdout(&["pairing", "--matrix", "1,0;0,2"]);
    assert!(out.contains("index: 2"), "{out}");
    assert!(out.contains("dual coefficients: 1,0;0,1/2"), "{out}");
    let out = stdout(&["pairing", "G(3,7)", "4"]);
    assert!(out.contains("index: 2"), "{out}");
    assert!(out.contains("dual coefficients: 1/2,1/2;1/2,-1/2"), "{out}");
    assert_eq!(stdout(&["dual-basis", "G(2,6)", "4"]).lines().count(), 2);
}

#[test]
fn verify_filter_passes() {
    let out = grassring(&["verify", "--filter", "volumes"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().filter(|l| l.starts_with("PASS")).all(|l| l.contains("volumes.")));
}

#[test]
fn verify_json_is_deterministic() {
    let (a, b) = (scratch("report-a.json"), scratch("report-b.json"));
    let run = |p: &PathBuf| code(&["verify", "--json", p.to_str().unwrap()]);
    assert_eq!(run(&a), run(&b));
    let (ja, jb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ja, jb);
    let v: serde_json::Value = serde_json::from_slice(&ja).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(v["summary"]["total"].as_u64().unwrap() as usize, checks.len());
    assert!(checks.iter().all(|c| !c["citation"].as_str().unwrap().is_empty()));
}

#[test]
fn corrupted_catalog_exits_2() {
    let mut doc: serde_json::Value = serde_json::from_str(Catalog::default_json()).unwrap();
    doc["manifolds"][0]["poincare"] = serde_json::json!([1, 0, 2, 0, 2]);
    let path = scratch("corrupt.json");
    std::fs::write(&path, doc.to_string()).unwrap();
    assert_eq!(code(&["--catalog", path.to_str().unwrap(), "verify"]), 2);

    let good = scratch("good.json");
    std::fs::write(&good, Catalog::default_json()).unwrap();
    assert_eq!(code(&["--catalog", good.to_str().unwrap(), "verify", "--filter", "volumes"]), 0);
}

#[test]
fn verify_default_run_passes() {
    let out = grassring(&["verify"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let failed: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(out.status.code(), Some(0), "failed checks:\n{}", failed.join("\n"));
}
