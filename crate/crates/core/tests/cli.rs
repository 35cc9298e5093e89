//! Command-line behaviour through [`bmetric::cli::run`] and the built binary.
//!
//! Golden files live in `tests/golden`. Set `BMETRIC_UPDATE_GOLDEN=1` to
//! rewrite them after an intended output change.

use std::path::{Path, PathBuf};
use std::process::Command;

use bmetric::cli::{parse_manifold, run, ManifoldFile, EXIT_ERROR, EXIT_OK, EXIT_THEOREM_FAILED};

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn bmetric(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("bmetric").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn golden(name: &str, actual: &str) {
    let path = manifest_dir().join("tests/golden").join(name);
    if std::env::var_os("BMETRIC_UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{}: {e}; set BMETRIC_UPDATE_GOLDEN=1 to create it", path.display()));
    assert!(expected == actual, "{} differs from the current output", path.display());
}

#[test]
fn verify_paper_symbolic_golden() {
    let o = bmetric(&["verify-paper", "--json"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    golden("verify_paper_symbolic.json", &o.stdout);
}

#[test]
fn verify_paper_sampled_golden() {
    let o = bmetric(&["verify-paper", "--json", "--mode", "sampled", "--seed", "3", "--samples", "10"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    golden("verify_paper_sampled_seed3.json", &o.stdout);
    let again = bmetric(&["verify-paper", "--json", "--mode", "sampled", "--seed", "3", "--samples", "10"]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn verify_paper_text_lists_every_claim() {
    let o = bmetric(&["verify-paper"]);
    assert_eq!(o.code, EXIT_OK);
    for id in bmetric::paperlab::claim_ids() {
        assert!(o.stdout.contains(id), "{id} missing from text report");
    }
}

#[test]
fn verify_paper_on_bundled_family_file_matches_builtin() {
    let from_file = bmetric(&["verify-paper", "--json", "--family", "data/f6_family.acbm"]);
    let builtin = bmetric(&["verify-paper", "--json"]);
    assert_eq!(from_file.code, EXIT_OK, "{}", from_file.stderr);
    let a: serde_json::Value = serde_json::from_str(&from_file.stdout).unwrap();
    let b: serde_json::Value = serde_json::from_str(&builtin.stdout).unwrap();
    assert_eq!(a["summary"], b["summary"]);
}

#[test]
fn corrupted_family_exits_with_theorem_failure() {
    let o = bmetric(&["verify-paper", "--family", "tests/data/corrupted_f6.acbm"]);
    assert_eq!(o.code, EXIT_THEOREM_FAILED);
    assert!(o.stdout.contains("[failed"));
}

#[test]
fn jacobi_violation_is_an_input_error() {
    let o = bmetric(&["classify", "tests/data/non_jacobi.acbm"]);
    assert_eq!(o.code, EXIT_ERROR);
    assert!(o.stderr.contains("Jacobi identity fails on (e1, e2, e4)"), "{}", o.stderr);
}

#[test]
fn classify_goldens() {
    let o = bmetric(&["classify", "data/f6_family.acbm", "--json"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    golden("classify_f6_family.json", &o.stdout);

    let o = bmetric(&["classify", "data/general_family.acbm"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    golden("classify_general_family.txt", &o.stdout);

    let o = bmetric(&["classify", "data/abelian5.acbm"]);
    assert!(o.stdout.contains("classes: F0, U, U1, U2, F4, F5, F6, isotropic-F0"), "{}", o.stdout);
}

#[test]
fn classify_with_values_on_the_isotropic_locus() {
    let o = bmetric(&[
        "classify",
        "data/f6_family.acbm",
        "--set",
        "lambda1=1",
        "--set",
        "lambda2=2",
        "--set",
        "lambda3=1",
        "--set",
        "lambda4=-3",
        "--set",
        "mu1=-2",
        "--set",
        "mu3=3",
        "--json",
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["flags"]["isotropic-F0"], true);
    assert_eq!(v["flags"]["F0"], false);
    assert_eq!(v["assignment"]["lambda4"], "-3");
}

#[test]
fn report_goldens_and_out_file() {
    let o = bmetric(&["report", "data/f6_family.acbm"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    golden("report_f6_family.txt", &o.stdout);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("point.json");
    let o = bmetric(&[
        "report",
        "data/f6_family.acbm",
        "--set",
        "lambda1=1/2",
        "--set",
        "lambda2=0",
        "--set",
        "lambda3=-1",
        "--set",
        "lambda4=2",
        "--set",
        "mu1=1",
        "--set",
        "mu3=1/3",
        "--json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&out).unwrap();
    golden("report_f6_point.json", &written);
}

#[test]
fn eval_expressions() {
    let eval = |expr: &str, sets: &[&str]| {
        let mut args = vec!["eval", "data/f6_family.acbm", "--expr", expr];
        for s in sets {
            args.push("--set");
            args.push(s);
        }
        let o = bmetric(&args);
        assert_eq!(o.code, EXIT_OK, "{expr}: {}", o.stderr);
        o.stdout.trim().to_string()
    };
    assert_eq!(eval("tau_star", &[]), "0");
    assert_eq!(
        eval("tau", &[]),
        "-4*lambda1^2 - lambda2^2 - 2*lambda2*mu1 + 4*lambda3^2 + lambda4^2 + 2*lambda4*mu3 - mu1^2 + mu3^2"
    );
    let zeros = ["lambda2=0", "lambda3=0", "lambda4=0", "mu1=0", "mu3=0"];
    let mut point = vec!["lambda1=1"];
    point.extend(zeros);
    assert_eq!(eval("R(xi,e1,e1,xi)", &point), "-1");
    assert_eq!(eval("R(5,1,1,5)", &point), "-1");
    assert_eq!(eval("sq_nabla_phi", &point), "-8");
    assert_eq!(eval("F(e1,e3,xi)", &[]), "lambda1");
    assert_eq!(eval("N(e1,e2,e3)", &[]), "0");

    let bad = bmetric(&["eval", "data/f6_family.acbm", "--expr", "rho(e1)"]);
    assert_eq!(bad.code, EXIT_ERROR);
    let unknown = bmetric(&["eval", "data/f6_family.acbm", "--expr", "zeta"]);
    assert_eq!(unknown.code, EXIT_ERROR);
    assert!(unknown.stderr.contains("unknown expression"));
}

#[test]
fn argument_errors() {
    assert_eq!(bmetric(&["classify"]).code, EXIT_ERROR);
    assert_eq!(bmetric(&["classify", "data/f6_family.acbm", "--set", "lambda1"]).code, EXIT_ERROR);
    let o = bmetric(&["classify", "data/f6_family.acbm", "--set", "nu=1"]);
    assert_eq!(o.code, EXIT_ERROR);
    let o = bmetric(&["classify", "no/such/file.acbm"]);
    assert_eq!(o.code, EXIT_ERROR);
    assert!(o.stderr.starts_with("error:"));
    assert_eq!(bmetric(&["--help"]).code, EXIT_OK);
}

#[test]
fn parse_errors_carry_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.acbm");
    let text = std::fs::read_to_string(manifest_dir().join("data/f6_family.acbm"))
        .unwrap()
        .replacen("bracket 1 5 1 lambda1", "bracket 1 5 1 lambda1 +* 2", 1);
    assert!(text.contains("+* 2"), "fixture line not found");
    std::fs::write(&path, &text).unwrap();
    let line = text.lines().position(|l| l.contains("+* 2")).unwrap() + 1;
    let o = bmetric(&["classify", path.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_ERROR);
    assert!(o.stderr.starts_with(&format!("error: {line}:24: ")), "{}", o.stderr);
}

fn bundled_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = ["data", "tests/data"]
        .iter()
        .flat_map(|d| std::fs::read_dir(manifest_dir().join(d)).unwrap())
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "acbm"))
        .collect();
    files.sort();
    files
}

#[test]
fn manifold_files_round_trip() {
    let files = bundled_files();
    assert!(files.len() >= 5);
    for path in files {
        let text = std::fs::read_to_string(&path).unwrap();
        let parsed = ManifoldFile::parse(&text).unwrap();
        let canonical = parsed.to_text();
        assert_eq!(ManifoldFile::parse(&canonical).unwrap(), parsed, "{}", path.display());
        assert_eq!(ManifoldFile::parse(&canonical).unwrap().to_text(), canonical);
    }
}

#[test]
fn bundled_family_file_is_the_builtin_family() {
    use bmetric::paperlab::{build_f6_family, FamilyParams};
    let m = parse_manifold(Path::new(&manifest_dir().join("data/f6_family.acbm"))).unwrap();
    let (l, s) = build_f6_family(&FamilyParams::symbolic()).unwrap();
    assert_eq!(m.algebra, l);
    assert_eq!(m.structure.metric().g(), s.metric().g());
    assert_eq!(m.structure.phi(), s.phi());
}

#[test]
fn binary_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_bmetric");
    let status = |args: &[&str]| {
        Command::new(exe)
            .args(args)
            .current_dir(manifest_dir())
            .output()
            .unwrap()
    };
    let ok = status(&["classify", "data/f6_family.acbm"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("F6"));
    assert_eq!(status(&["verify-paper", "--family", "tests/data/corrupted_f6.acbm"]).status.code(), Some(1));
    let bad = status(&["classify", "tests/data/non_jacobi.acbm"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("Jacobi"));
}
