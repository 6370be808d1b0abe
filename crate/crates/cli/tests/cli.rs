use std::path::{Path, PathBuf};
use std::process::Command;

use equirr::report::{ChartabResult, DecompositionResult, RamificationResult, VerifyResult};
use equirr::Report;
use tempfile::TempDir;

fn equirr(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_equirr"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn examples() -> TempDir {
    let dir = TempDir::new().unwrap();
    let (code, _, err) = equirr(&["examples", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    dir
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

fn json_report(args: &[&str]) -> Report {
    let mut all = args.to_vec();
    all.push("--json");
    let (code, out, err) = equirr(&all);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn write_job(dir: &Path, name: &str, json: &str) -> String {
    let p: PathBuf = dir.join(name);
    std::fs::write(&p, json).unwrap();
    p.to_str().unwrap().to_string()
}

fn multiplicities(r: &DecompositionResult) -> Vec<&str> {
    r.characters.iter().map(|c| c.multiplicity.as_str()).collect()
}

#[test]
fn examples_writes_four_jobs() {
    let dir = examples();
    for name in ["example1.json", "example1_2d.json", "example2.json", "example3.json"] {
        assert!(dir.path().join(name).exists(), "{name}");
    }
}

#[test]
fn decompose_example1() {
    let dir = examples();
    let report = json_report(&["decompose", &path(dir.path(), "example1_2d.json")]);
    let r: DecompositionResult = serde_json::from_value(report.results).unwrap();
    assert_eq!(multiplicities(&r), ["3", "2", "1", "1"]);
    assert_eq!(r.dimension, "7");
}

#[test]
fn borne_example1() {
    let dir = examples();
    let report = json_report(&["borne", &path(dir.path(), "example1.json")]);
    let r: DecompositionResult = serde_json::from_value(report.results).unwrap();
    assert_eq!(multiplicities(&r), ["1", "1", "0", "1"]);
    assert_eq!(r.dimension, "3");
    assert_eq!(r.nonspecial, "guaranteed");
}

#[test]
fn ramification_example3() {
    let dir = examples();
    let report = json_report(&["ramification", &path(dir.path(), "example3.json")]);
    let r: RamificationResult = serde_json::from_value(report.results).unwrap();
    let direct: Vec<&str> = r.direct.iter().map(|c| c.multiplicity.as_str()).collect();
    assert_eq!(direct, ["0", "1", "1", "3", "4"]);
    assert_eq!(
        r.closed_form,
        vec![None, Some("1".into()), Some("1".into()), Some("7/2".into()), Some("7/2".into())]
    );
    assert!(r.closed_form_averaged);
    let (_, text, _) = equirr(&["ramification", &path(dir.path(), "example3.json")]);
    assert!(text.contains("direct: (0, 1, 1, 3, 4)"));
    assert!(text.contains("(-, 1, 1, 7/2, 7/2)"));
}

#[test]
fn example2_module() {
    let dir = examples();
    let report = json_report(&["ramification", &path(dir.path(), "example2.json")]);
    let r: RamificationResult = serde_json::from_value(report.results).unwrap();
    let direct: Vec<&str> = r.direct.iter().map(|c| c.multiplicity.as_str()).collect();
    assert_eq!(direct, ["0", "1", "1", "1", "1", "1", "1"]);
}

#[test]
fn output_is_deterministic() {
    let dir = examples();
    for cmd in ["chartab", "subgroups", "genus", "decompose", "ramification", "verify"] {
        for json in [false, true] {
            let mut args = vec![cmd, "--seed", "7"];
            let job = path(dir.path(), "example3.json");
            args.push(&job);
            if json {
                args.push("--json");
            }
            let a = equirr(&args);
            let b = equirr(&args);
            assert_eq!(a.0, 0, "{cmd}: {}", a.2);
            assert_eq!(a.1, b.1, "{cmd}");
        }
    }
    let other = examples();
    let a = equirr(&["borne", &path(dir.path(), "example1.json"), "--json"]);
    let b = equirr(&["borne", &path(other.path(), "example1.json"), "--json"]);
    assert_eq!(a.1, b.1);
}

#[test]
fn reports_round_trip() {
    let dir = examples();
    for (cmd, job) in [
        ("chartab", "example3.json"),
        ("decompose", "example3.json"),
        ("borne", "example1.json"),
        ("ramification", "example3.json"),
        ("verify", "example1_2d.json"),
        ("genus", "example1.json"),
        ("subgroups", "example1.json"),
        ("eqdeg", "example1.json"),
    ] {
        let report = json_report(&[cmd, &path(dir.path(), job)]);
        let again: Report = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(again, report);
        match cmd {
            "chartab" => {
                let r: ChartabResult = serde_json::from_value(report.results.clone()).unwrap();
                assert_eq!(serde_json::to_value(&r).unwrap(), report.results);
            }
            "decompose" | "borne" => {
                let r: DecompositionResult = serde_json::from_value(report.results.clone()).unwrap();
                assert_eq!(serde_json::to_value(&r).unwrap(), report.results);
            }
            "verify" => {
                let r: VerifyResult = serde_json::from_value(report.results.clone()).unwrap();
                assert!(r.passed);
                assert_eq!(r.realizability.verdict, "realizable");
            }
            _ => {}
        }
    }
}

#[test]
fn usage_errors_exit_1() {
    let dir = examples();
    let (code, _, err) = equirr(&["decompose", &path(dir.path(), "example1.json")]);
    assert_eq!(code, 1);
    assert!(err.contains("pullback"));
    assert_eq!(equirr(&["frobnicate", "x.json"]).0, 1);
    assert_eq!(equirr(&["chartab", "/nonexistent/job.json"]).0, 1);
    assert_eq!(equirr(&["chartab", &path(dir.path(), "example1.json"), "--schur", "2"]).0, 1);
    assert_eq!(equirr(&["--help"]).0, 0);
}

#[test]
fn validation_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let gcd = write_job(
        dir.path(),
        "gcd.json",
        r#"{"version": 1, "group": {"builtin": "cyclic:4"},
            "cover": {"genus_base": 0, "branch_points": [
                {"inertia": "a", "exponent": 2}, {"inertia": "a", "exponent": 3}]}}"#,
    );
    let (code, _, err) = equirr(&["genus", &gcd]);
    assert_eq!(code, 2);
    assert!(err.contains("cover.branch_points[0].exponent"), "{err}");
    assert!(err.contains("gcd(2, 4)"), "{err}");

    let unknown = write_job(
        dir.path(),
        "unknown.json",
        r#"{"version": 1, "group": {"builtin": "klein4"},
            "cover": {"genus_base": 0, "branch_points": [{"inertia": "c", "exponent": 1}]}}"#,
    );
    let (code, _, err) = equirr(&["genus", &unknown]);
    assert_eq!(code, 2);
    assert!(err.contains("cover.branch_points[0].inertia"), "{err}");

    let version = write_job(
        dir.path(),
        "version.json",
        r#"{"version": 2, "group": {"builtin": "klein4"},
            "cover": {"genus_base": 0, "branch_points": []}}"#,
    );
    let (code, _, err) = equirr(&["genus", &version]);
    assert_eq!(code, 2);
    assert!(err.contains("version"), "{err}");

    let schema = write_job(
        dir.path(),
        "schema.json",
        "{\"version\": 1, \"group\": {\"builtin\": \"klein4\"},\n \"cover\": {\"genus_base\": \"zero\", \"branch_points\": []}}",
    );
    let (code, _, err) = equirr(&["genus", &schema]);
    assert_eq!(code, 2);
    assert!(err.contains("cover.genus_base"), "{err}");

    let big = examples();
    let (code, _, _) = equirr(&["chartab", &path(big.path(), "example3.json"), "--max-order", "20"]);
    assert_eq!(code, 2);
}

#[test]
fn permutation_and_table_groups() {
    let dir = TempDir::new().unwrap();
    let s3 = write_job(
        dir.path(),
        "s3.json",
        r#"{"version": 1,
            "group": {"generators": [{"name": "r", "cycles": "(0 1 2)"}, {"name": "f", "cycles": "(0 1)"}]},
            "cover": {"genus_base": 0, "branch_points": [
                {"inertia": "f", "exponent": 1}, {"inertia": "f*r", "exponent": 1},
                {"inertia": "r", "exponent": 1}]},
            "divisor": {"pullback": {"degree_base": 1}}}"#,
    );
    let report = json_report(&["decompose", &s3]);
    let r: DecompositionResult = serde_json::from_value(report.results).unwrap();
    assert_eq!(r.genus_top, 0);
    assert_eq!(r.dimension, "7");
    assert!(r.genuine);

    let v4 = write_job(
        dir.path(),
        "v4.json",
        r#"{"version": 1,
            "group": {"table": {"rows": [[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]],
                                "generators": {"a": 1, "b": 2}}},
            "cover": {"genus_base": 0, "branch_points": [
                {"inertia": "a", "exponent": 1}, {"inertia": "a", "exponent": 1},
                {"inertia": "a", "exponent": 1}, {"inertia": "b", "exponent": 1},
                {"inertia": "a*b", "exponent": 1}]},
            "divisor": {"pullback": {"degree_base": 2}}}"#,
    );
    let report = json_report(&["decompose", &v4]);
    let r: DecompositionResult = serde_json::from_value(report.results).unwrap();
    assert_eq!(multiplicities(&r), ["3", "2", "1", "1"]);
}

#[test]
fn supplied_character_table() {
    let dir = TempDir::new().unwrap();
    let base = r#""cover": {"genus_base": 0, "branch_points": [
                {"inertia": "s", "exponent": 1}, {"inertia": "s", "exponent": 2},
                {"inertia": "t", "exponent": -1}]}"#;
    // Rows in an arbitrary order; columns follow the class order e, s, t, s^2, t^3.
    let table = r#"[
        [3, 0, "z7 + z7^2 + z7^4", 0, "-1 - z7 - z7^2 - z7^4"],
        [1, 1, 1, 1, 1],
        [1, "-1 - z3", 1, "z3", 1],
        [3, 0, "-1 - z7 - z7^2 - z7^4", 0, "z7 + z7^2 + z7^4"],
        [1, {"conductor": 3, "coeffs": {"1": "1"}}, 1, "z3^2", 1]]"#;
    let good = write_job(
        dir.path(),
        "good.json",
        &format!(r#"{{"version": 1, "group": {{"builtin": "g21"}}, "character_table": {table}, {base}}}"#),
    );
    let report = json_report(&["ramification", &good]);
    let r: RamificationResult = serde_json::from_value(report.results).unwrap();
    let direct: Vec<&str> = r.direct.iter().map(|c| c.multiplicity.as_str()).collect();
    assert_eq!(direct, ["0", "1", "1", "3", "4"]);
    let chartab = json_report(&["chartab", &good]);
    assert_eq!(chartab.results["source"], "supplied");

    let bad = write_job(
        dir.path(),
        "bad.json",
        &format!(
            r#"{{"version": 1, "group": {{"builtin": "g21"}}, "character_table": {}, {base}}}"#,
            table.replace("\"z3^2\"", "\"z3\"")
        ),
    );
    let (code, _, err) = equirr(&["chartab", &bad]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn schur_and_nonspecial_flags() {
    let dir = TempDir::new().unwrap();
    let q8 = write_job(
        dir.path(),
        "q8.json",
        r#"{"version": 1, "group": {"builtin": "quaternion"},
            "cover": {"genus_base": 0, "branch_points": [
                {"inertia": "i", "exponent": 1}, {"inertia": "j", "exponent": 1},
                {"inertia": "i*j", "exponent": 1}]},
            "divisor": {"pullback": {"degree_base": 1}}}"#,
    );
    let plain = json_report(&["chartab", &q8]);
    let r: ChartabResult = serde_json::from_value(plain.results).unwrap();
    assert!(r.orbits.iter().all(|o| o.schur_index == 1));
    let last = r.orbits.len().to_string();
    let flagged = json_report(&["chartab", &q8, "--schur", &format!("{last}=2")]);
    let r: ChartabResult = serde_json::from_value(flagged.results).unwrap();
    assert_eq!(r.orbits.last().unwrap().schur_index, 2);
    assert_eq!(r.orbits.last().unwrap().dimension, 4);
    assert_eq!(equirr(&["chartab", &q8, "--schur", "9=2"]).0, 2);

    let neg = write_job(
        dir.path(),
        "neg.json",
        r#"{"version": 1, "group": {"builtin": "klein4"},
            "cover": {"genus_base": 0, "branch_points": [
                {"inertia": "a", "exponent": 1}, {"inertia": "a", "exponent": 1},
                {"inertia": "a", "exponent": 1}, {"inertia": "b", "exponent": 1},
                {"inertia": "a*b", "exponent": 1}]},
            "divisor": {"orbits": [{"stabilizer": "trivial", "coefficient": 1}]}}"#,
    );
    let r: DecompositionResult =
        serde_json::from_value(json_report(&["borne", &neg]).results).unwrap();
    assert_eq!(r.nonspecial, "guaranteed");
    let neg_small = neg.replace("neg.json", "neg_small.json");
    std::fs::write(
        &neg_small,
        std::fs::read_to_string(&neg).unwrap().replace("\"coefficient\": 1", "\"coefficient\": 0"),
    )
    .unwrap();
    let plain = json_report(&["borne", &neg_small]);
    assert_eq!(plain.results["nonspecial"], "not-guaranteed");
    let assumed = json_report(&["borne", &neg_small, "--assume-nonspecial"]);
    assert_eq!(assumed.results["nonspecial"], "assumed");
    assert_ne!(plain.inputs_digest, assumed.inputs_digest);
}
