use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use finite_type_lindelof::report::{from_json, to_json};
use finite_type_lindelof::ScenarioVerdict;

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(format!("{name}.scn"))
}

fn golden(name: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"));
    fs::read_to_string(p).unwrap()
}

fn lindelof(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lindelof"))
        .args(args)
        .output()
        .unwrap()
}

fn run_into(dir: &Path, names: &[&str], extra: &[&str]) -> Output {
    let paths: Vec<String> = names
        .iter()
        .map(|n| scenario(n).display().to_string())
        .collect();
    let mut args = vec!["run", "--out", dir.to_str().unwrap()];
    args.extend(paths.iter().map(String::as_str));
    args.extend(extra);
    lindelof(&args)
}

#[test]
fn inner_scenario_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_into(dir.path(), &["egg2_inner"], &[]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report =
        from_json(&fs::read_to_string(dir.path().join("egg2_inner/report.json")).unwrap()).unwrap();
    assert_eq!(report.verdict, ScenarioVerdict::Pass);
    assert_eq!(report.curves.len(), 7);
    for name in ["radial", "b_1_5_4_const", "b_3_4_spiral"] {
        assert!(dir
            .path()
            .join(format!("egg2_inner/trace_{name}.csv"))
            .exists());
    }
    assert!(dir.path().join("egg2_inner/run.log").exists());
}

#[test]
fn rejected_scenarios_match_golden_reports() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["egg2_spiral", "egg2_tangential"] {
        let out = run_into(dir.path(), &[name], &[]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        let written = fs::read_to_string(dir.path().join(name).join("report.json")).unwrap();
        assert_eq!(written, golden(name), "{name}");
    }
}

#[test]
fn reports_are_byte_identical_across_runs_and_job_counts() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let names = ["egg2_coord", "egg2_curves", "ball_tilted"];
    assert_eq!(
        run_into(a.path(), &names, &["--jobs", "1"]).status.code(),
        Some(0)
    );
    assert_eq!(
        run_into(b.path(), &names, &["--jobs", "3"]).status.code(),
        Some(0)
    );
    for name in names {
        for entry in fs::read_dir(a.path().join(name)).unwrap() {
            let file = entry.unwrap().file_name();
            if file == "run.log" {
                continue;
            }
            let x = fs::read(a.path().join(name).join(&file)).unwrap();
            let y = fs::read(b.path().join(name).join(&file)).unwrap();
            assert_eq!(x, y, "{name}/{}", file.to_string_lossy());
        }
    }
}

#[test]
fn report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    run_into(dir.path(), &["egg2_curves", "egg2_spiral"], &[]);
    for name in ["egg2_curves", "egg2_spiral"] {
        let text = fs::read_to_string(dir.path().join(name).join("report.json")).unwrap();
        let parsed = from_json(&text).unwrap();
        assert_eq!(to_json(&parsed), text);
    }
}

#[test]
fn mixed_runs_report_the_most_severe_code() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        run_into(dir.path(), &["egg2_inner", "egg2_spiral"], &[])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn missing_file_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = lindelof(&[
        "run",
        "--out",
        dir.path().to_str().unwrap(),
        "/nonexistent/x.scn",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/x.scn"));
}

#[test]
fn parse_errors_name_line_and_field() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.scn");
    fs::write(
        &p,
        "id = bad\ndomain = egg 2\nzeta = 1 0 0\nfunction = INNER\n",
    )
    .unwrap();
    let out = lindelof(&[
        "run",
        "--out",
        dir.path().to_str().unwrap(),
        p.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3") && err.contains("zeta"), "{err}");
}

#[test]
fn loosened_limit_tolerance_is_applied() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_into(
        dir.path(),
        &["egg2_coord"],
        &["--limit-tol", "1e-3", "--schedule", "4:24:4"],
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn classify_table() {
    let out = lindelof(&["classify", scenario("egg2_curves").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let header = text.lines().nth(1).unwrap();
    for col in ["special", "nontangential", "restricted"] {
        assert!(header.contains(col));
    }
    let row = |name: &str| {
        text.lines()
            .find(|l| l.starts_with(name))
            .unwrap()
            .to_string()
    };
    assert!(row("b=2/4 spiral").contains("Yes"));
    assert!(row("mb=a const").contains("No"));
    assert!(row("drifting").contains("NotCaptured"));
}

#[test]
fn classify_empty_curve_list() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("empty.scn");
    fs::write(
        &p,
        "id = empty\ndomain = egg 2\nzeta = 1 0 0 0\ntype = 4\nfunction = INNER\n",
    )
    .unwrap();
    let out = lindelof(&["classify", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 2);
}

#[test]
fn check_type_detects_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("wrong.scn");
    let text = fs::read_to_string(scenario("egg2_inner"))
        .unwrap()
        .replace("type = 4", "type = 2");
    fs::write(&p, text).unwrap();
    assert_eq!(
        lindelof(&["classify", p.to_str().unwrap()]).status.code(),
        Some(0)
    );
    assert_eq!(
        lindelof(&["classify", "--check-type", p.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    let ok = scenario("egg3_inner");
    assert_eq!(
        lindelof(&["classify", "--check-type", ok.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn type_subcommand() {
    let out = lindelof(&["type", "--domain", "egg 3", "--zeta", "1,0,0,0"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "6");
    let out = lindelof(&["type", "--domain", "ball", "--zeta", "0.6,0,0,-0.8"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "2");
    let out = lindelof(&["type", "--domain", "egg 2", "--zeta", "0,0,0,0"]);
    assert_eq!(out.status.code(), Some(2));
}
