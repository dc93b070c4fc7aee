use std::path::Path;
use std::process::Command;

use repgrid::cli::{run, EXIT_IO, EXIT_OK, EXIT_VALIDATION};

fn repgrid(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("repgrid").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = repgrid(args);
    assert_eq!(code, EXIT_OK, "{args:?} failed: {err}");
    out
}

const ELEMENTS: [&str; 5] = ["FREESTYLE", "HIGH", "MEDIUM", "LOW", "SCRIPTED"];

fn write_survey(dir: &Path, name: &str, value: &str) -> String {
    let mut text = String::from("construct_id,FREESTYLE,HIGH,MEDIUM,LOW,SCRIPTED\n");
    for c in 1..=17 {
        text.push_str(&format!("C{c},{value},{value},{value},{value},{value}\n"));
    }
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn offline_workshop() {
    let dir = tempfile::tempdir().unwrap();
    let session = dir.path().join("s.json");
    let s = session.to_str().unwrap();

    assert!(ok(&["new", s]).contains("5 elements, 17 constructs"));
    let (code, _, err) = repgrid(&["new", s]);
    assert_eq!(code, EXIT_VALIDATION);
    assert!(err.contains("already exists"));

    let (code, _, err) = repgrid(&["import-survey", s, "missing.csv", "--respondent", "R1"]);
    assert_eq!(code, EXIT_IO, "{err}");

    let survey = write_survey(dir.path(), "r.csv", "2");
    let (code, _, err) = repgrid(&["import-survey", s, &survey, "--respondent", "R1"]);
    assert_eq!(code, EXIT_VALIDATION);
    assert!(err.contains("phase"));

    ok(&["phase", s, "SURVEY"]);
    let template = ok(&["survey-template", s]);
    assert!(template.starts_with("construct_id,FREESTYLE,HIGH,MEDIUM,LOW,SCRIPTED\nC1,,,,,\n"));

    for r in 1..=5 {
        let out = ok(&["import-survey", s, &survey, "--respondent", &format!("R{r}")]);
        assert!(out.contains(&format!("{r} respondents")));
    }
    let agreement = ok(&["agreement", s]);
    assert!(agreement.contains("FULL 0/5/0"));
    assert!(agreement.contains("respondents: 5  FULL: 85"));

    ok(&["phase", s, "consensus"]);
    for c in 1..=17 {
        for e in ELEMENTS {
            ok(&["consensus", s, &format!("C{c}"), e, "2"]);
        }
    }
    let (code, _, err) = repgrid(&["consensus", s, "C1", "FREESTYLE", "5"]);
    assert_eq!(code, EXIT_VALIDATION);
    assert!(err.contains("invalid rating value 5"));

    ok(&["phase", s, "PRIORITIZATION"]);
    let (code, _, err) = repgrid(&["priorities", s, "C1=50", "C2=49"]);
    assert_eq!(code, EXIT_VALIDATION);
    assert!(err.contains("sum is 99"));
    ok(&["priorities", s, "C11=20", "C12=20", "C16=20", "C1=10,C9=10", "C14=10", "C15=10"]);

    let rec = ok(&["recommend", s, "--top", "0"]);
    let pct_lines: Vec<&str> = rec.lines().filter(|l| l.contains('%')).collect();
    assert_eq!(pct_lines.len(), 5);
    assert!(pct_lines.iter().all(|l| l.contains("20.0%")), "{rec}");

    let rec = ok(&["recommend", s, "--current", "FREESTYLE=5,HIGH=15,MEDIUM=10,LOW=20,SCRIPTED=50"]);
    assert!(rec.contains("recommended 40.0%, current 20.0%, +20.0 points"), "{rec}");
    assert!(rec.contains("top contributions:"));

    ok(&["current", s, "FREESTYLE=10", "HIGH=10", "MEDIUM=10", "LOW=10", "SCRIPTED=60"]);
    let rec = ok(&["recommend", s, "--exploratory-levels", "FREESTYLE,HIGH,MEDIUM"]);
    assert!(rec.contains("recommended 60.0%, current 30.0%, +30.0 points"), "{rec}");

    let csv = ok(&["export", s, "--format", "csv"]);
    assert!(csv.ends_with("PERCENT,100.0,20.0,20.0,20.0,20.0,20.0\n"));
    let out_path = dir.path().join("report.csv");
    ok(&["export", s, "--format", "csv", "--output", out_path.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(out_path).unwrap(), csv);
    let json: serde_json::Value = serde_json::from_str(&ok(&["export", s, "--format", "json"])).unwrap();
    assert_eq!(json["recommendation"]["total_score"], 1000);
}

#[test]
fn document_problems_exit_with_io_code() {
    let dir = tempfile::tempdir().unwrap();
    let session = dir.path().join("s.json");
    std::fs::write(&session, "{\"schema_version\": 1, \"elements\": [").unwrap();
    let (code, _, err) = repgrid(&["agreement", session.to_str().unwrap()]);
    assert_eq!(code, EXIT_IO);
    assert!(err.contains("parse error at line 1"));

    std::fs::write(&session, "{\"schema_version\": 7}").unwrap();
    let (code, _, err) = repgrid(&["agreement", session.to_str().unwrap()]);
    assert_eq!(code, EXIT_IO);
    assert!(err.contains("unsupported schema_version 7"));
}

#[test]
fn custom_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let catalog = dir.path().join("catalog.json");
    std::fs::write(
        &catalog,
        r#"{"constructs": [{"id": "SEC", "similarity_pole": "Finds security issues",
            "contrast_pole": "Misses security issues", "description": "", "builtin": false}]}"#,
    )
    .unwrap();
    let session = dir.path().join("s.json");
    let out = ok(&["new", session.to_str().unwrap(), "--catalog", catalog.to_str().unwrap()]);
    assert!(out.contains("5 elements, 1 constructs"));
}

#[test]
fn binary_exit_codes_and_help() {
    let bin = env!("CARGO_BIN_EXE_repgrid");
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert!(help.status.success());
    let text = String::from_utf8(help.stdout).unwrap();
    for cmd in ["new", "import-survey", "agreement", "consensus", "priorities", "recommend", "export", "serve"] {
        assert!(text.contains(cmd), "help lacks {cmd}");
    }

    let dir = tempfile::tempdir().unwrap();
    let session = dir.path().join("s.json");
    let s = session.to_str().unwrap();
    assert!(Command::new(bin).args(["new", s]).status().unwrap().success());
    Command::new(bin).args(["phase", s, "PRIORITIZATION"]).status().unwrap();
    let bad = Command::new(bin).args(["priorities", s, "C1=50", "C2=49"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8(bad.stderr).unwrap().contains("sum is 99"));
    let missing = Command::new(bin).args(["agreement", "/nonexistent/x.json"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
}
