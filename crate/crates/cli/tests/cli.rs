use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use blackswan_core::decision::CompletenessReport;
use blackswan_core::kernel::corpus::GOLDEN;
use blackswan_core::kernel::{check_proof, CheckReport, Theory};
use blackswan_core::models::{check_entailment, EntailmentReport, Mode, ScanLimits};
use blackswan_core::{parse_formula, Envelope};
use serde_json::Value;

fn universe(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/universes")
        .join(name)
}

fn blackswan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blackswan"))
        .args(args)
        .env_remove("BLACKSWAN_MAX_N_ARBITRARY")
        .env_remove("BLACKSWAN_MAX_N_STRICT")
        .env_remove("BLACKSWAN_MAX_EVENTS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn golden_proof_is_accepted() {
    let o = blackswan(&["check", "blackswan-thm-73"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("73/73 lines verified"));
}

#[test]
fn trace_shows_justifications_and_instantiations() {
    let o = blackswan(&["check", "blackswan-thm-73", "--trace"]);
    let text = stdout(&o);
    assert!(text.contains("   1. ok   FO12"));
    assert!(text.contains("with A := "));
    assert!(text.contains("  73. ok   MP"));
}

#[test]
fn empty_file_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.proof");
    std::fs::write(&path, "").unwrap();
    let o = blackswan(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("error:"));
}

#[test]
fn mutated_proof_is_rejected_with_the_failing_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mutant.proof");
    let text = GOLDEN.text.replace("; MP 2 1\n", "; MP 1 2\n");
    assert_ne!(text, GOLDEN.text);
    std::fs::write(&path, text).unwrap();
    let o = blackswan(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("line 3: "), "{}", stdout(&o));
    assert!(stdout(&o).contains("REJECTED"));
}

#[test]
fn missing_file_is_an_input_error() {
    let o = blackswan(&["check", "/nonexistent/proof"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = blackswan(&["check", "blackswan-thm-73", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let env: Envelope<CheckReport> =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let expected = check_proof(&GOLDEN.script(), &Theory::builtin("blackswan").unwrap()).unwrap();
    assert_eq!(env.schema_version, blackswan_core::SCHEMA_VERSION);
    assert_eq!(env.kind, "check");
    assert!(env.ok);
    assert_eq!(env.report, expected);
}

#[test]
fn entailment_of_the_theorem() {
    let o = blackswan(&[
        "models",
        "--premises",
        "Ax1,Ax2",
        "--conclusion",
        "Thm",
        "--max-n",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("33032 models scanned"));
}

#[test]
fn no_premises_gives_a_countermodel() {
    let o = blackswan(&["models", "--conclusion", "Thm", "--max-n", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("  n=1; lt={}; occ={}; img={}"));
}

#[test]
fn murphy_and_open_universe_entail_ax2() {
    let o = blackswan(&[
        "models",
        "--premises",
        "Murphy,OpenUniverse",
        "--conclusion",
        "Ax2",
        "--max-n",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn models_json_round_trips() {
    let o = blackswan(&[
        "--format",
        "json",
        "models",
        "--premises",
        "Ax1",
        "--conclusion",
        "Thm",
        "--max-n",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let env: Envelope<EntailmentReport> = serde_json::from_str(&stdout(&o)).unwrap();
    let expected = check_entailment(
        &[parse_formula(blackswan_core::kernel::AX1).unwrap()],
        &parse_formula(blackswan_core::kernel::THM).unwrap(),
        2,
        Mode::Arbitrary,
        &ScanLimits::default(),
    )
    .unwrap();
    assert!(!env.ok);
    assert_eq!(env.report, expected);
}

#[test]
fn models_errors() {
    assert_eq!(
        blackswan(&["models", "--premises", "Nope", "--conclusion", "Thm"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        blackswan(&["models", "--conclusion", "Thm", "--max-n", "5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        blackswan(&["models", "--conclusion", "Thm", "--mode", "sideways"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn strict_mode_finds_no_models_of_the_axioms() {
    let o = blackswan(&[
        "models",
        "--premises",
        "Ax1,Ax2",
        "--conclusion",
        "Thm",
        "--mode",
        "strict",
        "--max-n",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(", 0 satisfy the premises, 0 counterexamples\nENTAILED"));
}

#[test]
fn environment_overrides_caps() {
    let o = Command::new(env!("CARGO_BIN_EXE_blackswan"))
        .args(["models", "--conclusion", "Thm", "--max-n", "3"])
        .env("BLACKSWAN_MAX_N_ARBITRARY", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_blackswan"))
        .args(["corpus", "list"])
        .env("BLACKSWAN_MAX_EVENTS", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("BLACKSWAN_MAX_EVENTS"));
}

#[test]
fn black_swan_universe_is_incomplete_with_a_witness() {
    let path = universe("blackswan.universe");
    let o = blackswan(&[
        "decision",
        path.to_str().unwrap(),
        "--property",
        "complete-wrt-occurring",
        "--expect",
        "incomplete",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("witness: {swan1} and {swan2} both give DIVERGE / DIVERGE"));
    assert!(text.contains("INCOMPLETE"));

    let o = blackswan(&[
        "decision",
        path.to_str().unwrap(),
        "--search",
        "--expect",
        "incomplete",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("complete maps: 0"));

    let o = blackswan(&["decision", path.to_str().unwrap(), "--expect", "complete"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn imaginable_universe_admits_complete_maps() {
    let path = universe("all-imaginable.universe");
    let o = blackswan(&[
        "decision",
        path.to_str().unwrap(),
        "--property",
        "complete",
        "--search",
        "--expect",
        "complete",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("COMPLETE MAP EXISTS"));
}

#[test]
fn decision_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("decision.json");
    let path = universe("blackswan.universe");
    let o = blackswan(&[
        "decision",
        path.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["kind"], "decision");
    assert_eq!(v["report"]["verdict"], "incomplete");
    let map: CompletenessReport = serde_json::from_value(v["report"]["map"].clone()).unwrap();
    assert_eq!(map.witness.unwrap().y, vec!["swan1".to_string()]);
}

#[test]
fn malformed_universe_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.universe");
    let text = std::fs::read_to_string(universe("blackswan.universe")).unwrap();
    std::fs::write(&path, text.replace("gamma hedge swan2 = loss\n", "")).unwrap();
    let o = blackswan(&["decision", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("gamma has no entry"));

    std::fs::write(&path, "event a occ=maybe img=T\n").unwrap();
    assert_eq!(
        blackswan(&["decision", path.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        blackswan(&[
            "decision",
            universe("blackswan.universe").to_str().unwrap(),
            "--max-actions",
            "1"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn corpus_commands() {
    let o = blackswan(&["corpus", "list"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("blackswan-thm-73"));
    assert!(stdout(&o).contains("murphy-implies-ax2"));

    let o = blackswan(&["corpus", "check"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("ACCEPTED").count(), 2);

    let o = blackswan(&["corpus", "show", "murphy-implies-ax2"]);
    assert_eq!(
        stdout(&o),
        blackswan_core::kernel::corpus::MURPHY_IMPLIES_AX2.text
    );
    assert_eq!(
        blackswan(&["corpus", "show", "nope"]).status.code(),
        Some(2)
    );
}
