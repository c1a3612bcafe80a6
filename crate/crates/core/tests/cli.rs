//! Integration tests that drive the compiled binary end to end: exit codes,
//! report formats, the shipped scenario corpus, and table overrides.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fmcalc"))
        .args(args)
        .output()
        .expect("the binary should launch")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout should be UTF-8")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr should be UTF-8")
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

/// A scratch file that cleans up after itself.
struct TempFile(PathBuf);

impl TempFile {
    fn new(label: &str, contents: &str) -> TempFile {
        let path = std::env::temp_dir().join(format!(
            "fmcalc-{label}-{}-{}",
            std::process::id(),
            std::thread::current()
                .name()
                .unwrap_or("t")
                .replace("::", "-")
        ));
        std::fs::write(&path, contents).expect("scratch file should be writable");
        TempFile(path)
    }

    fn path(&self) -> &str {
        self.0.to_str().expect("scratch path should be UTF-8")
    }
}

impl Drop for TempFile {
    fn drop(&mut self) {
        let _ = std::fs::remove_file(&self.0);
    }
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    let first = run(&["compose", "--d", "2", "--f", "3", "--json"]);
    let second = run(&["compose", "--d", "2", "--f", "3", "--json"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn text_report_carries_inputs_outputs_and_note() {
    let out = run(&["rr", "--genus", "1", "--degree", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.starts_with("rr:"), "got {text:?}");
    assert!(text.contains("h0 = 5"));
    assert!(text.contains("note:"));
}

#[test]
fn json_report_exposes_typed_outputs() {
    let out = run(&["compose", "--d", "2", "--f", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("report should parse as JSON");
    assert_eq!(report["command"], "compose");
    assert_eq!(report["outputs"]["rank"], 6);
    assert_eq!(report["outputs"]["degree"], 5);
    assert_eq!(report["outputs"]["weight"], 2);
    assert_eq!(report["outputs"]["c1_cubed"], 30);
    assert_eq!(report["inputs"]["d"], "2");
}

#[test]
fn math_refusals_exit_one() {
    let out = run(&["rr", "--genus", "2", "--degree", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).starts_with("error:"));

    let out = run(&["pushforward", "--degree", "-2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("dualize"));
}

#[test]
fn usage_problems_exit_two_and_name_the_problem() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["compose", "--d", "2"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["rr", "--genus", "1", "--degree", "five"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["equiv", "--order", "6", "--source", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("target"));
}

#[test]
fn shipped_corpus_passes() {
    let dir = corpus_dir();
    let mut seen = 0usize;
    for name in [
        "torsor_equivalence.scn",
        "chow_identities.scn",
        "moduli_invariants.scn",
        "shadow_weights.scn",
    ] {
        let path = dir.join(name);
        let path = path.to_str().expect("corpus path should be UTF-8");
        let out = run(&["scenario", "run", path]);
        let text = stdout_of(&out);
        assert_eq!(out.status.code(), Some(0), "{name} failed:\n{text}");
        assert!(
            text.contains("0 failed, 0 warnings"),
            "{name} reported failures or warnings:\n{text}"
        );
        seen += 1;
    }
    assert_eq!(seen, 4);
}

#[test]
fn scenario_mismatch_exits_one_with_a_diff() {
    let file = TempFile::new(
        "mismatch",
        "[wrong-degree]\nop = rr\ngenus = 1\ndegree = 5\nexpect.h0 = 6\n",
    );
    let out = run(&["scenario", "run", file.path()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_of(&out);
    assert!(text.contains("FAIL wrong-degree"), "got {text:?}");
    assert!(text.contains("got 5, expected 6"), "got {text:?}");
}

#[test]
fn scenario_with_unknown_key_exits_two_naming_it() {
    let file = TempFile::new(
        "unknown-key",
        "[mystery]\nop = rr\ngenus = 1\ndegree = 5\nmystery = 1\n",
    );
    let out = run(&["scenario", "run", file.path()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("mystery"));
}

#[test]
fn scenario_parse_error_reports_the_line() {
    let file = TempFile::new(
        "parse-error",
        "[ok]\nop = rr\ngenus = 1\ndegree = 5\nnonsense\n",
    );
    let out = run(&["scenario", "run", file.path()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("line 5"));
}

#[test]
fn empty_scenario_file_exits_zero() {
    let file = TempFile::new("empty", "");
    let out = run(&["scenario", "run", file.path()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("0 passed"));
}

#[test]
fn missing_files_exit_two() {
    let out = run(&["scenario", "run", "/nonexistent/corpus.scn"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&[
        "rr",
        "--genus",
        "1",
        "--degree",
        "5",
        "--table",
        "/nonexistent/t.tbl",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_override_rescales_intersections() {
    let table = TempFile::new(
        "table",
        "graph_point_source = 2\ngraph_point_target = 2\ngraph_self = 0\npoint_self = 0\n",
    );
    let base = [
        "chow",
        "--space",
        "pair",
        "--divisor",
        "G01 + 2*P1",
        "--power",
        "2",
        "--json",
    ];
    let standard = run(&base);
    assert_eq!(standard.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&standard.stdout).unwrap();
    assert_eq!(report["outputs"]["degree"], "4");

    let mut with_table: Vec<&str> = base.to_vec();
    with_table.extend(["--table", table.path()]);
    let doubled = run(&with_table);
    assert_eq!(doubled.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&doubled.stdout).unwrap();
    assert_eq!(report["outputs"]["degree"], "8");
}

#[test]
fn malformed_table_exits_two() {
    let table = TempFile::new("bad-table", "graph_point_source = banana\n");
    let out = run(&[
        "rr",
        "--genus",
        "1",
        "--degree",
        "5",
        "--table",
        table.path(),
    ]);
    assert_eq!(out.status.code(), Some(2));

    let table = TempFile::new("alien-table", "flux_capacitance = 1\n");
    let out = run(&[
        "rr",
        "--genus",
        "1",
        "--degree",
        "5",
        "--table",
        table.path(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("flux_capacitance"));
}

/// Every JSON report can be replayed as a scenario whose expectations all
/// hold: inputs become parameters, outputs become `expect.` lines.
#[test]
fn reports_replay_as_passing_scenarios() {
    let commands: [&[&str]; 4] = [
        &["pushforward", "--degree", "4"],
        &["compose", "--d", "2", "--f", "3"],
        &[
            "equiv",
            "--order",
            "5",
            "--source",
            "1",
            "--target",
            "2",
            "--aut-list",
            "1,4",
        ],
        &[
            "shadow", "--degree", "3", "--weight", "1", "--brauer", "2/6",
        ],
    ];
    let mut scenario = String::new();
    for (i, command) in commands.iter().enumerate() {
        let mut args = command.to_vec();
        args.push("--json");
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{command:?} failed");
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();

        scenario.push_str(&format!("[replay-{i}]\n"));
        scenario.push_str(&format!(
            "op = {}\n",
            report["command"].as_str().expect("command is a string")
        ));
        for (key, value) in report["inputs"].as_object().expect("inputs are a map") {
            scenario.push_str(&format!("{key} = {}\n", value.as_str().unwrap()));
        }
        for (key, value) in report["outputs"].as_object().expect("outputs are a map") {
            let rendered = match value {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            scenario.push_str(&format!("expect.{key} = {rendered}\n"));
        }
        scenario.push('\n');
    }
    let file = TempFile::new("replay", &scenario);
    let out = run(&["scenario", "run", file.path()]);
    let text = stdout_of(&out);
    assert_eq!(out.status.code(), Some(0), "replay failed:\n{text}");
    assert!(text.contains("4 passed, 0 failed"), "got {text:?}");
}

#[test]
fn help_lists_every_subcommand() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    for sub in [
        "equiv",
        "pic",
        "pushforward",
        "compose",
        "chow",
        "rr",
        "simple-check",
        "shadow",
        "scenario",
    ] {
        assert!(text.contains(sub), "help does not mention {sub}");
    }
}
