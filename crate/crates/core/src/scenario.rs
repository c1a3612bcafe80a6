//! Line-oriented scenario files: named batches of operations with golden
//! expectations.
//!
//! ```text
//! # comment
//! [name-of-the-scenario]
//! op = pic
//! order = 6
//! class = 1
//! degree = 2
//! expect.value = 2
//! ```
//!
//! Every `key = value` line feeds the operation named by `op`; `expect.key`
//! lines assert on the report outputs (string equality on the canonical
//! rendering), and `expect.error` asserts that the operation fails with a
//! message containing the given text. An expectation naming an output that
//! does not exist is reported as a warning, not a failure; a mismatched
//! value is a failure.

use crate::chow::IntersectionTable;
use crate::cli::{execute_op, OpError};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScenarioError {
    #[error("scenario file, line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("scenario [{scenario}]: {message}")]
    Usage { scenario: String, message: String },
}

/// One named block of a scenario file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub name: String,
    pub line: usize,
    pub params: BTreeMap<String, String>,
    pub expects: BTreeMap<String, String>,
}

pub fn parse(text: &str) -> Result<Vec<Scenario>, ScenarioError> {
    let mut scenarios: Vec<Scenario> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix('[') {
            let name = rest.strip_suffix(']').ok_or(ScenarioError::Parse {
                line,
                reason: "unterminated scenario header".into(),
            })?;
            if name.trim().is_empty() || name.contains('[') || name.contains(']') {
                return Err(ScenarioError::Parse {
                    line,
                    reason: "a scenario header needs a plain nonempty name".into(),
                });
            }
            scenarios.push(Scenario {
                name: name.trim().to_string(),
                line,
                params: BTreeMap::new(),
                expects: BTreeMap::new(),
            });
            continue;
        }
        let (key, value) = content.split_once('=').ok_or(ScenarioError::Parse {
            line,
            reason: format!("expected `key = value`, got {content:?}"),
        })?;
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() || value.is_empty() {
            return Err(ScenarioError::Parse {
                line,
                reason: "keys and values must be nonempty".into(),
            });
        }
        let current = scenarios.last_mut().ok_or(ScenarioError::Parse {
            line,
            reason: "assignments must follow a [scenario] header".into(),
        })?;
        let replaced = if let Some(expect_key) = key.strip_prefix("expect.") {
            current
                .expects
                .insert(expect_key.trim().to_string(), value.to_string())
        } else {
            current.params.insert(key.to_string(), value.to_string())
        };
        if replaced.is_some() {
            return Err(ScenarioError::Parse {
                line,
                reason: format!("duplicate key `{key}` in scenario [{}]", current.name),
            });
        }
    }
    Ok(scenarios)
}

/// Result of running a scenario file: per-scenario report lines plus
/// aggregate counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub passed: usize,
    pub failed: usize,
    pub warnings: usize,
    pub lines: Vec<String>,
}

impl RunOutcome {
    pub fn summary(&self) -> String {
        format!(
            "{} passed, {} failed, {} warnings",
            self.passed, self.failed, self.warnings
        )
    }
}

pub fn run(text: &str, table: &IntersectionTable) -> Result<RunOutcome, ScenarioError> {
    let scenarios = parse(text)?;
    let mut outcome = RunOutcome {
        passed: 0,
        failed: 0,
        warnings: 0,
        lines: Vec::new(),
    };
    for scenario in &scenarios {
        let mut params = scenario.params.clone();
        let op = params.remove("op").ok_or(ScenarioError::Usage {
            scenario: scenario.name.clone(),
            message: "missing the `op` key".into(),
        })?;
        let mut mismatches: Vec<String> = Vec::new();
        match execute_op(&op, &params, table) {
            Ok(report) => {
                for (key, want) in &scenario.expects {
                    if key == "error" {
                        mismatches.push(format!("error: expected a failure containing {want:?}"));
                        continue;
                    }
                    match report.output(key) {
                        None => {
                            outcome.warnings += 1;
                            outcome
                                .lines
                                .push(format!("warn {}: no output named `{key}`", scenario.name));
                        }
                        Some(value) => {
                            let got = value.to_string();
                            if got != *want {
                                mismatches.push(format!("{key}: got {got}, expected {want}"));
                            }
                        }
                    }
                }
            }
            Err(OpError::Usage(message)) => {
                return Err(ScenarioError::Usage {
                    scenario: scenario.name.clone(),
                    message,
                });
            }
            Err(OpError::Math(message)) => match scenario.expects.get("error") {
                Some(want) if message.contains(want.as_str()) => {}
                Some(want) => mismatches.push(format!(
                    "error: got {message:?}, expected it to contain {want:?}"
                )),
                None => mismatches.push(format!("operation failed: {message}")),
            },
        }
        if mismatches.is_empty() {
            outcome.passed += 1;
            outcome.lines.push(format!("ok {}", scenario.name));
        } else {
            outcome.failed += 1;
            for m in &mismatches {
                outcome.lines.push(format!("FAIL {}: {m}", scenario.name));
            }
        }
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_headers_params_and_expectations() {
        let text = "\n# leading comment\n[first]\nop = pic\norder = 6 # residues\nexpect.value = 2\n\n[second]\nop = rr\n";
        let parsed = parse(text).unwrap();
        assert_eq!(parsed.len(), 2);
        assert_eq!(parsed[0].name, "first");
        assert_eq!(parsed[0].line, 3);
        assert_eq!(parsed[0].params["op"], "pic");
        assert_eq!(parsed[0].params["order"], "6");
        assert_eq!(parsed[0].expects["value"], "2");
        assert_eq!(parsed[1].name, "second");
    }

    #[test]
    fn empty_input_is_an_empty_run() {
        assert_eq!(parse("").unwrap(), Vec::new());
        assert_eq!(parse("# nothing here\n\n").unwrap(), Vec::new());
        let outcome = run("", &IntersectionTable::STANDARD).unwrap();
        assert_eq!((outcome.passed, outcome.failed), (0, 0));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert_eq!(
            parse("order = 6"),
            Err(ScenarioError::Parse {
                line: 1,
                reason: "assignments must follow a [scenario] header".into()
            })
        );
        assert!(matches!(
            parse("[x]\nbroken line"),
            Err(ScenarioError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse("[x]\nop = pic\nop = rr"),
            Err(ScenarioError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse("[unterminated\n"),
            Err(ScenarioError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse("[x]\nkey =\n"),
            Err(ScenarioError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn running_checks_expectations() {
        let text = "[good]\nop = pic\norder = 6\nclass = 1\ndegree = 2\nexpect.value = 2\n\n[bad]\nop = pic\norder = 6\nclass = 1\ndegree = 2\nexpect.value = 5\n\n[typo]\nop = pic\norder = 6\nclass = 1\ndegree = 2\nexpect.vvalue = 2\n";
        let outcome = run(text, &IntersectionTable::STANDARD).unwrap();
        assert_eq!(outcome.passed, 2);
        assert_eq!(outcome.failed, 1);
        assert_eq!(outcome.warnings, 1);
        assert!(outcome.lines.iter().any(|l| l == "ok good"));
        assert!(outcome
            .lines
            .iter()
            .any(|l| l.starts_with("FAIL bad: value: got 2, expected 5")));
        assert!(outcome
            .lines
            .iter()
            .any(|l| l.starts_with("warn typo: no output named `vvalue`")));
    }

    #[test]
    fn missing_op_and_unknown_keys_are_usage_errors() {
        let no_op = "[x]\norder = 6\n";
        assert!(matches!(
            run(no_op, &IntersectionTable::STANDARD),
            Err(ScenarioError::Usage { .. })
        ));
        let bad_key = "[x]\nop = pic\norder = 6\nclass = 1\ndegree = 2\nmystery = 1\n";
        match run(bad_key, &IntersectionTable::STANDARD) {
            Err(ScenarioError::Usage { message, .. }) => {
                assert!(message.contains("mystery"), "{message}");
            }
            other => panic!("expected a usage error, got {other:?}"),
        }
    }

    #[test]
    fn expected_errors_match_on_substrings() {
        let text = "[refused]\nop = compose\nd = 2\nf = -3\nexpect.error = dualize\n";
        let outcome = run(text, &IntersectionTable::STANDARD).unwrap();
        assert_eq!(outcome.passed, 1);
        let wrong = "[refused]\nop = compose\nd = 2\nf = -3\nexpect.error = nonsense\n";
        let outcome = run(wrong, &IntersectionTable::STANDARD).unwrap();
        assert_eq!(outcome.failed, 1);
    }
}
