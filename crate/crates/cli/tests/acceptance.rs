//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Each criterion runs its library check under its runtime bound;
//! the first and third are also driven through the command line.

use std::process::ExitCode;

use serde_json::Value;
use zonoforge::AuditCaps;
use zonoforge_cli::verify::{self, CheckResult, EXCLUDED_6_4};

fn cli(args: &[&str]) -> (i32, Value) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("zonoforge").chain(args.iter().copied());
    let code = zonoforge_cli::run(argv, &mut out, &mut err);
    let doc = serde_json::from_slice(&out).unwrap_or(Value::Null);
    (code, doc)
}

fn lists(v: &Value) -> Vec<Vec<u64>> {
    v.as_array()
        .map(|a| {
            a.iter()
                .map(|s| s.as_array().unwrap().iter().map(|e| e.as_u64().unwrap()).collect())
                .collect()
        })
        .unwrap_or_default()
}

/// `purity --n 6 --d 4` as a user sees it.
fn purity_cli() -> Result<(), String> {
    let (code, doc) = cli(&["purity", "--n", "6", "--d", "4"]);
    if code != 0 {
        return Err(format!("exit {code}"));
    }
    let expect = |key: &str, want: Value| {
        if doc[key] == want {
            Ok(())
        } else {
            Err(format!("{key} = {}, want {want}", doc[key]))
        }
    };
    expect("pure", Value::Bool(false))?;
    expect("witness_size", 55.into())?;
    expect("max_size", 57.into())?;
    expect("universal_count", 52.into())?;
    let want: Vec<Vec<u64>> = EXCLUDED_6_4
        .split(',')
        .map(|s| s.chars().map(|c| c.to_digit(10).unwrap() as u64).collect())
        .collect();
    let mut got = lists(&doc["excluded"]);
    let mut want_sorted = want.clone();
    got.sort();
    want_sorted.sort();
    if got != want_sorted {
        return Err(format!("excluded sets {got:?}"));
    }
    Ok(())
}

/// `extend` on the triple at n = 6 and 7.
fn triple_cli() -> Result<(), String> {
    for n in ["6", "7"] {
        let (code, doc) = cli(&["extend", "--n", n, "--d", "4", "--sets", "24,35,1346"]);
        if code != 0 || doc["extendable"] != Value::Bool(false) {
            return Err(format!("n={n}: exit {code}, extendable {}", doc["extendable"]));
        }
        if doc["certificate"]["kind"] != "ExhaustedNoExtension" {
            return Err(format!("n={n}: kind {}", doc["certificate"]["kind"]));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let caps = AuditCaps::default();
    let mut failed = 0;
    for check in verify::checks() {
        let mut result: CheckResult = verify::run_check(&check, &caps);
        let extra = match check.id {
            1 => Some(purity_cli()),
            3 => Some(triple_cli()),
            _ => None,
        };
        if let Some(Err(why)) = extra {
            result.passed = false;
            result.detail = format!("command line: {why}");
        }
        if !result.ok() {
            failed += 1;
        }
        println!("{}", result.line());
    }
    if failed == 0 {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
