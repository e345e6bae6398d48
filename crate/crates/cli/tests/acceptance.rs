//! One line per acceptance criterion, each run at full size against its time
//! limit. Lines go straight to stdout so they show without `--nocapture`.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use modal_core::corpus;
use modal_core::suite::{run_one, Guards, TITLES};

const LIMITS: [u64; 9] = [10, 10, 30, 60, 30, 120, 30, 60, 60];

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn modal(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_modal")).args(args).current_dir(root()).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

/// Criterion 1 through the binary: every corpus file exits 0, and each
/// mutated copy exits 1 reporting a Mismatch at the mutated definition.
fn corpus_through_the_binary() -> (usize, Option<String>) {
    let mut n = 0;
    for (name, _) in corpus::FILES {
        n += 1;
        let path = format!("stdlib/{name}");
        let (code, out) = modal(&["check", &path]);
        if code != 0 {
            return (n, Some(format!("{path} exited {code}:\n{out}")));
        }
    }
    let dir = tempfile::tempdir().unwrap();
    for (name, def, from, to) in corpus::MUTATIONS {
        n += 1;
        let text = corpus::mutated(name, from, to).expect("mutation site is unique");
        let line = text.lines().position(|l| l.starts_with(&format!("def {def} "))).unwrap() + 1;
        let path = dir.path().join(name);
        std::fs::write(&path, &text).unwrap();
        let (code, out) = modal(&["check", path.to_str().unwrap()]);
        let located = format!("FAIL {def}: {}:{line}:1: Mismatch:", path.display());
        if code != 1 || !out.contains(&located) {
            return (n, Some(format!("mutated {name} exited {code} without `{located}`:\n{out}")));
        }
    }
    (n, None)
}

#[test]
fn acceptance() {
    let mut failures = Vec::new();
    for c in 1..=9u8 {
        let start = Instant::now();
        let (instances, witness) = if c == 1 {
            corpus_through_the_binary()
        } else {
            let o = run_one(c, &Guards::FULL);
            (o.instances, o.witness)
        };
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(LIMITS[c as usize - 1]);
        let passed = witness.is_none() && elapsed < limit;
        let mut line = format!(
            "{} criterion {c}: {} [{instances} instances, {:.2} s, limit {} s]",
            if passed { "PASS" } else { "FAIL" },
            TITLES[c as usize - 1],
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
        if let Some(w) = &witness {
            line.push_str(&format!(": {w}"));
        } else if elapsed >= limit {
            line.push_str(": over the time limit");
        }
        writeln!(std::io::stdout(), "{line}").unwrap();
        if !passed {
            failures.push(line);
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
