//! Runs the nine acceptance criteria and prints one line per criterion.
//! Built with `harness = false` so the lines always show.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use mfkit::io::{canonicalize, parse_document};
use mfkit::selftest;

struct Outcome {
    passed: bool,
    detail: String,
}

fn from_suite(n: u8) -> Outcome {
    let report = selftest::run_suite(n).expect("suite exists");
    Outcome { passed: report.passed(), detail: report.to_string() }
}

fn cli_selftest_and_round_trip() -> Outcome {
    let start = Instant::now();
    let mut problems = Vec::new();
    let status = Command::new(env!("CARGO_BIN_EXE_mfkit")).arg("selftest").output();
    match status {
        Ok(out) if out.status.success() => {}
        Ok(out) => problems.push(format!(
            "mfkit selftest exited with {:?}\n{}",
            out.status.code(),
            String::from_utf8_lossy(&out.stdout)
        )),
        Err(e) => problems.push(format!("could not run mfkit: {e}")),
    }
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let mut files = 0;
    for entry in std::fs::read_dir(&data).expect("data directory") {
        let path = entry.expect("readable entry").path();
        if path.extension().is_none_or(|e| e != "json") {
            continue;
        }
        files += 1;
        let text = std::fs::read_to_string(&path).expect("readable file");
        let name = path.file_name().unwrap().to_string_lossy().to_string();
        if let Err(e) = parse_document(&text) {
            problems.push(format!("{name}: {e}"));
            continue;
        }
        let once = canonicalize(&text).expect("parsed above");
        let twice = canonicalize(&once).expect("canonical text parses");
        if once != twice {
            problems.push(format!("{name}: canonical form is not idempotent"));
        }
        if once != text {
            problems.push(format!("{name}: shipped file is not canonical"));
        }
    }
    if files == 0 {
        problems.push("no shipped documents found".into());
    }
    Outcome {
        passed: problems.is_empty(),
        detail: format!(
            "mfkit selftest and round trip of {files} documents ({:.2}s){}",
            start.elapsed().as_secs_f64(),
            problems.iter().map(|p| format!("\n    {p}")).collect::<String>()
        ),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("factorization axioms on corpus and random stabilizations", || from_suite(1)),
        ("Koszul identities", || from_suite(2)),
        ("fold identities", || from_suite(3)),
        ("triangulated structure", || from_suite(4)),
        ("orthogonality of stabilizations to acyclic totalizations", || from_suite(5)),
        ("graded Hom dimensions against the brute-force oracle", || from_suite(6)),
        ("E1 bound and degeneration", || from_suite(7)),
        ("base change functoriality", || from_suite(8)),
        ("CLI selftest and document round trip", cli_selftest_and_round_trip),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = check();
        let status = if outcome.passed { "PASS" } else { "FAIL" };
        println!("criterion {} {status}: {name}", i + 1);
        println!("    {}", outcome.detail.replace('\n', "\n    "));
        if !outcome.passed {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
