use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mfkit"))
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn validate_exit_codes() {
    let ok = run(&["validate", &data("stab_xy.json")]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).starts_with("valid"));

    let broken = std::fs::read_to_string(data("mf_pair_1_3.json")).unwrap().replacen("[2]", "[1]", 1);
    let o = run_stdin(&["validate", "-"], &broken);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));

    let o = run_stdin(&["validate", "-"], "{ not json");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));

    assert_eq!(run(&["validate", "/no/such/file.json"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn stabilize_shapes() {
    let o = run(&["stabilize", "--vars", "x", "--w", "x^2", "--sequence", "x"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"e0_twists\": [0]"), "{}", stdout(&o));

    let o = run(&["stabilize", "--vars", "x,y", "--w", "x*y", "--sequence", "x,y"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"e0_twists\": [0, 0]"), "{}", stdout(&o));
    assert!(String::from_utf8_lossy(&o.stderr).contains("rank E0 = 2"));

    // z is not in the ideal (x, y)
    let o = run(&["stabilize", "--vars", "x,y,z", "--w", "z", "--sequence", "x,y"]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["stabilize", "--vars", "x", "--field", "F4", "--w", "x^2", "--sequence", "x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn stabilize_writes_a_valid_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("stab.json");
    let p = path.display().to_string();
    let o = run(&["stabilize", "--vars", "x,y,z", "--field", "F5", "--w", "x*y*z", "--sequence", "x,y,z", "-o", &p]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(run(&["validate", &p]).status.code(), Some(0));

    let o = run(&["shift", &p, "--by", "-2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run_stdin(&["validate", "-"], &stdout(&o));
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn hom_tables() {
    let pair = data("mf_pair_1_3.json");
    let o = run(&["hom", &pair, &pair, "--n", "0", "--degree", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0\tt=0\t1\tcomplete"), "{}", stdout(&o));

    let o = run(&["hom", &data("stab_xy.json"), &data("envelope_xy.json"), "--n", "-1..1", "--degree", "-2..2"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<String> = stdout(&o).lines().skip(1).map(str::to_string).collect();
    assert_eq!(rows.len(), 15);
    assert!(rows.iter().all(|r| r.split('\t').nth(2) == Some("0")), "{rows:?}");

    assert_eq!(run(&["hom", &pair, &data("stab_xy.json")]).status.code(), Some(1));
}

#[test]
fn cone_of_identity_document() {
    let o = run(&["cone", &data("identity_xy.json")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("\"e0_twists\": [1, 0]"), "{text}");
    assert_eq!(run_stdin(&["validate", "-"], &text).status.code(), Some(0));
}

#[test]
fn e1_page_output() {
    let o = run(&["e1", &data("resolution_point.json"), &data("mf_pair_1_3.json"), "--degree", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("E1[1,0] = 1"), "{}", stdout(&o));
}

#[test]
fn examples_registry() {
    let o = run(&["example"]);
    assert_eq!(o.status.code(), Some(0));
    for name in ["mf_pair", "stab_koszul", "envelope", "cone_id", "split_ses_tot"] {
        assert!(stdout(&o).contains(name));
    }

    let o = run(&["example", "mf_pair", "1", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let expected = std::fs::read_to_string(data("mf_pair_1_3.json")).unwrap();
    assert_eq!(stdout(&o), expected);

    let o = run(&["example", "envelope", "--check"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    assert_eq!(run(&["example", "no_such_thing"]).status.code(), Some(1));
}

#[test]
fn selftest_single_suite() {
    let o = run(&["selftest", "--suite", "1", "--suite", "9"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS"));
}
