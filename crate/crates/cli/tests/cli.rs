use std::process::{Command, Output};

fn bazaikin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bazaikin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn classify_prints_the_code() {
    let o = bazaikin(&["classify", "--q", "1,1,1,1,-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "AP\n");
    let o = bazaikin(&["classify", "--q", "1,1,1,-1,-3"]);
    assert_eq!(stdout(&o), "NN\n");
    let o = bazaikin(&["classify", "--q=7,1,-3,1,-3"]);
    assert_eq!(stdout(&o), "QP\n");
}

#[test]
fn even_entry_is_a_usage_error() {
    let o = bazaikin(&["classify", "--q", "2,1,1,-1,-3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("entry 1 (2) is even"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
}

#[test]
fn other_usage_errors() {
    for args in [
        vec!["frobnicate"],
        vec!["classify"],
        vec!["classify", "--q", "1,1,1"],
        vec!["classify", "--q", "1,1,1,1,-1", "--bogus"],
        vec!["enumerate", "--p1-max", "1"],
        vec!["enumerate", "--p1-max", "39", "--format", "xml"],
        vec!["collisions", "--p1-max", "39", "--key", "p3"],
        vec!["invariants", "--q", "7,-5,1,1,-1"],
        vec!["verify-qp", "--q", "1,1,1,-1,-3"],
        vec!["verify-zero-planes", "--q", "1,1,1,-1,-3", "--tol", "0"],
        vec!["verify-open-set", "--q", "1,1,1,1,-1"],
        vec!["verify-open-set", "--q=-3,7,1,1,-3", "--theta", "0.5"],
        vec!["export", "--input", "/nonexistent/catalog.jsonl"],
    ] {
        let o = bazaikin(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
    assert_eq!(bazaikin(&["--help"]).status.code(), Some(0));
}

#[test]
fn invariants_and_canon() {
    let o = bazaikin(&["invariants", "--q", "7,1,1,-3,-3"]);
    assert_eq!(stdout(&o), "p1 = 39\ns = 11\np2 = 8 (mod 11)\n");
    let o = bazaikin(&["canon", "--q", "1,1,1,1,-1"]);
    let text = stdout(&o);
    assert!(text.starts_with("canon = 3 1 -1 -1 -1 -1\n"));
    assert!(text.contains("rep = 1,1,1,-1,-3 (NN)"));
    assert!(text.ends_with("best = AP\n"));
}

#[test]
fn enumerate_writes_a_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.jsonl");
    let o = bazaikin(&[
        "enumerate",
        "--p1-max",
        "39",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("classes: 7\n"));
    let text = std::fs::read_to_string(&path).unwrap();
    let last: Vec<&str> = text.lines().rev().take(2).collect();
    assert!(last[0].starts_with("{\"canon\":[7,1,1,-3,-3,-3],\"p1\":39,\"s\":11"));
    assert!(last[1].starts_with("{\"canon\":[5,5,-1,-3,-3,-3],\"p1\":39,\"s\":7"));

    // without --out the catalog goes to standard output
    let o = bazaikin(&["enumerate", "--p1-max", "39"]);
    assert_eq!(stdout(&o), text);
}

#[test]
fn outputs_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    bazaikin(&[
        "enumerate",
        "--p1-max",
        "300",
        "--format",
        "csv",
        "--threads",
        "1",
        "--out",
        a.to_str().unwrap(),
    ]);
    bazaikin(&[
        "enumerate",
        "--p1-max",
        "300",
        "--format",
        "csv",
        "--threads",
        "3",
        "--out",
        b.to_str().unwrap(),
    ]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let args = [
        "verify-zero-planes",
        "--q",
        "1,1,1,-1,-3",
        "--samples",
        "10",
        "--seed",
        "5",
    ];
    assert_eq!(stdout(&bazaikin(&args)), stdout(&bazaikin(&args)));
}

#[test]
fn export_converts_between_formats() {
    let dir = tempfile::tempdir().unwrap();
    let jsonl = dir.path().join("c.jsonl");
    let csv = dir.path().join("c.csv");
    let back = dir.path().join("back.jsonl");
    bazaikin(&[
        "export",
        "--p1-max",
        "120",
        "--out",
        jsonl.to_str().unwrap(),
    ]);
    let o = bazaikin(&[
        "export",
        "--input",
        jsonl.to_str().unwrap(),
        "--format",
        "csv",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&csv)
        .unwrap()
        .starts_with("canon;p1;s;p2;curvature;new_example;reps\n"));
    bazaikin(&[
        "export",
        "--input",
        csv.to_str().unwrap(),
        "--out",
        back.to_str().unwrap(),
    ]);
    assert_eq!(
        std::fs::read(&jsonl).unwrap(),
        std::fs::read(&back).unwrap()
    );

    // a corrupted record is rejected with its line number
    let text = std::fs::read_to_string(&jsonl)
        .unwrap()
        .replacen("\"p1\":7,", "\"p1\":9,", 1);
    std::fs::write(&jsonl, text).unwrap();
    let o = bazaikin(&["export", "--input", jsonl.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1"), "{}", stderr(&o));
}

#[test]
fn collisions_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("groups.jsonl");
    let o = bazaikin(&[
        "collisions",
        "--p1-max",
        "200",
        "--key",
        "p1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let groups: usize = text
        .lines()
        .find_map(|l| l.strip_prefix("groups: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(groups > 0);
    assert_eq!(
        std::fs::read_to_string(&path).unwrap().lines().count(),
        groups
    );
}

#[test]
fn verification_verbs() {
    let o = bazaikin(&[
        "verify-zero-planes",
        "--q",
        "1,1,1,-1,-3",
        "--samples",
        "100",
        "--seed",
        "42",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("points with a zero-curvature plane: 100/100"));

    let o = bazaikin(&["verify-qp", "--q", "7,1,-3,1,-3", "--samples", "200"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("eq1 residual at A = I: 6\n"));
    assert!(stdout(&o).contains("positive minimum"));

    let o = bazaikin(&[
        "verify-open-set",
        "--q=-3,7,1,1,-3",
        "--theta",
        "0.02",
        "--samples",
        "20",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("base point in V: true"));

    // reordered automatically
    let o = bazaikin(&["verify-open-set", "--q", "1,1,1,-1,-3", "--samples", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("q = -1,1,1,1,-3, theta = 0.02\n"));
}

#[test]
fn verification_failure_exits_with_one() {
    // positive curvature: g is identically 2 and condition (1) never holds
    let o = bazaikin(&["verify-zero-planes", "--q", "1,1,1,1,1", "--samples", "3"]);
    assert_eq!(o.status.code(), Some(1), "{}{}", stdout(&o), stderr(&o));
    assert!(stderr(&o).contains("matrix = [["), "{}", stderr(&o));
}
