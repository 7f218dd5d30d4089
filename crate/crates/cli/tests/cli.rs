use std::io::Write;
use std::process::{Command, Output, Stdio};

fn polykmap(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_polykmap"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn gen(spec: &str) -> String {
    let o = polykmap(&["gen", spec], None);
    assert!(o.status.success(), "{}", stderr(&o));
    stdout(&o)
}

#[test]
fn eval_both_modes() {
    let o = polykmap(
        &[
            "eval",
            "~x2 * x3 XOR/OR x1 + ~x4",
            "--input",
            "1011",
            "--mode",
            "both",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0/1\n");
    let o = polykmap(
        &[
            "eval",
            "~x2 * x3 XOR/OR x1 + ~x4",
            "--input",
            "1011",
            "--mode",
            "2",
        ],
        None,
    );
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn gen_piped_to_minimize() {
    let ppla = gen("parity4/majority4");
    assert!(ppla.contains("0111 1/1\n"));
    let o = polykmap(&["minimize"], Some(&ppla));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let expr = out.lines().next().unwrap();
    let cost = out.lines().nth(1).unwrap();
    assert!(cost.starts_with("cost literals="), "{cost}");
    assert!(out.lines().skip(2).all(|l| l.starts_with("rule ")));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pm.ppla");
    std::fs::write(&path, &ppla).unwrap();
    let o = polykmap(&["verify", path.to_str().unwrap(), expr], None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn minimize_json_has_schema() {
    let ppla = gen("multiplier2x3/sortingnet5");
    let o = polykmap(&["minimize", "-", "--format", "json"], Some(&ppla));
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["verified"], true);
    assert_eq!(v["n"], 5);
    assert!(v["cost"]["node_count"].as_u64().unwrap() > 0);
    assert_eq!(
        v["terms"].as_array().unwrap().len(),
        v["trace"].as_array().unwrap().len()
    );
}

#[test]
fn output_is_deterministic() {
    let ppla = gen("multiplier2x3/sortingnet5");
    let runs: Vec<_> = [
        &["minimize"][..],
        &["minimize", "--sequential"],
        &["minimize"],
    ]
    .iter()
    .map(|args| stdout(&polykmap(args, Some(&ppla))))
    .collect();
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0], runs[2]);
    assert_eq!(gen("parity4/majority4"), gen("parity4/majority4"));
}

#[test]
fn verify_mismatch_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pm.ppla");
    let o = polykmap(
        &["gen", "parity4/majority4", "-o", path.to_str().unwrap()],
        None,
    );
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let o = polykmap(&["verify", path.to_str().unwrap(), "x1 * x2"], None);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "assignment=0001 mode=1 expected=1 got=0\n");
    let err = stderr(&o);
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("error kind=mismatch "), "{err}");
}

#[test]
fn verify_reads_expression_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.ppla");
    let e = dir.path().join("e.txt");
    std::fs::write(&f, ".i 2\n.m 2\n01 0/1\n10 0/1\n11 1/0\n.e\n").unwrap();
    std::fs::write(&e, "x1 AND/XOR x2\n").unwrap();
    let o = polykmap(&["verify", f.to_str().unwrap(), e.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn usage_and_parse_errors_exit_2() {
    for (args, stdin) in [
        (&["minimize", "--bogus"][..], None),
        (&["eval", "x1 FOO/AND x2", "--input", "11"], None),
        (&["eval", "x3", "--input", "11"], None),
        (&["minimize"], Some(".i 2\n.m 2\n01 1/0\n01 0/1\n.e\n")),
        (&["kmap", "/nonexistent/file.ppla"], None),
        (&["gen", "parity4/majority5"], None),
        (
            &["minimize", "--max-arity", "3"],
            Some(".i 4\n.m 2\n0001 1/1\n.e\n"),
        ),
    ] {
        let o = polykmap(args, stdin);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = stderr(&o);
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(err.starts_with("error kind="), "{err}");
    }
}

#[test]
fn uncoverable_demand_is_reported() {
    let o = polykmap(
        &["minimize", "--no-triples"],
        Some(".i 2\n.m 2\n00 1/0\n.e\n"),
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error kind=uncovered "));
    assert!(o.stdout.is_empty());
}

#[test]
fn kmap_renders_grid() {
    let o = polykmap(&["kmap"], Some(&gen("parity4/majority4")));
    assert!(o.status.success());
    assert_eq!(
        stdout(&o).lines().nth(3).unwrap(),
        "       11 0/0 1/1 0/1 1/1"
    );
}

#[test]
fn exact_search_and_exhaustion() {
    let f = ".i 2\n.m 2\n01 0/1\n10 0/1\n11 1/0\n.e\n";
    let o = polykmap(&["exact", "--budget", "5"], Some(f));
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "x1 AND/XOR x2\nnodes 3\n");
    let o = polykmap(&["exact", "--budget", "2"], Some(f));
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "budget exhausted\n");
}
