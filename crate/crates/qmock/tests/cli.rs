use std::path::Path;
use std::process::{Command, Output};

use qmock::points::{format_points, parse_points};
use qmock::report::strip_timestamp;
use qmock_core::DEFAULT_BITS as P;
use serde_json::Value;

fn qmock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmock")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn lines(report: &str) -> Vec<Value> {
    report.lines().map(|l| serde_json::from_str(l).expect("json line")).collect()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn list_identities_is_stable() {
    let a = qmock(&["list-identities"]);
    let b = qmock(&["list-identities"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let ids: Vec<&str> = text.lines().map(|l| l.split_whitespace().next().unwrap()).collect();
    assert_eq!(
        ids,
        ["4.1", "4.2", "4.3", "4.4", "4.5", "5.1", "5.2", "5.3", "6.1", "6.2", "6.3", "7.1", "7.4", "7.5"]
    );
    assert_eq!(text.lines().filter(|l| l.split_whitespace().nth(1) == Some("established")).count(), 4);
}

#[test]
fn unknown_identity_is_a_usage_error() {
    for id in ["9.9", "7.3"] {
        let o = qmock(&["verify", "--identity", id, "--count", "1"]);
        assert_eq!(o.status.code(), Some(2), "{id}");
        assert!(stderr(&o).contains(id), "{}", stderr(&o));
        assert!(o.stdout.is_empty());
    }
    assert_eq!(qmock(&["verify", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(qmock(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn established_failure_exits_one() {
    let o = qmock(&["verify", "--identity", "4.1", "--count", "2", "--assert-tol", "1e-300", "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let recs = lines(&stdout(&o));
    assert!(recs.iter().any(|r| r["verdict"] == "fail"));
}

#[test]
fn missing_point_file_exits_three() {
    let o = qmock(&["verify", "--identity", "4.1", "--points", "/nonexistent/points.txt"]);
    assert_eq!(o.status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("no/such/dir/report.jsonl");
    let o = qmock(&["verify", "--identity", "7.1", "--count", "1", "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn malformed_point_file_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("pts.txt");
    std::fs::write(&f, "q=0.3 z=0.4\n# comment\nq=0.2 w=1\n").unwrap();
    let o = qmock(&["verify", "--identity", "4.1", "--points", path(&f)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn point_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let src = "q=0.3 z=0.4 t=0 alpha=1 c1=0.15 c2=0.25\n\
               q=0.25+0.05i z=0.3 alpha=0 a1=inf a2=0.8 b1=0.1 b2=0.2\n\
               q=0.123456789012345678901234567890123 z=0.5 alpha=-1 lambda=0.7 beta=0.3\n";
    let pts = parse_points(src, P).unwrap();
    let text = format_points(&pts);
    assert_eq!(parse_points(&text, P).unwrap(), pts);
    assert_eq!(format_points(&parse_points(&text, P).unwrap()), text);

    let (f1, f2) = (dir.path().join("a.txt"), dir.path().join("b.txt"));
    std::fs::write(&f1, src).unwrap();
    std::fs::write(&f2, &text).unwrap();
    let run = |f: &Path| {
        let o = qmock(&["verify", "--identity", "4.1", "--identity", "7.1", "--points", path(f), "--no-timestamp"]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        stdout(&o).lines().skip(1).map(String::from).collect::<Vec<_>>()
    };
    assert_eq!(run(&f1), run(&f2));

    // the point objects in a report read back as the same points
    let body = run(&f1);
    let recs: Vec<Value> = body.iter().map(|l| serde_json::from_str(l).unwrap()).collect();
    for r in recs.iter().filter(|r| r["type"] == "record") {
        let i: usize = r["point_index"].as_str().unwrap().parse().unwrap();
        let line: Vec<String> =
            r["point"].as_object().unwrap().iter().map(|(k, v)| format!("{k}={}", v.as_str().unwrap())).collect();
        assert_eq!(parse_points(&line.join(" "), P).unwrap()[0], pts[i]);
    }
}

#[test]
fn points_outside_the_disc_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("pts.txt");
    std::fs::write(&f, "q=1.2 z=0.4\nq=0.3 z=0.4\nq=0 z=0.4\n").unwrap();
    let o = qmock(&["verify", "--identity", "5.2", "--points", path(&f), "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(0));
    let recs = lines(&stdout(&o));
    let rejected: Vec<&str> = recs
        .iter()
        .filter(|r| r["type"] == "rejection")
        .map(|r| r["point_index"].as_str().unwrap())
        .collect();
    // two variants for each bad point
    assert_eq!(rejected, ["0", "0", "2", "2"]);
    assert_eq!(recs.iter().filter(|r| r["type"] == "record").count(), 2);
}

#[test]
fn report_shape() {
    let o = qmock(&["verify", "--identity", "4.2", "--identity", "7.1", "--count", "2", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let recs = lines(&stdout(&o));
    assert_eq!(recs[0]["type"], "header");
    assert!(recs[0]["timestamp"].is_string());
    assert_eq!(recs.last().unwrap()["type"], "summary");
    // 4.2: two variants at two points; 7.1: two points
    assert_eq!(recs.len(), 2 + 6);
    for r in &recs[1..recs.len() - 1] {
        assert_eq!(r["type"], "record");
        for k in ["identity", "point", "lhs", "rhs", "abs_residual", "rel_residual", "verdict", "trust", "notes"] {
            assert!(r.get(k).is_some(), "missing {k}");
        }
    }
    assert_eq!(recs[1]["identity"], "4.2");
    assert_eq!(recs[1]["variant"], "printed");
    assert_eq!(recs[2]["variant"], "derived");
}

#[test]
fn output_file_and_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("suite.conf");
    let out = dir.path().join("report.jsonl");
    std::fs::write(&cfg, format!("identities = 7.1\ncount = 3\nseed = 9\nout = {}\n", out.display())).unwrap();
    let o = qmock(&["verify", "--config", path(&cfg)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    assert_eq!(lines(&std::fs::read_to_string(&out).unwrap()).len(), 5);

    std::fs::write(&cfg, "identities = 7.1\nbogus = 1\n").unwrap();
    assert_eq!(qmock(&["verify", "--config", path(&cfg)]).status.code(), Some(2));
}

#[test]
fn seeded_runs_are_reproducible() {
    let args = ["verify", "--identity", "4.1", "--identity", "6.2", "--seed", "17", "--count", "3"];
    let a = stdout(&qmock(&args));
    let b = stdout(&qmock(&args));
    assert_eq!(strip_timestamp(&a), strip_timestamp(&b));
    let mut with_threads = args.to_vec();
    with_threads.extend(["--threads", "1"]);
    assert_eq!(strip_timestamp(&stdout(&qmock(&with_threads))), strip_timestamp(&a));
    let other: Vec<&str> = args.iter().map(|a| if *a == "17" { "18" } else { a }).collect();
    assert_ne!(strip_timestamp(&stdout(&qmock(&other))), strip_timestamp(&a));
}

#[test]
fn eval_examples() {
    let o = qmock(&["eval", "--function", "psi0", "--q", "0.2"]);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o);
    assert!(line.starts_with("function=psi0 variant=classical value=1.0320533138027230519313480333507247631114694026544e0"), "{line}");
    assert!(line.trim_end().ends_with("status=converged"));

    let g = qmock(&["eval", "--function", "psi0", "--variant", "generalized", "--q", "0.2", "--z", "0.2", "--alpha", "1"]);
    assert_eq!(g.status.code(), Some(0));
    assert!(stdout(&g).contains("value=1.0320533138027230519313480333507247631114694026544e0"));

    let phi = qmock(&["eval", "--function", "phi0", "--q", "0.2", "--precision", "30"]);
    assert!(stdout(&phi).contains("value=1.51461777447284639644522904533e0"), "{}", stdout(&phi));

    assert_eq!(qmock(&["eval", "--function", "psi0"]).status.code(), Some(2));
    assert_eq!(qmock(&["eval", "--function", "psi9", "--q", "0.2"]).status.code(), Some(2));
    assert_eq!(qmock(&["eval", "--function", "psi0", "--q", "1.5"]).status.code(), Some(2));
    assert_eq!(qmock(&["eval", "--function", "psi0", "--variant", "complete", "--q", "0.2"]).status.code(), Some(2));
}
