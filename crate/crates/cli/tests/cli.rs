use std::process::{Command, Output};

fn freelie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freelie"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

#[test]
fn apply_formats_result() {
    let o = freelie(&["apply", "--op", "deltaA", "--n", "1", "--expr", "x1^2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-x1*x2 - x2*x1\n");

    let o = freelie(&["apply", "--op", "Ant", "--n", "2", "--expr", "x1*x2"]);
    assert_eq!(stdout(&o), "1/2*x1*x2 - 1/2*x2*x1\n");

    let o = freelie(&[
        "apply",
        "--op",
        "Rinv",
        "--n",
        "3",
        "--expr",
        "[x2-x1, x3-x2]",
    ]);
    assert_eq!(stdout(&o), "x1*x2 - x2*x1\n");
}

#[test]
fn apply_json() {
    let o = freelie(&[
        "apply", "--op", "P", "--n", "2", "--expr", "x2 - x1", "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"], "-x1 + x2");
    assert_eq!(v["arity"], 2);
}

#[test]
fn parse_errors_exit_two() {
    let o = freelie(&["apply", "--op", "s", "--n", "2", "--expr", "[x1"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("position 3"), "{err}");
    assert!(err.contains("`,`"), "{err}");

    let o = freelie(&["apply", "--op", "s", "--n", "2", "--expr", "x0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = freelie(&["apply", "--op", "bogus", "--n", "2", "--expr", "x1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn precondition_errors_exit_two() {
    let o = freelie(&["apply", "--op", "Rinv", "--n", "1", "--expr", "x1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("defect = y"));
}

#[test]
fn cohomology_json_schema() {
    let o = freelie(&[
        "cohomology",
        "--algebra",
        "lie",
        "--n-max",
        "2",
        "--deg-max",
        "2",
        "--format",
        "json",
        "--generators",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.ends_with('\n'));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["algebra"], "lie");
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 4);
    let keys: Vec<&str> = entries[0]
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    assert_eq!(
        keys,
        [
            "n",
            "d",
            "dim",
            "rank_out",
            "rank_in",
            "betti",
            "generators"
        ]
    );
    assert_eq!(entries[3]["betti"], 1);
    assert_eq!(entries[3]["generators"][0], "x1*x2 - x2*x1");
}

#[test]
fn cohomology_csv_and_table() {
    let o = freelie(&[
        "cohomology",
        "--algebra",
        "assoc",
        "--n-max",
        "2",
        "--deg-max",
        "2",
        "--format",
        "csv",
    ]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,d,dim,rank_out,rank_in,betti,generators");
    assert_eq!(lines[4], "2,2,4,2,1,1,\"\"");

    let o = freelie(&[
        "cohomology",
        "--algebra",
        "assoc",
        "--n-max",
        "2",
        "--deg-max",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("degree 0 omitted"));
}

#[test]
fn cohomology_threads_do_not_change_output() {
    let base = [
        "cohomology",
        "--algebra",
        "assoc",
        "--n-max",
        "3",
        "--deg-max",
        "3",
        "--format",
        "json",
        "--generators",
    ];
    let one = freelie(&base);
    let mut parallel = base.to_vec();
    parallel.extend(["--threads", "4"]);
    assert_eq!(one.stdout, freelie(&parallel).stdout);
}

#[test]
fn verify_passes() {
    let o = freelie(&[
        "verify",
        "--suite",
        "simplicial",
        "--n-max",
        "2",
        "--deg-max",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 failed"));
    let o = freelie(&[
        "verify",
        "--suite",
        "nonsense",
        "--n-max",
        "2",
        "--deg-max",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bch_lie_check() {
    let o = freelie(&["bch", "--deg", "3", "--check-lie", "--coords"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("degree 2: 1/2*x1*x2 - 1/2*x2*x1"));
    assert!(text.contains("x1*x1*x2: 1/12"));
    assert!(text.contains("is_lie: true"));
}

#[test]
fn oracle_pass_and_fault() {
    let args = [
        "oracle",
        "--identity",
        "g_homotopy_identity",
        "--n",
        "3",
        "--deg",
        "3",
        "--trials",
        "10",
        "--dim",
        "3",
        "--seed",
        "4",
    ];
    let o = freelie(&args);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS 10/10"));
    let again = freelie(&args);
    assert_eq!(o.stdout, again.stdout);

    let mut faulty = args.to_vec();
    faulty.push("--fault-inject");
    let o = freelie(&faulty);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL at trial"));

    let o = freelie(&["oracle", "--identity", "bogus", "--n", "1", "--deg", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_json_is_reproducible() {
    let args = [
        "oracle",
        "--identity",
        "s_delta_homotopy",
        "--n",
        "2",
        "--deg",
        "3",
        "--trials",
        "8",
        "--seed",
        "9",
        "--json",
    ];
    let a = freelie(&args);
    let mut threaded = args.to_vec();
    threaded.extend(["--threads", "3"]);
    assert_eq!(a.stdout, freelie(&threaded).stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["passed"], 8);
}
