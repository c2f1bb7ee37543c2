use std::fs;
use std::process::{Command, Output};

fn cyclen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclen"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

const DESK: [&str; 12] = [
    "--plan", "theorem5", "--m", "4", "--k", "3", "--s1", "2", "--s2", "1", "--t", "1",
];

#[test]
fn desk_instance_verifies_exactly() {
    let mut args = vec!["verify"];
    args.extend(DESK);
    args.extend(["--mode", "exact", "--m-divisor", "4"]);
    let o = cyclen(&args);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("15 cycles, distinct, all ≡ 0 mod 4"), "{out}");
    assert!(out.contains("# plan: theorem5(m=4,k=3,s1=2,s2=1,t=1)"));
}

#[test]
fn theorem6_structural_reports_predicted_count() {
    let o = cyclen(&["verify", "--plan", "theorem6", "--t", "1429", "--no-header"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("predicted  87292"), "{out}");
    assert!(out.contains("status  PASS"));
    assert!(out.contains("cyclomatic(listed)  47884  47885  -1"));
}

#[test]
fn collision_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = dir.path().join("k4.txt");
    fs::write(
        &k4,
        "p edge 4 6\ne 0 1\ne 0 2\ne 0 3\ne 1 2\ne 1 3\ne 2 3\n",
    )
    .unwrap();
    let o = cyclen(&["verify", "--graph", k4.to_str().unwrap(), "--no-header"]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert!(out.contains("collision  length=3 count=4"), "{out}");
    assert!(out.contains("collision  length=4 count=3"), "{out}");
}

#[test]
fn divisibility_failure_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = dir.path().join("c5.txt");
    fs::write(&c5, "p edge 5 5\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 0 4\n").unwrap();
    let path = c5.to_str().unwrap();
    assert_eq!(cyclen(&["verify", "--graph", path]).status.code(), Some(0));
    let o = cyclen(&["verify", "--graph", path, "--m-divisor", "2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_and_validation_errors_exit_with_one() {
    assert_eq!(
        cyclen(&["verify", "--plan", "theorem5", "--m", "4"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(cyclen(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(cyclen(&["verify", "--bogus"]).status.code(), Some(1));
    let o = cyclen(&[
        "construct",
        "theorem5",
        "--m",
        "4",
        "--k",
        "3",
        "--s1",
        "1",
        "--s2",
        "1",
        "--t",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("s1 > s2"));
    let o = cyclen(&["construct", "theorem6", "--t", "1430"]);
    assert_eq!(o.status.code(), Some(1));
    let o = cyclen(&[
        "verify",
        "--plan",
        "theorem6",
        "--t",
        "1429",
        "--mode",
        "exact",
        "--vertex-cap",
        "1000",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(cyclen(&["--help"]).status.code(), Some(0));
}

#[test]
fn oracle_csv_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.txt");
    let o = cyclen(&[
        "oracle",
        "--n",
        "5",
        "--format",
        "csv",
        "--no-header",
        "--witness",
        w.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "5,1,6\n");
    let back = cyclen(&["verify", "--graph", w.to_str().unwrap(), "--no-header"]);
    assert_eq!(back.status.code(), Some(0));
    assert!(stdout(&back).contains("edges  6"));
}

#[test]
fn construct_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("desk.txt");
    let mut args = vec!["construct", "theorem5", "--out", g.to_str().unwrap()];
    args.extend(&DESK[2..]);
    assert_eq!(cyclen(&args).status.code(), Some(0));
    let text = fs::read_to_string(&g).unwrap();
    assert!(text.starts_with("c cyclen"));
    assert!(text.contains("p edge 125 132"));
    let o = cyclen(&[
        "verify",
        "--graph",
        g.to_str().unwrap(),
        "--m-divisor",
        "4",
        "--no-header",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("15 cycles, distinct, all ≡ 0 mod 4"));
}

#[test]
fn spectrum_csv_lists_lengths_with_blocks() {
    let mut args = vec!["spectrum", "--format", "csv"];
    args.extend(DESK);
    let o = cyclen(&args);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "length,count,block");
    assert_eq!(rows.len(), 16);
    assert!(rows[1..].iter().all(|r| r.split(',').nth(1) == Some("1")));
    assert_eq!(rows[1].split(',').next(), Some("4"));
    assert_eq!(rows[15].split(',').next(), Some("72"));
}

#[test]
fn reports_are_byte_identical_without_header() {
    for args in [
        vec![
            "verify",
            "--plan",
            "theorem6",
            "--r",
            "1",
            "--no-header",
            "--format",
            "json-lines",
        ],
        vec![
            "spectrum",
            "--plan",
            "theorem6",
            "--t",
            "1429",
            "--no-header",
            "--format",
            "csv",
        ],
        vec![
            "bounds",
            "--n-from",
            "47",
            "--n-to",
            "3000000000",
            "--step",
            "100000007",
            "--no-header",
        ],
        vec![
            "optimize",
            "--budget",
            "500",
            "--scale",
            "1000",
            "--no-header",
        ],
    ] {
        let a = cyclen(&args);
        let b = cyclen(&args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn spectrum_json_lines_has_one_object_per_length() {
    let o = cyclen(&[
        "spectrum",
        "--plan",
        "theorem6",
        "--t",
        "1429",
        "--format",
        "json-lines",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    let header: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(header["header"]["params"]["plan"], "theorem6(t=1429)");
    let rows: Vec<serde_json::Value> = lines.map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 87_290);
    assert!(rows.iter().all(|r| r["count"] == 1));
}

#[test]
fn bounds_csv_columns() {
    let o = cyclen(&[
        "bounds",
        "--n-from",
        "47",
        "--n-to",
        "49",
        "--format",
        "csv",
        "--no-header",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<Vec<&str>> = out.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3);
    for r in &rows {
        assert_eq!(r.len(), 5);
        let shi: u64 = r[1].parse().unwrap();
        let boros: u64 = r[4].parse().unwrap();
        assert!(shi <= boros);
    }
    assert_eq!(
        cyclen(&["bounds", "--n-from", "9", "--n-to", "3"])
            .status
            .code(),
        Some(1)
    );
}
