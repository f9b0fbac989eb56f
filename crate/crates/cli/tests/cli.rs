//! End-to-end checks of the command-line surface: flag parsing, output
//! formats, determinism, and the documented exit codes (0 holds/success,
//! 1 verdict fails, 2 usage error, 3 budget exceeded).

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn zforce(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zforce"))
        .args(args)
        .output()
        .expect("binary should run")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal exit")
}

fn write_path3(dir: &Path) -> String {
    let path = dir.join("p3.el");
    fs::write(&path, "n=3\n0 1\n1 2\n").unwrap();
    path.to_str().unwrap().to_owned()
}

fn write_path4(dir: &Path) -> String {
    let path = dir.join("p4.el");
    fs::write(&path, "n=4\n0 1\n1 2\n2 3\n").unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn gen_is_deterministic_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.el");
    let b = dir.path().join("b.el");
    for path in [&a, &b] {
        let out = zforce(&[
            "gen",
            "--ba",
            "--n",
            "20",
            "--m",
            "2",
            "--seed",
            "7",
            "-o",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    }
    let bytes_a = fs::read(&a).unwrap();
    assert_eq!(bytes_a, fs::read(&b).unwrap());
    // The emitted file declares its node count and round-trips through
    // every other subcommand.
    let text = String::from_utf8(bytes_a).unwrap();
    assert!(text.starts_with("n=20\n"));
    // A Barabási–Albert graph on 20 nodes with m=2 has C(3,2) + 2*17 edges.
    assert_eq!(text.lines().count(), 1 + 3 + 34);
}

#[test]
fn gen_rejects_conflicting_and_missing_family_flags() {
    let out = zforce(&["gen", "--er", "--ba", "--n", "5"]);
    assert_eq!(code(&out), 2);
    let out = zforce(&["gen", "--n", "5"]);
    assert_eq!(code(&out), 2);
    let out = zforce(&["gen", "--er", "--n", "5"]);
    assert_eq!(code(&out), 2, "missing --p must be a usage error");
    let out = zforce(&["gen", "--er", "--n", "5", "--p", "1.5"]);
    assert_eq!(code(&out), 2, "probability outside [0, 1]");
}

#[test]
fn force_prints_the_trace_and_derived_set() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = write_path3(dir.path());
    let out = zforce(&["force", &p3, "--leaders", "0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "0->1\n1->2\nderived set: {0, 1, 2} (3 of 3 nodes)\n"
    );

    // A disabled edge stops the cascade but is still a success exit.
    let out = zforce(&["force", &p3, "--leaders", "0", "--nonforcing", "0-1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "derived set: {0} (1 of 3 nodes)\n");

    // A leaking input cannot force.
    let out = zforce(&["force", &p3, "--leaders", "0", "--leaks", "0"]);
    assert_eq!(stdout(&out), "derived set: {0} (1 of 3 nodes)\n");
}

#[test]
fn force_json_is_a_structured_record() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = write_path3(dir.path());
    let out = zforce(&["force", &p3, "--leaders", "0", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["input"], serde_json::json!([0]));
    assert_eq!(
        v["forces"],
        serde_json::json!([
            { "forcer": 0, "forcee": 1 },
            { "forcer": 1, "forcee": 2 }
        ])
    );
    assert_eq!(v["final_black"], serde_json::json!([0, 1, 2]));
}

#[test]
fn verify_exit_codes_follow_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = write_path3(dir.path());
    let p4 = write_path4(dir.path());

    let out = zforce(&["verify", &p4, "--leaders", "0,3", "--lfs", "1"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("1-LFS holds"));

    let out = zforce(&["verify", &p3, "--leaders", "0", "--lfs", "1"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("leaks=[0]"), "got: {}", stdout(&out));

    // Both leak-check algorithms are selectable and agree.
    let out = zforce(&[
        "verify",
        &p3,
        "--leaders",
        "0",
        "--lfs",
        "1",
        "--method",
        "recursive",
    ]);
    assert_eq!(code(&out), 1);

    // Plain zero forcing when no variant flag is given.
    let out = zforce(&["verify", &p3, "--leaders", "0"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("ZFS holds"));
    let out = zforce(&["verify", &p3, "--leaders", "1"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("ZFS fails"));

    // Usage errors: out-of-range node, conflicting modes, missing file.
    let out = zforce(&["verify", &p3, "--leaders", "9"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("out of range"));
    let out = zforce(&["verify", &p3, "--leaders", "0", "--lfs", "1", "--efs", "1"]);
    assert_eq!(code(&out), 2);
    let out = zforce(&["verify", "/nonexistent.el", "--leaders", "0"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_json_reports_are_structured() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = write_path3(dir.path());
    let out = zforce(&["verify", &p3, "--leaders", "0", "--lfs", "1", "--json"]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["kind"], "LFS");
    assert_eq!(v["l"], 1);
    assert_eq!(v["holds"], false);
    assert_eq!(v["witness"]["scenario"]["kind"], "LEAKS");
    assert_eq!(v["witness"]["scenario"]["set"], serde_json::json!([0]));
    assert!(v["scenarios_checked"].as_u64().unwrap() >= 1);
    assert!(v["elapsed"].as_f64().unwrap() >= 0.0);
}

#[test]
fn equiv_checks_all_three_models() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = write_path4(dir.path());
    let out = zforce(&["equiv", &p4, "--leaders", "0,3", "--l", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("1-LFS: holds"));
    assert!(text.contains("1-EFS: holds"));
    assert!(text.contains("1-FSR: holds"));
    assert!(text.contains("models agree"));

    let out = zforce(&["equiv", &p4, "--leaders", "0,3", "--l", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["agree"], true);
    assert_eq!(v["lfs"]["holds"], true);
}

#[test]
fn find_selects_and_reports_leaders() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = write_path4(dir.path());
    let out = zforce(&["find", &p4, "--method", "exact", "--lfs", "1", "--json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["problem"], "1-LFS");
    assert_eq!(v["size"], 2);

    let out = zforce(&["find", &p4]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("size 1"), "got: {}", stdout(&out));
    assert!(stdout(&out).contains("problem: ZFS"));
}

#[test]
fn find_exits_3_when_the_budget_is_exhausted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k6.el");
    let mut text = String::from("n=6\n");
    for i in 0..6 {
        for j in i + 1..6 {
            text.push_str(&format!("{i} {j}\n"));
        }
    }
    fs::write(&path, text).unwrap();
    let out = zforce(&[
        "find",
        path.to_str().unwrap(),
        "--method",
        "exact",
        "--budget-checks",
        "3",
    ]);
    assert_eq!(code(&out), 3, "stderr: {}", stderr(&out));
    assert!(stderr(&out).contains("budget"), "got: {}", stderr(&out));
}

#[test]
fn rank_flags_a_leader_set_that_cannot_reach_a_component() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two_parts.el");
    fs::write(&path, "n=4\n0 1\n2 3\n").unwrap();
    // Leaders confined to one component leave the other unreachable, so
    // every sampled controllability matrix is rank deficient.
    let out = zforce(&[
        "rank",
        path.to_str().unwrap(),
        "--leaders",
        "0,1",
        "--samples",
        "5",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("rank-deficient"));

    // One leader per component is a zero forcing set; full rank expected.
    let out = zforce(&[
        "rank",
        path.to_str().unwrap(),
        "--leaders",
        "0,2",
        "--samples",
        "5",
        "--json",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "CONSISTENT_WITH_SSC");
    assert_eq!(v["ranks"], serde_json::json!([4, 4, 4, 4, 4]));
}

#[test]
fn bench_emits_the_documented_csv_schema() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("bench.csv");
    let out = zforce(&[
        "bench",
        "--family",
        "er",
        "--n",
        "8",
        "--grid",
        "0.3,0.5",
        "--instances",
        "2",
        "--seed",
        "5",
        "-o",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let csv = fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "family,param,instance,seed,method,size,seconds,status"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 8, "2 grid points x 2 instances x 2 methods");
    for row in &rows {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 8);
        assert_eq!(fields[0], "ER");
        assert!(fields[1] == "0.3" || fields[1] == "0.5");
        assert_eq!(fields[7], "ok");
        // seconds column carries six decimals
        assert_eq!(fields[6].split('.').nth(1).unwrap().len(), 6);
    }
    // Summary goes to standard error, one line per (point, method).
    assert_eq!(stderr(&out).lines().count(), 4);

    // Same config, same seed: identical CSV apart from the seconds column.
    let rerun = dir.path().join("bench2.csv");
    let out = zforce(&[
        "bench",
        "--family",
        "er",
        "--n",
        "8",
        "--grid",
        "0.3,0.5",
        "--instances",
        "2",
        "--seed",
        "5",
        "-o",
        rerun.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let strip_seconds = |text: &str| -> Vec<String> {
        text.lines()
            .map(|line| {
                let fields: Vec<&str> = line.split(',').collect();
                if fields.len() == 8 {
                    format!("{},{}", fields[..6].join(","), fields[7])
                } else {
                    line.to_owned()
                }
            })
            .collect()
    };
    assert_eq!(
        strip_seconds(&csv),
        strip_seconds(&fs::read_to_string(&rerun).unwrap())
    );
}

#[test]
fn bench_rejects_invalid_grids() {
    let out = zforce(&[
        "bench",
        "--family",
        "ba",
        "--n",
        "10",
        "--grid",
        "2.5",
        "--instances",
        "1",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("attachment count"));
}
