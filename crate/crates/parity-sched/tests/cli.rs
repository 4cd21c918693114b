//! Integration tests that drive the compiled binary the way a shell user
//! would: argument, file and stdin input, both output formats, and the
//! exit-code contract (0 success, 1 runtime error, 2 usage error).

use std::io::Write;
use std::process::{Command, Output, Stdio};
use std::str::FromStr;

use parity_sched::cli::{BoundsOutput, PartitionOutput, ScheduleOutput, SimulateOutput};
use parity_sched::ratio::Ratio;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_parity-sched"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn schedule_from_arguments() {
    let out = run(&["schedule", "9", "7", "4", "3", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("machine 1: J1 J4"), "got:\n{text}");
    assert!(text.contains("machine 2: J2 J3 J5"), "got:\n{text}");
    assert!(text.contains("makespan: 13"), "got:\n{text}");
}

#[test]
fn schedule_from_file_with_comments() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# five jobs, mixed separators").unwrap();
    writeln!(file, "9, 7 4").unwrap();
    writeln!(file, "3 2 # trailing comment").unwrap();
    let out = run(&["schedule", "--file", file.path().to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("makespan: 13"));
}

#[test]
fn schedule_from_stdin() {
    let out = run_with_stdin(&["schedule"], "9 7 4 3 2\n");
    assert!(out.status.success());
    assert!(stdout(&out).contains("makespan: 13"));
}

#[test]
fn schedule_structured_round_trips() {
    let out = run(&["schedule", "--format", "structured", "9", "7", "4", "3", "2"]);
    assert!(out.status.success());
    let parsed: ScheduleOutput = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed.schedule.times, [9, 7, 4, 3, 2]);
    assert_eq!(parsed.schedule.assignment, [1, 2, 2, 1, 2]);
    assert_eq!(parsed.schedule.makespan, 13);
    assert_eq!(parsed.partition.sum1 + parsed.partition.sum2, 25);
}

#[test]
fn partition_exact_reports_identity() {
    let out = run(&["partition", "--exact", "--format", "structured", "9", "7", "4", "3", "2"]);
    assert!(out.status.success());
    let parsed: PartitionOutput = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed.total_sum, 25);
    assert_eq!(parsed.identity_holds, Some(true));
    let optimal = parsed.optimal.unwrap();
    assert_eq!(optimal.optimal_makespan, 13);
    assert_eq!(optimal.min_difference, 1);
    let w = &optimal.witness;
    assert_eq!(w.sum1.abs_diff(w.sum2), 1);
}

#[test]
fn plj_text_output() {
    let out = run(&["plj", "12", "5", "3", "2", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("dominant jobs: J1 J3 J4"), "got:\n{text}");
    assert!(text.contains("possible last job index: 1"), "got:\n{text}");
}

#[test]
fn bounds_oracle_structured_is_consistent() {
    let out = run(&["bounds", "--oracle", "--format", "structured", "9", "7", "4", "3", "2"]);
    assert!(out.status.success());
    let parsed: BoundsOutput = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed.inputs.last_job_index, 5);
    assert_eq!(parsed.inputs.plj, 4);
    let ratio = Ratio::from_str(&parsed.ratio_actual.unwrap().exact).unwrap();
    assert_eq!(ratio, Ratio::ONE);
    let capped = Ratio::from_str(&parsed.last_job_capped.exact).unwrap();
    assert_eq!(capped, Ratio::new(7u8, 6u8).unwrap());
    let raw = Ratio::from_str(&parsed.last_job_raw.exact).unwrap();
    assert_eq!(raw, Ratio::new(1555u32, 1296u32).unwrap());
    assert_eq!(parsed.raw_last_job_exceeded, Some(false));
}

#[test]
fn simulate_structured_matches_requested_configuration() {
    let out = run(&[
        "simulate", "--jobs", "6,9", "--trials", "11", "--seed", "3", "--format", "structured",
    ]);
    assert!(out.status.success());
    let parsed: SimulateOutput = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed.rows.len(), 2);
    assert_eq!(parsed.rows[0].jobs, 6);
    assert_eq!(parsed.rows[1].jobs, 9);
    for row in &parsed.rows {
        assert_eq!(row.trials, 11);
        assert_eq!(row.seed, 3);
        assert!(row.ac >= 1.0 && row.mc >= row.ac);
    }
}

#[test]
fn invalid_token_is_a_runtime_error() {
    let out = run(&["schedule", "9", "7", "x"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("`x` is not a valid processing time"));
}

#[test]
fn zero_and_oversized_times_are_rejected() {
    let out = run(&["schedule", "0", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("error:"));

    // 2^40 is the largest accepted value.
    let out = run(&["schedule", "1099511627776"]);
    assert!(out.status.success());
    let out = run(&["schedule", "1099511627777"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("1099511627777"));
}

#[test]
fn empty_stdin_is_a_runtime_error() {
    let out = run_with_stdin(&["schedule"], "");
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("error:"));
}

#[test]
fn missing_file_is_a_runtime_error() {
    let out = run(&["schedule", "--file", "/nonexistent/jobs.txt"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("error:"));
}

#[test]
fn usage_errors_exit_with_two() {
    let out = run(&["schedule", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["simulate"]);
    assert_eq!(out.status.code(), Some(2), "--jobs is required");
}

#[test]
fn oracle_failure_gives_guidance() {
    // 30 jobs exceed the brute-force limit and their sum exceeds the DP cap,
    // so the exact oracle must decline with a pointer, not panic.
    let mut args = vec!["partition", "--exact"];
    args.extend(std::iter::repeat_n("1099511627776", 30));
    let out = run(&args);
    assert_eq!(out.status.code(), Some(1));
    let text = stderr(&out);
    assert!(
        text.contains("fewer or smaller processing times"),
        "got:\n{text}"
    );
}
