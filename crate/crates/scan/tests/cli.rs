use std::path::Path;
use std::process::{Command, Output};

use multbound_scan::checkpoint::Checkpoint;
use multbound_scan::ScanReport;

fn multbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multbound")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn read_report(path: &Path) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("elapsed_seconds");
    v
}

#[test]
fn check_hf_example_3_1() {
    let o = multbound(&["check-hf", "1,3,6,7,3,1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for totals in ["total: 1 12 19 8", "total: 1 6 13 8", "total: 1 6 7 2"] {
        assert!(text.contains(totals), "{totals} missing in\n{text}");
    }
    assert!(text.contains("bounds: 15 ≤ 21 ≤ 80/3"), "{text}");
    assert!(text.contains("126 <= 160 (holds)"));
    assert!(text.trim_end().ends_with("status: BOUND_HOLDS"));
}

#[test]
fn check_hf_example_2_4() {
    let text = stdout(&multbound(&["check-hf", "1,3,6,9,9,6,2"]));
    assert!(text.contains("total: 1 16 27 12"));
    assert!(text.contains("bounds: 27 ≤ 36 ≤ 42"));
}

#[test]
fn check_hf_rejects_non_o_sequence() {
    let o = multbound(&["check-hf", "1,2,1,0,0,6,3,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("NOT_ADMISSIBLE"));
}

#[test]
fn check_hf_example_3_4_names_the_colon() {
    let text = stdout(&multbound(&["check-hf", "1,3,6,10,15,17,17,17,15,10"]));
    assert!(text.contains("colon (1,2,1,0,0,6,3,1) is not an O-sequence"), "{text}");
    assert!(text.contains("status: ELIMINATED (er+aci)"));
}

#[test]
fn check_ideal_example_4_7() {
    let o = multbound(&["check-ideal", "a^3;b^4;c^4;a*b^2;a^2*b*c^3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("regularity: 6"));
    assert!(text.contains("multiplicity: 31"));
    assert!(text.contains("truncation analysis: CERTIFIED"), "{text}");
    assert!(text.contains("31 <= 57"));
}

#[test]
fn check_ideal_example_4_1_truncation() {
    let text = stdout(&multbound(&["check-ideal", "a^3;b^3;c^3;a*b;b*c", "--truncate", "3"]));
    assert!(text.contains("multiplicity 11 vs 13 after truncation (difference 2)"), "{text}");
    assert!(text.contains("rows >= 3 unchanged: true"));
}

#[test]
fn check_ideal_principal() {
    let text = stdout(&multbound(&["check-ideal", "a"]));
    assert!(text.contains("multiplicity: 1"));
    assert!(text.contains("bounds: 1 ≤ 1 ≤ 1"));
}

#[test]
fn check_ideal_errors() {
    let o = multbound(&["check-ideal", "a^3;a^2*b;a^2*c;a*b^2;a*b*c;a*c^2;b^4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("NEEDS_CAP"));
    let o = multbound(&["check-ideal", "a^3;a^2*b;a^2*c;a*b^2;a*b*c;a*c^2;b^4", "--degree-cap", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("total: 1 7 9 3"));
    let o = multbound(&["check-ideal", "a^3;b^%"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("PARSE_ERROR"));
    let o = multbound(&["check-ideal", "a^2;b^2", "--char", "4"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("NOT_PRIME"));
}

/// Frozen regression counts from full runs.
#[test]
fn scan_small_socle_counts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = multbound(&["scan", "--socle-max", "5", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report: ScanReport = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!((report.counts.scanned, report.counts.bound_holds, report.counts.eliminated), (813, 810, 3));
    let hfs: Vec<&str> = report.exceptions.iter().map(|r| r.hf.as_str()).collect();
    assert_eq!(hfs, ["1,3,4,4,3", "1,3,6,7,6,2", "1,3,6,7,7,5"]);
}

#[test]
fn scan_one_variable() {
    let o = multbound(&["scan", "--vars", "1", "--prefix", "1", "--socle-max", "15"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("scanned: 16") && text.contains("bound holds: 16"), "{text}");
}

#[test]
fn scan_is_independent_of_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    multbound(&["scan", "--socle-max", "7", "--jobs", "1", "--out", a.to_str().unwrap()]);
    multbound(&["scan", "--socle-max", "7", "--jobs", "3", "--out", b.to_str().unwrap()]);
    assert_eq!(read_report(&a), read_report(&b));
}

#[test]
fn interrupted_scan_resumes_to_the_same_report() {
    let dir = tempfile::tempdir().unwrap();
    let full = dir.path().join("full.json");
    let part = dir.path().join("part.json");
    let cp = dir.path().join("scan.ckpt");
    let cp_arg = cp.to_str().unwrap();
    multbound(&["scan", "--socle-max", "7", "--out", full.to_str().unwrap()]);

    let o = multbound(&[
        "scan", "--socle-max", "7", "--checkpoint", cp_arg, "--checkpoint-every", "500", "--stop-after", "7000",
        "--out", part.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("status: INCOMPLETE"));
    let saved = Checkpoint::load(&cp).unwrap().unwrap();
    assert_eq!(saved.counts.scanned, 7000);
    assert_eq!(std::fs::read_to_string(&cp).unwrap().lines().count(), 1);

    // a second interruption, then completion
    multbound(&["scan", "--socle-max", "7", "--checkpoint", cp_arg, "--stop-after", "9000"]);
    let o = multbound(&["scan", "--socle-max", "7", "--checkpoint", cp_arg, "--out", part.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(read_report(&part), read_report(&full));
}

#[test]
fn checkpoint_from_other_parameters_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("scan.ckpt");
    let cp_arg = cp.to_str().unwrap();
    multbound(&["scan", "--socle-max", "6", "--checkpoint", cp_arg, "--stop-after", "100"]);
    let o = multbound(&["scan", "--socle-max", "7", "--checkpoint", cp_arg]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("different parameters"));
    // filter spelling is normalized before comparing
    let o = multbound(&["scan", "--socle-max", "6", "--checkpoint", cp_arg, "--filters", "aci,growth,gen,er"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn csv_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    multbound(&["scan", "--socle-max", "6", "--format", "csv", "--out", out.to_str().unwrap()]);
    let mut rdr = csv::Reader::from_path(&out).unwrap();
    assert_eq!(rdr.headers().unwrap(), vec!["hf", "e", "shifts", "lhs", "rhs", "status", "reason"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().any(|r| &r[0] == "1,3,6,10,15,15,11" && &r[2] == "5 8 9" && &r[3] == "366" && &r[4] == "360"));
}

#[test]
fn unresolved_scan_exits_with_two() {
    // without the filters every violation stays open
    let o = multbound(&["scan", "--socle-max", "6", "--filters", ""]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("unresolved: 5"));
}
