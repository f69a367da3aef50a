use std::fs;
use std::process::{Command, Output};

fn ffvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffvar"))
        .args(args)
        .env_remove("FFVAR_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn variance_both_modes() {
    let o = ffvar(&["variance", "--p", "2", "--k", "1", "--N", "3", "--h", "1", "--function", "liouville", "--mode", "both"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("q,N,h,function,variance_direct,variance_char,abs_gap,theorem_ratio")
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[..5], &["2", "3", "1", "liouville", "4"]);
    assert!(row[6].parse::<f64>().unwrap() <= 1e-6);
}

#[test]
fn variance_errors_and_unit() {
    assert_eq!(ffvar(&["variance", "--mode", "character", "--h", "2", "--N", "3"]).status.code(), Some(2));
    assert_eq!(ffvar(&["variance", "--p", "4", "--N", "3", "--h", "1"]).status.code(), Some(2));
    assert_eq!(
        ffvar(&["variance", "--N", "30", "--h", "1", "--mode", "direct", "--budget", "1000"]).status.code(),
        Some(4)
    );
    let o = ffvar(&["variance", "--function", "unit", "--N", "3", "--h", "1", "--mode", "direct"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().nth(1).unwrap().starts_with("2,3,1,unit,16,"));
}

#[test]
fn verify_default_and_fault() {
    let o = ffvar(&["verify", "--n-max", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS ")));

    let o = ffvar(&["verify", "--n-max", "6", "--self-test-fault"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let fail = text.lines().find(|l| l.starts_with("FAIL symmetry")).unwrap();
    assert!(fail.contains("t^6+t+1"), "{fail}");
}

#[test]
fn verify_single_suite() {
    let o = ffvar(&["verify", "--suite", "ramare", "--p", "2", "--k", "1", "--n-max", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("PASS ramare"));
}

#[test]
fn sweep_csv_json_and_empty_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let o = ffvar(&["sweep", "--p", "2", "--k", "1", "--N", "3:8", "--h", "1:2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "q,N,h,var_direct,var_char,bound_n5,ratio,largepf_ratio,smoothpf_ratio");
    assert_eq!(lines.len(), 13);

    let again = dir.path().join("again.csv");
    ffvar(&["sweep", "--N", "3:8", "--h", "1:2", "--threads", "3", "--out", again.to_str().unwrap()]);
    assert_eq!(fs::read(&out).unwrap(), fs::read(&again).unwrap());

    let o = ffvar(&["sweep", "--N", "3:4", "--h", "1", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 2);
    assert_eq!(rows[0]["N"], 3);

    assert_eq!(ffvar(&["sweep", "--N", "5:3", "--h", "1:2"]).status.code(), Some(2));
}

#[test]
fn cache_build_check_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = ffvar(&["cache", "--p", "2", "--k", "1", "--maxdeg", "12", "--cache-dir", d]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("count=747"));
    assert_eq!(ffvar(&["cache", "--check", "--cache-dir", d]).status.code(), Some(0));

    let path = dir.path().join("ffsieve-p2-k1.txt");
    let text = fs::read_to_string(&path).unwrap();
    let kept: Vec<&str> = text.lines().take(100).collect();
    fs::write(&path, kept.join("\n") + "\n").unwrap();
    let o = ffvar(&["cache", "--check", "--cache-dir", d]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 101"));
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_ffvar"))
        .args(["cache", "--p", "3", "--maxdeg", "4"])
        .env("FFVAR_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("ffsieve-p3-k1.txt").exists());
}
