use std::process::{Command, Output};

fn salem(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_salem"))
        .args(args)
        .env_remove("SALEM_DIGITS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn classify_prints_root() {
    let o = salem(&["classify", "--poly", "z^4-z^3-z^2-z+1"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("label: Salem"), "{s}");
    assert!(s.contains("root: 1.722083806"), "{s}");
}

#[test]
fn classify_json() {
    let o = salem(&["classify", "--poly", "[-1,-1,0,1]", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["label"], "Pisot");
}

#[test]
fn digits_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_salem"))
        .args(["classify", "--poly", "z^4-z^3-z^2-z+1"])
        .env("SALEM_DIGITS", "4")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("root: 1.7221"));
}

#[test]
fn minpoly_strips_cyclotomic_factor() {
    let o = salem(&["minpoly", "--poly", "z^14-z^13-z^7-z+1"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("minimal polynomial: z^10-z^8-z^5-z^2+1"), "{s}");
    assert!(s.contains("Phi10"), "{s}");
}

#[test]
fn decode_code() {
    let o = salem(&["decode", "--code", "5,2,2,-1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "z^7-2z^5-2z^2+1");
}

#[test]
fn family_data() {
    let o = salem(&["family", "--pisot", "z^3-z-1", "--eps", "-1", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["n0"], 8);
    assert_eq!(v["r"], "7");
}

#[test]
fn parse_errors_exit_two() {
    assert_eq!(salem(&["classify", "--poly", "z^^2"]).status.code(), Some(2));
    assert_eq!(salem(&["decode", "--code", "1,2"]).status.code(), Some(2));
    assert_eq!(salem(&["search", "--length", "5", "--min", "x", "--max", "2"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one() {
    let o = salem(&["minpoly", "--poly", "z^2+1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = salem(&["search", "--length", "4", "--min", "1.2", "--max", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_table_passes() {
    let o = salem(&["verify-table", "families"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn verify_table_detects_bad_row() {
    let dir = std::env::temp_dir().join(format!("salem-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("families.csv");
    let good = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/families.csv")).unwrap();
    let header = good.lines().find(|l| !l.starts_with('#')).unwrap();
    let row = good.lines().filter(|l| !l.starts_with('#')).nth(1).unwrap();
    let bad = row.replacen(",3,", ",4,", 1);
    assert_ne!(bad, row);
    std::fs::write(&path, format!("{header}\n{bad}\n")).unwrap();
    let o = salem(&["verify-table", "families", "--file", path.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn search_length_five_matches_golden() {
    let o = salem(&["search", "--length", "5", "--min", "1.17", "--max", "3.2", "--format", "csv"]);
    assert!(o.status.success());
    let golden = include_str!("../../core/tests/golden/search_length5.csv");
    assert_eq!(stdout(&o), golden);
}
