use std::process::{Command, Output};

use serde_json::Value;

fn rbi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rbi")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn constants_csv_and_json_agree() {
    let csv = rbi(&["constants", "--k", "1", "--m", "1", "--m-max", "2", "--format", "csv"]);
    assert_eq!(csv.status.code(), Some(0));
    let text = stdout(&csv);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,m,b_m,euler_number,c_km,d_km"));
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    assert_eq!(rows.len(), 2);

    let env = json(&rbi(&["constants", "--k", "1", "--m", "1", "--m-max", "2"]));
    assert_eq!(env["command"], "constants");
    assert_eq!(env["version"], env!("CARGO_PKG_VERSION"));
    let results = env["results"].as_array().unwrap();
    for (row, rec) in rows.iter().zip(results) {
        assert_eq!(row[2], rec["b_m"].as_str().unwrap());
        let c: f64 = row[4].parse().unwrap();
        assert_eq!(c, rec["c_km"].as_f64().unwrap());
    }
    let c11: f64 = rows[0][4].parse().unwrap();
    let c12: f64 = rows[1][4].parse().unwrap();
    assert!((c11 - 2.0 / std::f64::consts::PI).abs() < 1e-15);
    assert!((c12 - 8.0 / std::f64::consts::PI.powi(2)).abs() < 1e-15);
}

#[test]
fn usage_errors_exit_with_two() {
    let o = rbi(&["constants", "--m", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("m must be at least 1"));
    assert_eq!(rbi(&["constants", "--k", "65"]).status.code(), Some(2));
    assert_eq!(rbi(&["verify", "--k", "2", "--band", "5000"]).status.code(), Some(2));
    assert_eq!(rbi(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_reports_pass() {
    let o = rbi(&["verify", "--k", "2", "--m", "2", "--trials", "25", "--band", "16", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let env = json(&o);
    assert_eq!(env["results"]["failures"], 0);
    assert_eq!(env["results"]["records"].as_array().unwrap().len(), 25);
    let o = rbi(&["verify", "--k", "3", "--forward", "--trials", "25", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("index,seed,p_sup,dp_sup,ratio,passed\n"));
}

#[test]
fn sweep_is_deterministic() {
    let args = ["sweep", "--k-max", "2", "--m-max", "2", "--trials", "10", "--seed", "11", "--format", "csv"];
    let a = rbi(&args);
    let b = rbi(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().count(), 5);
    assert!(text.starts_with("k,m,min_margin,saturation_gap,failures\n"));
}

#[test]
fn interpolate_reports_the_l1_identity() {
    let env = json(&rbi(&["interpolate", "--k", "2", "--m", "3"]));
    let r = &env["results"];
    let d = (std::f64::consts::PI / 4.0).powi(3) / 3.0;
    assert!((r["residual_l1"].as_f64().unwrap() - d).abs() < 1e-10);
    assert!(r["discrepancy"].as_f64().unwrap() < 1e-10);
    assert_eq!(r["zero_structure"]["zero_count"], 4);
    assert_eq!(r["nodes"]["full_zero_set_over_pi"].as_array().unwrap().len(), 4);
}

#[test]
fn extremal_round_trips_and_writes_files() {
    let dir = std::env::temp_dir().join(format!("rbi-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("extremal.json");
    let o = rbi(&["extremal", "--k", "2", "--m", "3", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let env: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let f: reverse_bernstein::CirclePiecewisePoly = serde_json::from_value(env["results"]["function"].clone()).unwrap();
    let expected = reverse_bernstein::waves::make_extremal(2, 3).unwrap();
    assert!(f.same_function(&expected));
    assert_eq!(env["results"]["sup_norm"]["mantissa"], "1/192");
    std::fs::remove_dir_all(&dir).unwrap();
}
