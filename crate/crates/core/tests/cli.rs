use std::path::PathBuf;
use std::process::{Command, Output};

fn fuzzytopo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fuzzytopo")).args(args).output().expect("binary runs")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fuzzytopo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_prints_rounded_and_full_value() {
    let g = scratch("p3.txt", "n 3\ne 0 1 0.5\ne 1 2 0.5\n");
    let o = fuzzytopo(&["compute", "--graph", g.to_str().unwrap(), "--index", "so"]);
    assert!(o.status.success());
    // degrees 0.5, 1.0, 0.5: two terms 0.5·√1.25
    let expected = 2.0 * 0.5 * 1.25f64.sqrt();
    assert_eq!(stdout(&o), format!("index,rounded,value\nSO,{:.4},{expected}\n", (expected * 1e4).round() / 1e4));
}

#[test]
fn family_reports_closed_form() {
    let o = fuzzytopo(&["family", "--family", "star", "--n", "12", "--m", "1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
    let (value, closed): (f64, f64) = (row[4].parse().unwrap(), row[5].parse().unwrap());
    assert!((value - closed).abs() < 1e-12);
    assert_eq!(format!("{:.4}", value), "1.0041");
}

#[test]
fn validation_errors_exit_one() {
    let bad = scratch("loop.txt", "n 2\ne 0 0 0.5\n");
    let o = fuzzytopo(&["compute", "--graph", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("self-loop at line 2"));

    let over = scratch("over.txt", "n 2\ne 0 1 1.5\n");
    let o = fuzzytopo(&["compute", "--graph", over.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("membership out of (0,1]"));

    assert_eq!(fuzzytopo(&["compute"]).status.code(), Some(1));
    assert_eq!(fuzzytopo(&["search", "--class", "tree", "--n", "40", "--m", "1", "--direction", "max"]).status.code(), Some(1));
    assert_eq!(fuzzytopo(&["family", "--family", "wheel", "--n", "5", "--m", "1"]).status.code(), Some(1));
    assert_eq!(fuzzytopo(&["family", "--family", "star", "--n", "5", "--m", "1", "--index", "so-alpha", "--alpha", "0.5"]).status.code(), Some(1));
}

#[test]
fn runtime_errors_exit_two() {
    let o = fuzzytopo(&["compute", "--graph", "/nonexistent/graph.txt"]);
    assert_eq!(o.status.code(), Some(2));
    let o = fuzzytopo(&["table1", "--output", "/nonexistent/dir/t1.csv"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn thread_cap_is_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_fuzzytopo")).arg("table2").env("FUZZYTOPO_THREADS", "lots").output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_fuzzytopo")).arg("table2").env("FUZZYTOPO_THREADS", "1").output().unwrap();
    assert!(o.status.success());
}

#[test]
fn search_tree_max_picks_star() {
    let o = fuzzytopo(&["search", "--class", "tree", "--n", "6", "--m", "1.0", "--index", "so", "--direction", "max"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 7);
    let winner = out.lines().skip(1).find(|l| l.ends_with(",winner")).unwrap();
    assert!(winner.split(',').nth(1) == Some("star"), "{winner}");
}

#[test]
fn verify_handshake_all_hold() {
    let o = fuzzytopo(&["verify", "--claim", "handshake", "--samples", "100", "--seed", "7"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("HANDSHAKE: 100/100 hold, 0 violations"));
}

#[test]
fn verify_graph_file_and_forms() {
    let g = scratch("star.txt", "n 4\ne 0 1 0.3\ne 0 2 0.3\ne 0 3 0.3\n");
    let out_csv = scratch("forms.csv", "");
    let o = fuzzytopo(&["verify", "--claim", "randic-lower", "--graph", g.to_str().unwrap(), "--output", out_csv.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out_csv).unwrap();
    assert_eq!(text.lines().count(), 3, "{text}");
    assert!(text.contains("RANDIC_LOWER[as-printed]") && text.contains("RANDIC_LOWER[degree-squared]"));
    let o = fuzzytopo(&["verify", "--claim", "randic-lower", "--variant", "long"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn help_documents_columns() {
    let o = fuzzytopo(&["table1", "--help"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("family, n, m_mu, index, computed, printed, agree"));
}

#[test]
fn table_outputs_have_expected_shape() {
    let t1 = stdout(&fuzzytopo(&["table1"]));
    assert_eq!(t1.lines().count(), 81);
    assert!(t1.contains("star,12,1,SO,1.0041,1.0041,true"));
    assert!(t1.contains("cycle,20,0.5,SO,0.0354,0.0354,true"));
    assert!(t1.contains("path,10,1,SO,0.2996,0.5441,false"));
    let t2 = stdout(&fuzzytopo(&["table2"]));
    assert!(t2.contains("complete,10,1,N,90.0000,90.0000,true"));
    assert!(t2.contains("star,10,1,R,3.0000,3.0000,true"));
    assert!(t2.contains("path,10,1,R,4.9142,6.3640,false"));
    assert!(!t2.contains('\r'));
}
