use std::process::{Command, Output};

fn deadend(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deadend"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn ball_prints_sphere_sizes() {
    let out = deadend(&["ball", "Z", "Z:{2,3}", "5"]);
    assert!(out.status.success());
    let sizes: Vec<String> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().to_string())
        .collect();
    assert_eq!(sizes, ["1", "4", "8", "6", "6", "6"]);
}

#[test]
fn ball_accepts_flags() {
    let positional = deadend(&["ball", "H", "C", "1"]);
    let flags = deadend(&["ball", "--group", "H", "--genset", "C", "--radius", "1"]);
    assert_eq!(stdout(&positional), stdout(&flags));
    assert!(stdout(&flags).ends_with("1,17,18\n"));
}

#[test]
fn ball_limit_exits_one() {
    let out = deadend(&["ball", "H", "D", "6", "--max-elements", "100"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("radius,sphere,ball\n0,1,1\n"));
}

#[test]
fn depth_reports_exact_values() {
    let out = deadend(&["depth", "H", "C", "gn(1)"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("distance: 4"));
    assert!(text.contains("depth: Exact(3)"));
    let a = stdout(&deadend(&["depth", "--group", "H", "--genset", "D", "a"]));
    assert!(a.contains("depth: Exact(2)"));
}

#[test]
fn witnesses_meet_the_bound() {
    let k = stdout(&deadend(&["witness", "K", "n=5", "gn"]));
    assert!(k.contains("length: 20 (bound 4n = 20, within)"));
    assert!(k.contains("eval(witness) = element: true"));
    let h = stdout(&deadend(&["witness", "H", "n=1", "gn"]));
    assert!(h.contains("length: 4"));
    let lone = stdout(&deadend(&["witness", "K", "n=1", "{0}@(0,0,0)"]));
    assert!(lone.contains("witness: a\n"));
}

#[test]
fn verify_and_report_round_trip() {
    let dir = std::env::temp_dir().join(format!("deadend-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("relators.json");
    let out = deadend(&["verify", "relators", "--json", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = deadend(&["report", file.to_str().unwrap()]);
    assert_eq!(report.status.code(), Some(0));
    assert_eq!(stdout(&report), "relators: PASS (4 of 4 claims pass)\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_z_depth_range() {
    let out = deadend(&["verify", "Z-depth", "n=2..12"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!stdout(&out).contains("[FAIL]"));
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(deadend(&["ball", "Q", "C", "1"]).status.code(), Some(2));
    assert_eq!(deadend(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(deadend(&["ball", "H", "C"]).status.code(), Some(2));
}
