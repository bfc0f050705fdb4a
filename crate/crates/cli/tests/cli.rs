use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dstar-zeta")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn count_examples() {
    assert_eq!(stdout(&["count", "--p", "3", "--alpha", "0", "--beta", "0", "--n", "1"]).trim(), "9");
    assert_eq!(stdout(&["count", "--p", "3", "--alpha", "0", "--beta", "0", "--n", "0"]).trim(), "1");
    assert_eq!(stdout(&["count", "--p", "3", "--alpha", "1", "--beta", "0", "--n", "1"]).trim(), "15");
    assert_eq!(stdout(&["count", "--p", "5", "--beta", "2", "--n", "3", "--mode", "brute"]).trim(),
        stdout(&["count", "--p", "5", "--beta", "2", "--n", "3"]).trim());
}

#[test]
fn count_guard_exits_two() {
    let out = run(&["count", "--p", "3", "--n", "9", "--mode", "brute"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("guard"));
    assert_eq!(run(&["count", "--p", "4", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn zeta_x2_latex() {
    assert_eq!(
        stdout(&["zeta", "--group", "x2", "--symbolic", "--format", "latex"]).trim(),
        "\\frac{1+p^{10-4s}}{(1-p^{8-3s})(1-p^{11-4s})(1-p^{12-5s})}"
    );
}

#[test]
fn zeta_x2_series_json() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["zeta", "--group", "x2", "--p", "3", "--series", "4"])).unwrap();
    let c = &v["coefficients"];
    assert_eq!(c["0"], "1");
    assert_eq!(c["3"], "6561");
    assert_eq!(c["4"], "236196");
    assert_eq!(c.as_object().unwrap().len(), 3);
}

#[test]
fn zeta_x3_symbolic_round_trips() {
    let out = stdout(&["zeta", "--group", "x3", "--symbolic"]);
    let f = dstar_zeta::format::rational_from_json(&out).unwrap();
    assert!(f.rational_eq(&dstar_zeta::zeta::zeta_x3_closed(dstar_zeta::zeta::X3Form::SVars)));
    assert_eq!(dstar_zeta::format::rational_json(&f), out.trim_end());
}

#[test]
fn zeta_series_methods_agree() {
    let closed = stdout(&["zeta", "--group", "x3", "--p", "3", "--series", "12"]);
    assert_eq!(stdout(&["zeta", "--group", "x3", "--p", "3", "--series", "12", "--method", "formula"]), closed);
    assert_eq!(stdout(&["zeta", "--group", "x3", "--p", "3", "--series", "10", "--method", "oracle"]),
        stdout(&["zeta", "--group", "x3", "--p", "3", "--series", "10"]));
}

#[test]
fn x3_at_two() {
    assert!(run(&["zeta", "--group", "x3", "--p", "2", "--series", "5"]).status.success());
    let out = run(&["zeta", "--group", "x3", "--p", "2", "--series", "5", "--method", "oracle"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["zeta", "--group", "x3", "--x-vars", "--format", "plain"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn theta_examples() {
    let out = stdout(&["theta", "--p", "3", "--k", "0", "--m", "0", "--n", "0"]);
    assert!(out.contains("case 1") && out.contains("theta = 1\n"));
    let formula = stdout(&["theta", "--p", "3", "--k", "1", "--m", "1", "--n", "1"]);
    assert_eq!(stdout(&["theta", "--p", "3", "--k", "1", "--m", "1", "--n", "1", "--mode", "oracle"]), formula);
    let neg = stdout(&["theta", "--p", "3", "--k", "-2", "--m", "2", "--n", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&neg).unwrap();
    assert_eq!(v["case"], "2b");
    assert_eq!(v["theta_tilde"], "81");
}

#[test]
fn theta_invalid_args_exit_two() {
    assert_eq!(run(&["theta", "--p", "3", "--k", "3", "--m", "1", "--n", "1"]).status.code(), Some(2));
    assert_eq!(run(&["theta", "--p", "2", "--k", "0", "--m", "0", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["theta", "--p", "3"]).status.code(), Some(2));
}

#[test]
fn fseries_example() {
    let out = stdout(&["fseries", "--alpha", "1", "--terms", "2"]);
    assert!(out.starts_with("1 + ((-1)*p + (2)*p^2)*T^1"), "{out}");
}

#[test]
fn verify_suites() {
    let out = stdout(&["verify", "--suite", "cones"]);
    assert!(!out.contains("FAIL"));
    let out = stdout(&["verify", "--suite", "funeq"]);
    assert!(out.contains("(1, 32, 10)"));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
}
