use std::process::{Command, Output};

fn infchow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_infchow")).args(args).current_dir(env!("CARGO_MANIFEST_DIR")).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Exit status and first stdout line.
fn value(args: &[&str]) -> (i32, String) {
    let o = infchow(args);
    (o.status.code().unwrap(), stdout(&o).lines().next().unwrap_or("").to_string())
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/golden/{}", env!("CARGO_MANIFEST_DIR"), name)).unwrap()
}

#[test]
fn li_of_two_exp_t() {
    assert_eq!(value(&["li", "--m", "2", "--r", "3", "[2*exp(t)]"]), (0, "-1".into()));
}

#[test]
fn json_matches_golden_and_is_stable() {
    let args = ["li", "--m", "2", "--r", "3", "--json", "[2*exp(t)]"];
    let a = infchow(&args);
    assert_eq!(stdout(&a), golden("li.json"));
    assert_eq!(a.stdout, infchow(&args).stdout);
    let args = ["rho-cycle", "--json", "inputs/demo_cycle.txt"];
    assert_eq!(stdout(&infchow(&args)), golden("rho_cycle_demo.json"));
}

#[test]
fn lmr_of_exponentials() {
    // ℓ_{2,3}(e^{3t²} ∧ e^{5t}) = 1·(3·5 - 0)
    assert_eq!(value(&["lmr", "--m", "2", "--r", "3", "exp(3*t^2) /\\ exp(5*t)"]), (0, "15".into()));
}

#[test]
fn omega_generator_examples() {
    assert_eq!(value(&["omega", "--m", "2", "--r", "3", "exp(s*t^2) /\\ exp(s^2*t) /\\ s"]), (0, "s^2 ds".into()));
    assert_eq!(value(&["omega", "--m", "3", "--r", "5", "exp(t^3) /\\ exp(s*t) /\\ exp(s^2*t)"]), (0, "s^2 ds".into()));
    assert_eq!(value(&["omega", "--m", "2", "--r", "3", "exp(t^2) /\\ 2 /\\ 3"]), (0, "0".into()));
    // ω_{2,3}((s+t², s)∧(1-s, 1-s)∧(e^{st}, e^{st})) = ds/(1-s)
    let o = infchow(&["omega", "--m", "2", "--r", "3", "s+t^2 /\\ 1-s /\\ exp(s*t)", "s /\\ 1-s /\\ exp(s*t)"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "((-1)/(s - 1)) ds\nok   termwise evaluation agrees\n");
}

#[test]
fn boundary_tensor_is_killed() {
    let (code, v) = value(&["Lmr", "--m", "3", "--r", "5", "[s*exp(t) + t^3](x)(s*exp(t) + t^3)"]);
    assert_eq!((code, v.as_str()), (0, "0"));
}

#[test]
fn residue_of_a_pair() {
    // both sides differ only at t^3 in a slot of the form s·(unit)
    let (code, v) = value(&["res-omega", "--m", "3", "--r", "4", "exp(2*t) /\\ exp(3*t) /\\ s", "exp(2*t) /\\ exp(3*t) /\\ s+t^3", "--at", "inf"]);
    assert_eq!(code, 0);
    assert!(!v.is_empty());
    assert_eq!(value(&["res-omega", "--m", "3", "--r", "4", "s /\\ 2 /\\ 3", "s /\\ 2 /\\ 3", "--at", "s^2-2"]), (0, "0".into()));
}

#[test]
fn base_qx() {
    let (code, v) = value(&["li", "--base", "Qx", "--m", "2", "--r", "3", "[2*exp(x*t)]"]);
    assert_eq!(code, 0);
    assert!(v.contains('x'), "{}", v);
    let o = infchow(&["li", "--m", "2", "--r", "3", "[2*exp(x*t)]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("'x' needs --base Qx"));
}

#[test]
fn input_errors_exit_2_with_position() {
    let o = infchow(&["li", "--m", "2", "--r", "3", "[exp(1)]"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr(&o), "error: argument 1, column 6: exp argument has nonzero constant term 1\n  [exp(1)]\n       ^\n");
    let o = infchow(&["li", "--m", "2", "--r", "3", "[1 + t]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("x(1-x) is not a unit"));
    let o = infchow(&["lmr", "--m", "2", "--r", "3", "s /\\ 1/t"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("column 8: division by a non-unit"));
    assert_eq!(infchow(&["li", "--m", "2", "--r", "4", "[2]"]).status.code(), Some(2));
    assert_eq!(infchow(&["li", "[2]"]).status.code(), Some(2));
    assert_eq!(infchow(&["rho-cycle", "inputs/missing.txt"]).status.code(), Some(2));
}

#[test]
fn document_errors_name_the_line() {
    let dir = std::env::temp_dir().join(format!("infchow-doc-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("bad.txt");
    std::fs::write(&p, "m 2\nr 3\ncycle u ; 1 - u ; 1 - (3 + t)/\n").unwrap();
    let o = infchow(&["rho-cycle", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.txt:3, column 31: expected an expression"), "{}", stderr(&o));
    std::fs::write(&p, "m 2\nr 3\nfoo 1\n").unwrap();
    assert!(stderr(&infchow(&["rho-cycle", p.to_str().unwrap()])).contains("unknown statement 'foo'"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn demo_cycle() {
    assert_eq!(value(&["rho-cycle", "inputs/demo_cycle.txt"]), (0, "1/72".into()));
    assert_eq!(value(&["rho-cycle", "--m", "3", "--r", "5", "--prec", "5", "inputs/demo_cycle.txt"]), (0, "1/192".into()));
}

#[test]
fn congruence_documents() {
    let o = infchow(&["congruence", "inputs/demo_cycle.txt", "inputs/demo_cycle_moved.txt"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1/72 1/72\nok   congruent mod t^2\nok   regulator values agree\n");
    let o = infchow(&["congruence", "inputs/demo_cycle.txt", "inputs/demo_cycle_below.txt"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("1/72 1/9\nFAIL congruent mod t^2"));
}

#[test]
fn curve_documents() {
    assert_eq!(value(&["rho-curve", "inputs/worked_triple.txt"]), (0, "-1/8".into()));
    assert_eq!(value(&["rho-curve", "--seed", "7", "inputs/worked_triple.txt"]), (0, "-1/8".into()));
    let o = infchow(&["rho-curve", "inputs/stated_triple.txt"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not good at s - 2"));
    assert_eq!(value(&["rho-cocycle", "inputs/coboundary.txt"]), (0, "0".into()));
    assert_eq!(value(&["rho-cocycle", "inputs/two_charts.txt"]), (0, "-1/8".into()));
    assert_eq!(infchow(&["rho-cocycle", "--base", "Qx", "inputs/two_charts.txt"]).status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let o = infchow(&["verify", "fiveterm", "--m", "2", "--r", "3", "--trials", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("fiveterm: 2 checks, 0 failed\n"), "{}", stdout(&o));
    let args = ["verify", "milnor", "--json", "--seed", "3"];
    let a = infchow(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, infchow(&args).stdout);
    assert!(stdout(&a).contains("\"value\": \"pass\""));
    assert_eq!(infchow(&["verify", "nosuch"]).status.code(), Some(2));
}
