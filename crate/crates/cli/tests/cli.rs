use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperquad"))
        .args(args)
        .env_remove("HYPERQUAD_JSON")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn tables_json_is_deterministic() {
    let first = run(&["tables", "--p", "11", "--json"]);
    assert_eq!(first.status.code(), Some(0));
    let text = stdout(&first);
    assert_eq!(text.lines().count(), 10);
    assert!(text.starts_with(
        "{\"p\":11,\"a\":1,\"b\":7,\"c\":9,\"H\":{\"u\":1,\"v\":7,\"w\":7,\"z\":2},\"degenerate\":false,"
    ));
    let again = run(&["tables", "--p", "11", "--json", "--sequential"]);
    assert_eq!(stdout(&again), text);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["P_shape"], "2^2*1");
        assert_eq!(v["H_shape"], "2^5*1^2");
    }
}

#[test]
fn env_var_selects_json() {
    let o = Command::new(env!("CARGO_BIN_EXE_hyperquad"))
        .args(["tables", "--p", "17"])
        .env("HYPERQUAD_JSON", "1")
        .output()
        .unwrap();
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 16);
    assert!(text.lines().all(|l| l.starts_with("{\"p\":17,")));
}

#[test]
fn text_table_layout() {
    let text = stdout(&run(&["tables", "--p", "11"]));
    assert!(text.contains("(1,7,9)   (1,7,7,2)   || (6,6,2)   (1,1,1,7)"));
    assert!(text.contains("(5,6,9)   (1,10,10,7) || (10,7,2)  (1,4,4,2)"));
}

#[test]
fn find_h_reports_the_table_row() {
    let o = run(&[
        "--json",
        "find-h",
        "--p",
        "17",
        "--order",
        "1",
        "--poly",
        "x^5+x^2+15*x+13",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(
        v["H"],
        serde_json::json!({"u": 1, "v": 13, "w": 13, "z": 3})
    );
}

#[test]
fn find_h_exit_one_when_nothing_found() {
    let triple = run(&["--json", "triple", "--p", "23", "--a", "1"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&triple).trim()).unwrap();
    let poly = v["P"].as_str().unwrap();
    let o = run(&["find-h", "--p", "23", "--order", "1", "--poly", poly]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn malformed_input_exits_two() {
    for args in [
        &["find-h", "--p", "11", "--order", "1", "--poly", "x^5+*x"][..],
        &["find-h", "--p", "12", "--order", "1", "--poly", "x^5+x+1"],
        &["riccati", "--mode", "ratfunc", "--poly", "x^2+(T)*x+(1)"],
        &["riccati", "--mode", "sym", "--poly", "x^2+q*x+1"],
        &[
            "order-power",
            "--p",
            "11",
            "--h",
            "1,2,3",
            "--t",
            "1",
            "--m",
            "2",
        ],
        &["tables"],
        &["scan", "--primes", "11", "--order", "3"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?} wrote to stdout");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn parse_error_names_position() {
    let o = run(&["factor-shape", "--p", "11", "--poly", "x^5+x^2/3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position"));
}

#[test]
fn riccati_symbolic_quadratic() {
    let o = run(&["--json", "riccati", "--mode", "sym", "--poly", "x^2+a*x+b"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["disc"], "a^2-4*b");
    assert_eq!(v["qr"], serde_json::json!(["-a*bp+2*b*ap", "a*ap-2*bp"]));
}

#[test]
fn riccati_quartic_substitution_kills_cubic_term() {
    let o = run(&[
        "--json",
        "riccati",
        "--mode",
        "sym",
        "--poly",
        "x^4+a*x^2+b*x+c",
        "--subst",
        "c=-a^2/12",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["qr"][3], "0");
    assert_eq!(
        v["qr"][1],
        "32/27*a^5*ap+8/3*a^3*b*bp+4*a^2*b^2*ap+9*b^3*bp"
    );
}

#[test]
fn quartic_identity_at_seven() {
    let o = run(&[
        "quartic",
        "--p",
        "7",
        "--a",
        "1",
        "--b",
        "2",
        "--verify-identity",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("identity: holds"));
}

#[test]
fn quintic_check_modes() {
    for args in [
        &["quintic-check", "--mode", "sym"][..],
        &[
            "quintic-check",
            "--mode",
            "ratfunc",
            "--p",
            "11",
            "--a",
            "8*T^3",
            "--b",
            "2*T^4",
            "--c",
            "2*T^5",
        ],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert!(stdout(&o).contains("b4 = b3 = b2 = b0 = 0: true"));
    }
}

#[test]
fn factor_shape_with_factors() {
    let o = run(&[
        "--json",
        "factor-shape",
        "--p",
        "11",
        "--poly",
        "x^5+x^2+7*x+9",
        "--factors",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["shape"], "2^2*1");
    assert_eq!(v["factors"].as_array().unwrap().len(), 3);
}

#[test]
fn order_power_of_table_entry() {
    // trace-zero Möbius matrix squares to a scalar: x^(p^2) - x
    let o = run(&[
        "order-power",
        "--p",
        "11",
        "--h",
        "1,7,7,2",
        "--t",
        "1",
        "--m",
        "2",
    ]);
    assert_eq!(stdout(&o).trim(), "(u,v,w,z) = (0,1,10,0), t = 2");
}

#[test]
fn scan_counts() {
    let o = run(&["--json", "scan", "--primes", "11,17,23,29", "--order", "1"]);
    let hits: Vec<u64> = stdout(&o)
        .lines()
        .map(|l| {
            serde_json::from_str::<serde_json::Value>(l).unwrap()["hits"]
                .as_u64()
                .unwrap()
        })
        .collect();
    assert_eq!(hits, [10, 16, 0, 0]);
}
