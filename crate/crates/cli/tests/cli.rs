use std::process::{Command, Output};

use serde_json::Value;

fn redvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_redvar"))
        .args(args)
        .env_remove("REDVAR_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = redvar(args);
    let v = serde_json::from_slice(&out.stdout).expect("json on stdout");
    (v, out.status.code().unwrap())
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn pair_dimensions() {
    for (args, dim_p, rank, dim_r, ty) in [
        (&["pair", "--square", "sl3"][..], "8", "2", "6", "A2"),
        (&["pair", "--transpose", "3"][..], "5", "2", "3", "A2"),
        (&["pair", "--square", "g2"][..], "14", "2", "12", "G2"),
    ] {
        let (v, code) = json(args);
        assert_eq!(code, 0);
        let p = &v["pair"];
        assert_eq!(p["dim_p"], dim_p, "{args:?}");
        assert_eq!(p["rank"], rank, "{args:?}");
        assert_eq!(p["dim_R"], dim_r, "{args:?}");
        assert_eq!(p["root_type"], ty, "{args:?}");
    }
}

#[test]
fn degenerate_square_of_sl2() {
    let (v, code) = json(&[
        "degenerate",
        "--square",
        "sl2",
        "--plane",
        "cartan",
        "--curve",
        "1*e12@1 + 1*e12@2 : -1",
    ]);
    assert_eq!(code, 0);
    let d = &check(&v, "limit")["details"];
    assert_eq!(d["limit"][0], "1*e12@1 + -1*e12@2");
    assert_eq!(d["special"], true);
    assert_eq!(d["rigidity"]["nilpotent_limit"], true);
    assert_eq!(check(&v, "oracle-agreement")["status"], "pass");
}

#[test]
fn identity_arc_fixes_the_plane() {
    let (v, code) = json(&["degenerate", "--transpose", "3", "--plane", "cartan"]);
    assert_eq!(code, 0);
    let d = &check(&v, "limit")["details"];
    assert_eq!(d["magnitude_flag"]["trivial"], true);
    assert_eq!(d["wedge_order"], "0");
    assert_eq!(d["special"], false);
}

#[test]
fn raw_diagonal_arc() {
    let (v, code) = json(&[
        "degenerate",
        "--raw",
        "3",
        "--diagonal",
        "0,1,2",
        "--plane",
        "1,1,0;0,1,1",
    ]);
    assert_eq!(code, 0);
    let d = &check(&v, "limit")["details"];
    assert_eq!(d["limit"], serde_json::json!(["1,0,0", "0,1,0"]));
    assert_eq!(d["wedge_order"], "1");
    assert_eq!(check(&v, "negative-control")["details"]["triggered"], true);
}

#[test]
fn roots_queries() {
    let (v, code) = json(&["roots", "--survivors"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"][0]["status"], "pass");

    let (v, code) = json(&["roots", "--malcev", "G2"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"][0]["details"]["max_size"], "3");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(redvar(&["pair"]).status.code(), Some(2));
    assert_eq!(redvar(&["frobnicate"]).status.code(), Some(2));
    let out = redvar(&["pair", "--square", "foo"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("stage"));
    let out = redvar(&["degenerate", "--square", "sl2", "--plane", "1*bogus@1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--check", "linear-families", "--seed", "7"];
    let a = redvar(&args);
    let b = redvar(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["config"]["seed"], "7");
}

#[test]
fn failing_check_exits_1() {
    let (v, code) = json(&["verify", "--check", "coxeter-table"]);
    assert_eq!(code, 1);
    assert_eq!(v["checks"][0]["status"], "fail");
}

#[test]
fn text_format() {
    let out = redvar(&["--format", "text", "roots", "--survivors"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("pass  survivors"), "{s}");
}
