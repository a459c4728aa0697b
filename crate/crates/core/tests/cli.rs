use std::io::Write;
use std::process::{Command, Output, Stdio};

fn rimtori(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rimtori"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn deck_of_torus_example() {
    let o = rimtori(&["deck"], r#"{"kind": "deck", "rank": 2, "H": [], "s": [[2, 2]]}"#);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Z₂² ⊕ (2Z)²"), "{}", stdout(&o));
}

#[test]
fn series_table() {
    let o = rimtori(&["series", "eta12", "--order", "3", "--json"], "");
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "value");
    let got: Vec<&str> = v["items"]
        .as_array()
        .unwrap()
        .iter()
        .map(|i| i["got"].as_str().unwrap())
        .collect();
    assert_eq!(got, ["1", "12", "90", "520"]);
}

#[test]
fn rationals_print_in_lowest_terms() {
    let o = rimtori(&["series", "H", "--order", "1", "--json"], "");
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["items"][0]["got"], "-1/12");
}

#[test]
fn verify_exit_codes() {
    let o = rimtori(&["verify", "bryan-leung", "--json"], "");
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "pass");

    let o = rimtori(&["run"], r#"{"kind": "verify", "suite": "trr", "order": 12}"#);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn bad_documents_exit_2() {
    let o = rimtori(&["run"], "{\n\"kind\": \"deck\",\n\"rank\": 2,\n\"s\": [[2, 0]]\n}");
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("contact entries must be nonzero"), "{err}");
    assert!(err.contains("line 4"), "{err}");

    let o = rimtori(&["run"], r#"{"rank": 2, "s": [[1]]}"#);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("`kind`"));

    let o = rimtori(&["deck"], r#"{"kind": "series", "series": "G"}"#);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn psi_and_convolve_documents() {
    let o = rimtori(
        &["psi"],
        r#"{"kind": "psi", "rank": 2, "s": [[2]], "H1": [], "H2": [], "H12": [], "gamma": [1, 0]}"#,
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(2, 0)"), "{}", stdout(&o));

    let doc = r#"{"kind": "convolve", "torus": {"s1": [1], "s2": [1]},
                  "input": {"j1": 0, "j2": 0, "gamma": [1, 0], "twist_dprime": [0, 0]}}"#;
    let o = rimtori(&["convolve", "--json"], doc);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["items"][2]["got"], "(1, 0)");
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "equivariance", "--trials", "50", "--seed", "9"];
    let a = rimtori(&args, "");
    let b = rimtori(&args, "");
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}
