use std::process::{Command, Output};

fn sunrise(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sunrise")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_json_report() {
    let o = sunrise(&["verify", "--id", "DET-N2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.ends_with("}\n"));
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["version", "precision_policy", "results"]);
    let r = &v["results"][0];
    let fields: Vec<&String> = r.as_object().unwrap().keys().collect();
    assert_eq!(
        fields,
        [
            "identity_id",
            "citation",
            "values",
            "agreed_digits",
            "target_digits",
            "status",
            "elapsed_seconds",
            "precision_used_bits",
            "reason"
        ]
    );
    assert_eq!(r["identity_id"], "DET-N2");
    assert_eq!(r["status"], "PASS");
    assert!(r["values"][0]["value"].is_string());
}

#[test]
fn verify_text_report() {
    let o = sunrise(&["verify", "--id", "IKM14-GAMMA15", "--id", "FACTOR3", "--digits", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("PASS"));
    assert!(s.contains("FACTOR3"));
    assert!(s.ends_with("2/2 passed\n"));
}

#[test]
fn verify_writes_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = sunrise(&["verify", "--id", "DET-N2", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let s = std::fs::read_to_string(&path).unwrap();
    assert!(s.ends_with('\n'));
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["results"][0]["status"], "PASS");
}

#[test]
fn unknown_identity_exits_2() {
    let o = sunrise(&["verify", "--id", "NOPE"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("NOPE"));
}

#[test]
fn bad_arguments_rejected() {
    assert_ne!(sunrise(&["verify", "--cost", "cheap"]).status.code(), Some(0));
    assert_ne!(sunrise(&["frobnicate"]).status.code(), Some(0));
}

#[test]
fn list_json() {
    let o = sunrise(&["list", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ids: Vec<&str> = v["identities"].as_array().unwrap().iter().map(|i| i["id"].as_str().unwrap()).collect();
    assert!(ids.len() >= 35);
    assert!(ids.contains(&"SUNRISE-WATSON"));
}

#[test]
fn list_text() {
    let o = sunrise(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l.starts_with("DET-N2")));
}

#[test]
fn eval_quantities() {
    let o = sunrise(&["eval", "IKM(1,5;1)", "--digits", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("2.515320118870661382"), "{}", stdout(&o));
    let o = sunrise(&["eval", "PFQ(1/2,1/2;1;1/2)", "--digits", "15"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("1.1803405990161"), "{}", stdout(&o));
    let o = sunrise(&["eval", "LVALUE_F46", "--digits", "15"]);
    assert!(stdout(&o).starts_with("40.245121901930"), "{}", stdout(&o));
    let o = sunrise(&["eval", "W4S(1)", "--digits", "12"]);
    let w: f64 = stdout(&o).trim().parse().unwrap();
    assert!((w - 0.309866780462).abs() < 1e-11, "{w}");
    let o = sunrise(&["eval", "NOT_A_THING", "--digits", "10"]);
    assert_eq!(o.status.code(), Some(2));
}
