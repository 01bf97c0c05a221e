use std::process::{Command, Output};

use serde_json::Value;

fn chevalley(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chevalley"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = chevalley(&all);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn analyze_reports_sharp_bound() {
    let v = json(&["analyze", "--field", "GF(3)", "--n", "3", "x1*x2 - x3^2"]);
    assert_eq!(v["count"], 9);
    assert_eq!(v["is_affine"], false);
    let improved4 = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == "improved4")
        .unwrap();
    assert_eq!(improved4["status"], "pass");
    assert_eq!(improved4["margin"]["num"], "0");

    let text = chevalley(&["analyze", "--field", "GF(3)", "--n", "3", "x1*x2 - x3^2"]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.contains("N = 9"), "{text}");
    assert!(text.contains("improved4"));
}

#[test]
fn count_lists_zeros() {
    let v = json(&[
        "count",
        "--field",
        "GF(4)",
        "--n",
        "2",
        "x1*x2 + [t]",
        "--list",
    ]);
    assert_eq!(v["count"], 3);
    assert_eq!(v["zeros"].as_array().unwrap().len(), 3);
}

#[test]
fn construct_each_family() {
    assert_eq!(
        json(&["construct", "norm", "--q", "3", "--d", "3"])["measured_count"],
        1
    );
    assert_eq!(
        json(&["construct", "prop41", "--d", "4"])["measured_count"],
        4
    );
    assert_eq!(
        json(&["construct", "prop42", "--d", "4"])["measured_count"],
        6
    );
    let catalog = json(&["construct", "catalog", "--q", "3"]);
    let counts: Vec<u64> = catalog
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["measured_count"].as_u64().unwrap())
        .collect();
    assert_eq!(counts, [6, 9, 9, 21]);
}

#[test]
fn bounds_compare_and_lemma31() {
    let b = json(&[
        "bounds",
        "--q",
        "7",
        "--n",
        "3",
        "--d",
        "2",
        "--homogeneous",
    ]);
    let improved3 = b["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .find(|x| x["id"] == "improved3")
        .unwrap();
    assert_eq!(
        improved3["value"],
        serde_json::json!({"num": "56", "den": "3"})
    );
    assert_eq!(improved3["min_count"], "19");

    let c = json(&["compare", "--q", "3", "--n", "4", "--d", "2"]);
    assert_eq!(c["verdict"], "bound4");
    assert_eq!(c["agree"], true);

    let l = json(&["lemma31", "--q", "5", "--v", "2"]);
    assert_eq!(l["holds"], true);
    assert_eq!(l["exception_discrepancy"], true);
}

#[test]
fn verify_modes() {
    assert_eq!(
        json(&["verify", "--preset", "paper-regression"])["passed"],
        true
    );
    let l = json(&[
        "verify", "--lemma", "2.3", "--part", "1", "--q", "2", "--t", "3",
    ]);
    assert_eq!(l["status"], "pass");
    assert_eq!(l["subsets_checked"], 256);
    let t = json(&[
        "verify",
        "--thm",
        "2.1",
        "--m",
        "2",
        "--field",
        "GF(3)",
        "--n",
        "3",
        "x1*x2 - x3^2",
    ]);
    assert_eq!(t["status"], "pass");
    let e = json(&[
        "verify",
        "--exhaustive-forms",
        "--field",
        "GF(2)",
        "--n",
        "3",
        "--d",
        "2",
    ]);
    assert_eq!(e["instances_run"], 63);
    assert_eq!(e["aborted"], false);
}

#[test]
fn random_campaign_is_reproducible() {
    let args = [
        "verify", "--random", "40", "--field", "GF(3)", "--n-max", "4", "--seed", "11", "--format",
        "json",
    ];
    let a = chevalley(&args);
    let b = chevalley(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let other = chevalley(&[
        "verify", "--random", "40", "--field", "GF(3)", "--n-max", "4", "--seed", "12", "--format",
        "json",
    ]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, "format = \"json\"\nfield = \"GF(5)\"\nn = 3\n").unwrap();
    let cfg = path.to_str().unwrap();

    let out = chevalley(&["--config", cfg, "count", "x1*x2 - x3^2"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], 25);

    let out = chevalley(&["--config", cfg, "count", "--field", "GF(3)", "x1*x2 - x3^2"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], 9);

    std::fs::write(&path, "colour = \"red\"\n").unwrap();
    assert_eq!(
        chevalley(&["--config", cfg, "bounds", "--q", "3", "--n", "3", "--d", "2"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn usage_and_input_errors_exit_one() {
    for args in [
        &["analyze", "--field", "GF(6)", "--n", "2", "x1"][..],
        &["analyze", "--field", "GF(3)", "--n", "2", "x1 + x3"],
        &["count", "--field", "GF(3)", "--n", "2", "x1 +* x2"],
        &["construct", "prop41"],
        &["verify"],
        &["verify", "--lemma", "9.9"],
        &["bounds", "--q", "3"],
        &["nonsense"],
    ] {
        let out = chevalley(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn budget_is_enforced() {
    let out = chevalley(&[
        "count", "--budget", "100", "--field", "GF(5)", "--n", "3", "x1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}
