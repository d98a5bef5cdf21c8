use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn szv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_szv")).args(args).env_remove("SZV_MAX_WORK").output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn eval_kinds() {
    let out = szv(&["eval", "--kind", "star", "--index", "1", "--M", "3", "--t-order", "3", "--format", "json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["coeffs"], serde_json::json!(["0", "-5/4", "-9/8"]));
    let out = szv(&["eval", "--kind", "zM", "--index", "", "--M", "10", "--format", "json"]);
    assert_eq!(json(&out), Value::String("1".into()));
    let out = szv(&["eval", "--kind", "reg", "--index", "1,1", "--bullet", "star", "--format", "json"]);
    assert_eq!(json(&out)["coeffs"], serde_json::json!([{"2": "-1/2"}, {}, {"": "1/2"}]));
    let out = szv(&["eval", "--kind", "sh", "--index", "1,1", "--M", "2", "--t-order", "1"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "0 + O(t^1)");
}

#[test]
fn json_series_round_trips() {
    let out = szv(&["eval", "--kind", "star", "--index", "2,1", "--M", "6", "--t-order", "3", "--format", "json"]);
    let v = json(&out);
    let series: szv::TruncatedSeries = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(serde_json::to_value(&series).unwrap(), v);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&szv(&["eval", "--index", "1,x"])), 2);
    assert_eq!(code(&szv(&["eval", "--kind", "nope", "--index", "1"])), 2);
    assert_eq!(code(&szv(&["verify", "nope"])), 2);
    assert_eq!(code(&szv(&["frobnicate"])), 2);
    assert_eq!(code(&szv(&["eval", "--index", "1", "--M", "0"])), 3);
    assert_eq!(code(&szv(&["verify", "finite", "--primes", "6"])), 3);
    assert_eq!(code(&szv(&["tree", "--tree-file", &data("not_positive.json")])), 3);
    assert_eq!(code(&szv(&["tree", "--tree-file", &data("white_leaf.json")])), 3);
    assert_eq!(code(&szv(&["tree", "--tree-file", &data("missing.json")])), 2);
    assert_eq!(code(&szv(&["mt", "--index", "0,0;1"])), 3);
    assert_eq!(code(&szv(&["limits", "--index", "2", "--M", "1000", "--tol", "1e-5"])), 1);
}

#[test]
fn verify_examples() {
    for args in [
        &["verify", "dsr", "--wt-max", "5", "--M", "2,5", "--t-order", "3"][..],
        &["verify", "trees", "--max-vertices", "6", "--M", "2,4"],
        &["verify", "finite", "--primes", "5,7", "--n", "2", "--wt-max", "4"],
        &["verify", "lemma23", "--wt-max", "3", "--M", "1,2,3"],
        &["verify", "taylor", "--wt-max", "3", "--M", "2,5", "--t-order", "2"],
        &["verify", "mt", "--wt-max", "3", "--M", "2,4", "--t-order", "2"],
    ] {
        let out = szv(args);
        assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let text = String::from_utf8_lossy(&out.stdout);
        assert!(text.lines().filter(|l| l.starts_with("PASS ")).count() > 0);
        assert!(!text.contains("FAIL "));
    }
    let out = szv(&["verify", "finite", "--primes", "5", "--n", "1", "--wt-max", "2", "--format", "json"]);
    let report = json(&out);
    assert_eq!(report["suite"], "finite");
    assert_eq!(report["failed"], 0);
}

#[test]
fn work_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_szv"))
        .args(["verify", "dsr", "--wt-max", "4", "--M", "50"])
        .env("SZV_MAX_WORK", "1000")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("SZV_MAX_WORK"));
    let out = Command::new(env!("CARGO_BIN_EXE_szv")).args(["eval", "--index", "1"]).env("SZV_MAX_WORK", "many").output().unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn limits_reports() {
    let out = szv(&["limits", "--index", "2", "--bullet", "star", "--M", "100,1000,10000", "--t-order", "1", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let diffs: Vec<f64> = json(&out)["rows"].as_array().unwrap().iter().map(|r| r["abs_diff"].as_f64().unwrap()).collect();
    assert!(diffs.windows(2).all(|w| w[1] < w[0] / 5.0), "{diffs:?}");
    let out = szv(&["limits", "--index", "", "--M", "5,10", "--format", "json"]);
    assert!(json(&out)["rows"].as_array().unwrap().iter().all(|r| r["truncated"] == r["limit"]));
    let out = szv(&["limits", "--index", "1", "--t-order", "2", "--format", "json"]);
    let last = json(&out)["rows"].as_array().unwrap().last().cloned().unwrap();
    assert_eq!(last["coefficient_index"], 1);
    assert!((last["limit"].as_f64().unwrap() + std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-6);
}

#[test]
fn tree_word_and_mt() {
    let out = szv(&["tree", "--tree-file", &data("figure.json"), "--M", "3", "--t-order", "2", "--harvest", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["harvestable"], false);
    assert_eq!(v["harvested"]["tree"]["root"], "G");
    let out = szv(&["tree", "--tree-file", &data("figure.json"), "--M", "3", "--t-order", "2", "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["via_words"], v["value"]);

    let out = szv(&["word", "--index", "1", "--times", "1", "--product", "sh"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "2*yy");
    let out = szv(&["mt", "--index", "1;1", "--M", "3", "--t-order", "2", "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["truncated"], "5/4");
    assert_eq!(v["word"], "1*yx");
}
