use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_padic-cf"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn strings(v: &Value) -> Vec<&str> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect()
}

const TM_WORD: &str = r#"{"generator":"thue_morse","alphabet_map":{"a":"8/3","b":"5/3"},"params":null}"#;

#[test]
fn expand_minus_three() {
    let v = ok_json(&["expand", "--p", "3", "--floor", "ruban", "--alpha", "-3", "--max-terms", "5"]);
    assert_eq!(strings(&v["a"]), ["0/1", "8/3", "8/3", "8/3", "8/3"]);
    assert_eq!(v["alpha"], "-3/1");
    assert_eq!(v["p"], 3);
    assert_eq!(v["truncated"], true);
}

#[test]
fn expand_text_and_browkin_termination() {
    let out = run(&["expand", "--p", "5", "--floor", "browkin", "--alpha", "7/12", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.ends_with("terminated\n"), "{text}");
}

#[test]
fn thue_morse_word() {
    let out = run(&["word", "--gen", "thue_morse", "--length", "8"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "abbabaab\n");
    let v = ok_json(&["word", "--gen", "thue_morse", "--length", "4", "--alphabet", "a=8/3,b=5/3", "--format", "json"]);
    assert_eq!(strings(&v["values"]), ["8/3", "5/3", "5/3", "8/3"]);
}

#[test]
fn eval_approximates_minus_three() {
    let v = ok_json(&["eval", "--word", "0,8/3,8/3", "--p", "3", "--alpha", "-3"]);
    assert_eq!(v["value"], "24/73");
    assert_eq!(v["error_valuation"], 5);
}

#[test]
fn rudin_shapiro_complexity() {
    let v = ok_json(&["complexity", "--gen", "rudin_shapiro", "--length", "4096", "--max-n", "10"]);
    let counts: Vec<u64> = v["complexity"].as_array().unwrap().iter().map(|r| r["count"].as_u64().unwrap()).collect();
    assert_eq!(&counts[7..], [56, 64, 72]);
}

#[test]
fn detect_fibonacci_squares() {
    let v = ok_json(&["detect", "--gen", "fibonacci", "--length", "1000", "--c-max", "0", "--budget", "200"]);
    assert_eq!(v["prefix_length"], 200);
    let us: Vec<u64> = v["family"].as_array().unwrap().iter().map(|w| w["u"].as_u64().unwrap()).collect();
    assert_eq!(us, [3, 5, 8, 13, 21, 34, 55, 89]);
}

#[test]
fn detect_thue_morse_mirror() {
    let v = ok_json(&["detect", "--gen", "thue_morse", "--length", "64", "--kind", "club", "--c-max", "0"]);
    assert_eq!(v["kind"], "club");
    assert!(v["family"].as_array().unwrap().iter().all(|w| w["w"] == 0 && w["v"] == 0));
}

#[test]
fn quadratic_for_eight_thirds() {
    let v = ok_json(&["quadratic", "--p", "3", "--preperiod", "0", "--period", "8/3"]);
    assert_eq!((v["a"].as_str(), v["b"].as_str(), v["c"].as_str()), (Some("-1/1"), Some("8/3"), Some("1/1")));
    let vals: Vec<i64> =
        v["root_valuations"].as_array().unwrap().iter().map(|r| r["valuation"].as_i64().unwrap()).collect();
    assert!(vals.windows(2).all(|w| w[1] > w[0]), "{vals:?}");
}

#[test]
fn floor_validation() {
    let v = ok_json(&["floor-validate", "--p", "7", "--floor", "browkin"]);
    assert_eq!(v["passed"], true);
    let good = scratch(
        "good_floor.json",
        r#"{"kind":"custom","p":3,"remap":[{"class":"2/1","rep":"-1/1"}],"default":"ruban"}"#,
    );
    let v = ok_json(&["floor-validate", "--floor", good.to_str().unwrap()]);
    assert_eq!(v["passed"], true);
    let bad =
        scratch("bad_floor.json", r#"{"kind":"custom","p":3,"remap":[{"class":"1/1","rep":"2/1"}],"default":"ruban"}"#);
    let out = run(&["floor-validate", "--floor", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("approximation"));
    // The checked loader used by expand rejects the table outright.
    let out = run(&["expand", "--floor", bad.to_str().unwrap(), "--alpha", "1/2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn certify_thue_morse() {
    let word = scratch("tm_word.json", TM_WORD);
    let v = ok_json(&[
        "certify",
        "--p",
        "3",
        "--floor",
        "ruban",
        "--word",
        word.to_str().unwrap(),
        "--length",
        "1024",
        "--kind",
        "club",
    ]);
    assert_eq!(v["version"], 1);
    assert_eq!(v["scope"], "evidence-only");
    assert_eq!(v["inputs"]["prefix_length"], 1024);
    assert_eq!(v["condition_source"], "hint");
    assert_eq!(v["required_k"], 2);
    assert_eq!(v["min_letter_exponent"], 1);
    assert_eq!(v["verdict"]["status"], "failed");
    let reasons = strings(&v["verdict"]["reasons"]);
    assert_eq!(reasons.len(), 1);
    assert!(reasons[0].starts_with("letter_exponent"));

    // Without a hint the detector chooses.
    let v = ok_json(&["certify", "--p", "3", "--word", word.to_str().unwrap(), "--length", "256"]);
    assert_eq!(v["condition_source"], "detector");
    assert_eq!(v["detectors"].as_array().unwrap().len(), 2);
}

#[test]
fn certify_is_deterministic_across_runs_and_threads() {
    let word = scratch("tm_word_det.json", TM_WORD);
    let args = ["certify", "--p", "3", "--word", word.to_str().unwrap(), "--length", "512"];
    let outputs: Vec<Vec<u8>> = ["1", "4", "4"]
        .iter()
        .map(|t| {
            let out = bin().args(args).env("PADIC_CF_THREADS", t).output().unwrap();
            assert!(out.status.success());
            out.stdout
        })
        .collect();
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[1], outputs[2]);
}

#[test]
fn output_file() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("expansion.json");
    let out = run(&["expand", "--p", "3", "--alpha", "1/2", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["alpha"], "1/2");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bogus"][..],
        &["expand", "--p", "9", "--alpha", "1"],
        &["expand", "--p", "3", "--alpha", "0.5"],
        &["word", "--gen", "tribonacci", "--length", "4"],
        &["word", "--length", "4"],
        &["word", "--word", "/nonexistent.json", "--length", "4"],
        &["certify", "--p", "3", "--gen", "thue_morse", "--alphabet", "a=1/3,b=2/3", "--length", "8"],
        &["certify", "--p", "3", "--gen", "thue_morse", "--alphabet", "a=1/1,b=2/1", "--length", "64"],
        &["detect", "--gen", "thue_morse", "--length", "0"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}
