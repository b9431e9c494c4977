use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn prodgap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prodgap")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn write_set(dir: &Path, name: &str, values: impl IntoIterator<Item = u64>) -> String {
    let path = dir.join(name);
    let body: String = values.into_iter().map(|v| format!("{v}\n")).collect();
    fs::write(&path, format!("# test input\n{body}")).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn sidon_prints_set_and_verdict() {
    let o = prodgap(&["sidon", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.by_ref().take(3).collect::<Vec<_>>(), ["0", "7", "13"]);
    let v: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(v["sidon"], true);

    let o = prodgap(&["sidon", "47"]);
    assert_eq!(o.status.code(), Some(0));
    let last: serde_json::Value = serde_json::from_str(stdout(&o).lines().last().unwrap()).unwrap();
    assert_eq!(last["sidon"], true);
    assert!(last["min_gap"].as_u64().unwrap() >= 47);

    let o = prodgap(&["sidon", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not an odd prime"));
}

#[test]
fn construct_reports_blocks_and_separation() {
    let o = prodgap(&["construct", "--alpha", "1/20", "--nmax", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["report"]["spec"]["p"], 3);
    assert!(v["report"]["separation"]["min"].as_u64().unwrap() >= 108);

    let o = prodgap(&["construct", "--alpha", "1/8", "--t", "2", "--nmax", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let elements: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(elements, ["5", "44", "45"]);

    let o = prodgap(&["construct", "--alpha", "1/20", "--nmax", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("growth guard"));

    let o = prodgap(&["construct", "--alpha", "1/10", "--nmax", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("all positive integers"));
}

#[test]
fn certify_emits_verified_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_set(dir.path(), "a.txt", 1..=100);
    let o = prodgap(&["certify", &f, "--alpha", "1/2", "--t", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    let certs = v["certificates"].as_array().unwrap();
    assert!(certs.len() >= 6);
    for c in certs {
        assert_eq!(c["verified"], true);
        assert!(c["product_gap"].as_u64().unwrap() <= c["bound"].as_u64().unwrap());
    }

    let empty = write_set(dir.path(), "empty.txt", []);
    let o = prodgap(&["certify", &empty, "--alpha", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["certificates"], serde_json::json!([]));

    let small = write_set(dir.path(), "s.txt", 1..=8);
    let o = prodgap(&["certify", &small, "--alpha", "1/2", "--window", "1..16"]);
    let v = json(&o);
    assert_eq!(v["certificates"].as_array().unwrap().len(), 1);
    assert_eq!(v["certificates"][0]["product_gap"], 4);

    let o = prodgap(&["certify", &small, "--alpha", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn certify_reads_stdin_and_writes_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("certs.json");
    let mut child = Command::new(env!("CARGO_BIN_EXE_prodgap"))
        .args(["certify", "-", "--alpha", "1/2", "--t", "2", "--out", out.to_str().unwrap()])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let input: String = (1..=100).map(|v| format!("{v}\n")).collect();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["certificates"].as_array().unwrap().len(), 3);
    assert_eq!(v["certificates"][0]["type"], "cluster");
}

#[test]
fn products_summary_and_value_suppression() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_set(dir.path(), "a.txt", [144, 151, 157]);
    let o = prodgap(&["products", &f, "--max-values", "10"]);
    let v = json(&o);
    assert_eq!(v["report"]["count"], 6);
    assert_eq!(v["report"]["min_gap"], 193);
    assert_eq!(v["report"]["values"].as_array().unwrap().len(), 6);

    let o = prodgap(&["products", &f, "--max-values", "3"]);
    assert!(json(&o)["report"].get("values").is_none());

    let o = prodgap(&["products", "--alpha", "1/20", "--nmax", "2", "--max-values", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o)["report"]["min_gap"].as_u64().unwrap() >= 108);

    let o = prodgap(&["products"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn quotients_report() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_set(dir.path(), "a.txt", 1..=10);
    let o = prodgap(&["quotients", &f, "--n", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["theorem5"]["quotient_size"], 31);
    assert_eq!(v["theorem5"]["pass"], true);
    assert_eq!(v["close_quotients"]["distance"], "1/90");

    let sparse = write_set(dir.path(), "b.txt", [1, 7]);
    let o = prodgap(&["quotients", &sparse, "--n", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(v["close_quotients"].is_null());
    assert!(v["close_quotients_note"].is_string());

    let o = prodgap(&["quotients", &f, "--n", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn scan_writes_files_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("scan.toml");
    fs::write(&cfg, "seed = 3\nN = [10]\nalphas = [\"1/2\"]\ntrials = 2\nfamilies = [\"exhaustive\", \"random\"]\n")
        .unwrap();
    let cfg = cfg.to_str().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = prodgap(&["scan", cfg, "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        out
    };
    let (a, b) = (run("a"), run("b"));
    let csv = fs::read_to_string(a.join("scan.csv")).unwrap();
    assert!(csv.starts_with("family,seed,alpha_num,alpha_den,N,"));
    assert!(csv.contains("summary:exhaustive"));
    let rep: serde_json::Value = serde_json::from_str(&fs::read_to_string(a.join("theorem5.json")).unwrap()).unwrap();
    assert_eq!(rep["theorem5_failures"], 0);
    assert_eq!(rep["empirical"], true);
    assert_eq!(csv, fs::read_to_string(b.join("scan.csv")).unwrap());

    let stdout_a = prodgap(&["scan", cfg, "--format", "json", "--seed", "9"]);
    let stdout_b = prodgap(&["scan", cfg, "--format", "json", "--seed", "9"]);
    assert_eq!(stdout_a.stdout, stdout_b.stdout);
    assert_eq!(json(&stdout_a)["config"]["seed"], 9);

    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "seed = 1\nN = [10]\nalphas = [\"1/1\"]\nfamilies = [\"random\"]\n").unwrap();
    let o = prodgap(&["scan", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
