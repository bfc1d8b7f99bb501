use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixture(name: &str) -> String {
    fixtures().join(name).to_string_lossy().into_owned()
}

fn vgroute(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vgroute")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn square_tables(dir: &Path) -> String {
    let out = dir.join("square.tables").to_string_lossy().into_owned();
    let o = vgroute(&["build", "--domain", &fixture("square.json"), "--epsilon", "1", "--out", &out]);
    assert_eq!(code(&o), 0);
    out
}

#[test]
fn build_square() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.json");
    let o = vgroute(&["build", "--domain", &fixture("square.json"), "--epsilon", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "n=4 h=1 t=13 entries=12 bits=72");
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("\"t\": 13"));
}

#[test]
fn build_usage_errors() {
    let sq = fixture("square.json");
    assert_eq!(code(&vgroute(&["build", "--domain", &sq, "--epsilon", "0", "--out", "x"])), 1);
    assert_eq!(code(&vgroute(&["build", "--domain", "/no/such/file.json", "--epsilon", "1", "--out", "x"])), 1);
    assert_eq!(code(&vgroute(&["build", "--domain", &sq])), 1);
    assert_eq!(code(&vgroute(&["frobnicate"])), 1);
}

#[test]
fn invalid_domain_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bowtie = dir.path().join("bowtie.json");
    std::fs::write(&bowtie, r#"{"boundaries":[{"kind":"outer","vertices":[[0,0],[4,3],[4,0],[0,3]]}]}"#).unwrap();
    let o = vgroute(&["build", "--domain", bowtie.to_str().unwrap(), "--epsilon", "1", "--out", "x"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("intersect"));
}

#[test]
fn stats_ledger() {
    let o = vgroute(&["build", "--domain", &fixture("square.json"), "--epsilon", "1", "--dry-run"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("label_bits=2 entry_bits=6"));
    assert!(s.contains("0:0 entries=3 bits=18"));
    assert!(s.contains("max_entries=3 entry_bound=15 total_entries=12"));
    let o2 = vgroute(&["stats", "--domain", &fixture("square.json"), "--epsilon", "1"]);
    assert_eq!(stdout(&o2), s);
}

#[test]
fn route_square() {
    let dir = tempfile::tempdir().unwrap();
    let tables = square_tables(dir.path());
    let o = vgroute(&["route", "--tables", &tables, "--from", "0:0", "--to", "0:2"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 2);
    assert!(s.starts_with("0:0 -> 0:2 length=1.414"));
    assert!(s.trim_end().ends_with("stretch=1"));

    let o = vgroute(&["route", "--tables", &tables, "--from", "0:0", "--to", "0:0"]);
    assert_eq!(stdout(&o), "total=0 geodesic=0 stretch=1\n");

    let o = vgroute(&["route", "--tables", &tables, "--from", "0:0", "--to", "5:0"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("5:0"));
}

#[test]
fn verify_passes_and_reports() {
    let o = vgroute(&["verify", "--domain", &fixture("square.json"), "--epsilon", "1", "--pairs", "all"]);
    assert_eq!(code(&o), 0);
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["passed"], true);
    assert_eq!(r["stats"]["pairs_routed"], 12);
    assert_eq!(r["stats"]["max_stretch"], 1.0);

    let o = vgroute(&["verify", "--domain", &fixture("square.json"), "--epsilon", "1", "--pairs", "sample", "5", "--seed", "2"]);
    assert_eq!(code(&o), 0);

    let o = vgroute(&["verify", "--domain", &fixture("square.json"), "--epsilon", "1", "--pairs", "some"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn verify_spire_reports_eight_hops() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let o = vgroute(&[
        "verify",
        "--domain",
        &fixture("spire_8.json"),
        "--epsilon",
        "1",
        "--from",
        "0:0",
        "--to",
        "0:5",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(r["stats"]["max_hops"], 8);
    assert!(r["stats"]["max_stretch"].as_f64().unwrap() <= 2.0);
}

#[test]
fn verify_catches_corrupted_tables() {
    let dir = tempfile::tempdir().unwrap();
    let tables = square_tables(dir.path());
    // Swap two vias at vertex 0:0 so its entries point into the wrong cones.
    let text = std::fs::read_to_string(&tables).unwrap();
    let bad = text
        .replacen("\"via\": [0, 3], \"cone\": 1", "\"via\": [0, 9], \"cone\": 1", 1)
        .replacen("\"via\": [0, 1], \"cone\": 13", "\"via\": [0, 3], \"cone\": 13", 1)
        .replacen("\"via\": [0, 9], \"cone\": 1", "\"via\": [0, 1], \"cone\": 1", 1);
    assert_ne!(bad, text);
    std::fs::write(&tables, bad).unwrap();
    let o = vgroute(&["verify", "--domain", &fixture("square.json"), "--tables", &tables]);
    assert_eq!(code(&o), 3);
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["passed"], false);
    let failed: Vec<&str> = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"interval-oracle"));
}

#[test]
fn render_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("out.svg");
    let svg_s = svg.to_str().unwrap();
    let sq = fixture("square.json");

    assert_eq!(code(&vgroute(&["render", "--domain", &sq, "--out", svg_s])), 0);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<?xml"));
    assert_eq!(text.matches("<path").count(), 1);
    assert!(!text.contains("<polyline"));

    let trace = dir.path().join("trace.txt");
    let tables = square_tables(dir.path());
    let o = vgroute(&["route", "--tables", &tables, "--from", "0:0", "--to", "0:2"]);
    std::fs::write(&trace, o.stdout).unwrap();
    assert_eq!(code(&vgroute(&["render", "--domain", &sq, "--trace", trace.to_str().unwrap(), "--out", svg_s])), 0);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.contains(r#"points="0,0 1,1""#));

    assert_eq!(code(&vgroute(&["render", "--domain", &sq, "--cones", "0:0", "--epsilon", "1", "--out", svg_s])), 0);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("class=\"ray\"").count(), 14);

    assert_eq!(code(&vgroute(&["render", "--domain", &sq, "--out", "/no/such/dir/out.svg"])), 1);
}

#[test]
fn gen_is_deterministic() {
    let a = vgroute(&["gen", "star", "--n", "20", "--seed", "4"]);
    let b = vgroute(&["gen", "star", "--n", "20", "--seed", "4"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let o = vgroute(&["gen", "holed", "--n", "16", "--holes", "0"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn committed_fixtures_are_current() {
    let o = vgroute(&["fixtures", "--dir", fixtures().to_str().unwrap(), "--check"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}
