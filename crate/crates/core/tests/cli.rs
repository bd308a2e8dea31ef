use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn quivhom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quivhom"))
        .args(args)
        .env("QUIVHOM_LOG", "quiet")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json report")
}

fn temp_file(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("quivhom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn higgs_ext_and_hyper() {
    let o = quivhom(&["ext", &fixture("higgs.json"), "V", "V", "--verify", "--json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = json(&o);
    assert_eq!(r["mode"], "p1");
    assert_eq!(r["field"], "F_101");
    assert_eq!(
        [&r["results"]["ext0"], &r["results"]["ext1"], &r["results"]["ext2"]],
        [1, 3, 0]
    );
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));

    let o = quivhom(&["hyper", &fixture("higgs.json"), "V", "--json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = json(&o);
    assert_eq!(
        [&r["results"]["hh0"], &r["results"]["hh1"], &r["results"]["hh2"]],
        [1, 3, 0]
    );
}

#[test]
fn triple_extension_is_nonsplit() {
    let o = quivhom(&["ext", &fixture("triple.json"), "V", "W", "--verify", "--json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = json(&o);
    assert_eq!(r["results"]["ext0"], 0);
    assert_eq!(r["results"]["ext1"], 1);

    let o = quivhom(&["ext", &fixture("triple.json"), "E", "E", "--json"]);
    assert_eq!(json(&o)["results"]["ext0"], 1);
    let o = quivhom(&["ext", &fixture("triple.json"), "S", "S", "--json"]);
    assert_eq!(json(&o)["results"]["ext0"], 2);
}

#[test]
fn text_and_json_carry_the_same_numbers() {
    let path = fixture("jordan.json");
    let text = String::from_utf8(quivhom(&["ext", &path, "J2", "J3"]).stdout).unwrap();
    let r = json(&quivhom(&["--json", "ext", &path, "J2", "J3"]));
    for (k, v) in r["results"].as_object().unwrap() {
        assert!(text.contains(&format!("  {k} = {v}\n")), "{k} missing from text");
    }
    assert_eq!(r["results"]["ext0"], 2);
    assert_eq!(r["results"]["ext1"], 2);
}

#[test]
fn check_reports_exactness() {
    let o = quivhom(&["check", &fixture("jordan.json"), "J3", "--max-degree", "5", "--json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = json(&o);
    assert_eq!(r["results"]["rank_eps"], 3);
    assert_eq!(r["checks"].as_array().unwrap().len(), 4);
}

#[test]
fn zero_degree_bound_is_a_validation_error() {
    let o = quivhom(&["check", &fixture("jordan.json"), "J2", "--max-degree", "0"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn malformed_json_names_the_byte_offset() {
    let p = temp_file("bad.json", "{\"field\": \"q\",\n \"quiver\": [}");
    let o = quivhom(&["ext", &p, "V"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("byte offset 27"), "{}", stderr(&o));
}

#[test]
fn validation_errors_name_the_path() {
    let p = temp_file(
        "short.json",
        r#"{"field": "q", "quiver": {"vertices": 1, "arrows": [[0, 0]]}, "mode": "vector",
            "twists": [1], "modules": {"V": {"dims": [2], "phi": [[["1", "0"]]]}}}"#,
    );
    let o = quivhom(&["ext", &p, "V"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("modules.V.phi"), "{}", stderr(&o));

    let o = quivhom(&["ext", &fixture("jordan.json"), "J9"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("modules.J9"));

    let o = quivhom(&["ext", "/nonexistent/file.json", "V"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn wrong_mode_and_mismatched_modules_are_incompatible() {
    let o = quivhom(&["hyper", &fixture("jordan.json"), "J2"]);
    assert_eq!(code(&o), 4);
    let o = quivhom(&["check", &fixture("higgs.json"), "V"]);
    assert_eq!(code(&o), 4);
}

#[test]
fn gen_is_deterministic_and_round_trips() {
    for mode in ["vector", "p1"] {
        let a = quivhom(&["gen", "--seed", "5", "--mode", mode]);
        let b = quivhom(&["gen", "--seed", "5", "--mode", mode]);
        assert_eq!(code(&a), 0, "{}", stderr(&a));
        assert_eq!(a.stdout, b.stdout);
        let c = quivhom(&["gen", "--seed", "6", "--mode", mode]);
        assert_ne!(a.stdout, c.stdout);

        let p = temp_file(&format!("gen-{mode}.json"), std::str::from_utf8(&a.stdout).unwrap());
        let cmd = if mode == "p1" { "hyper" } else { "ext" };
        let o = quivhom(&[cmd, &p, "V", "W", "--verify"]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
    }
}

#[test]
fn gen_feeds_check() {
    let a = quivhom(&["gen", "--seed", "9"]);
    let p = temp_file("gen-check.json", std::str::from_utf8(&a.stdout).unwrap());
    let o = quivhom(&["check", &p, "V", "--max-degree", "3"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn gen_respects_bounds() {
    let o = quivhom(&["gen", "--seed", "1", "--max-vertices", "1", "--mode", "p1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["quiver"]["vertices"], 1);
    let o = quivhom(&["gen", "--max-vertices", "0"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("--max-vertices"));
}

#[test]
fn bad_arguments_and_log_levels() {
    assert_eq!(code(&quivhom(&["frobnicate"])), 3);
    assert_eq!(code(&quivhom(&["--help"])), 0);
    let o = Command::new(env!("CARGO_BIN_EXE_quivhom"))
        .args(["gen"])
        .env("QUIVHOM_LOG", "loud")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    let o = Command::new(env!("CARGO_BIN_EXE_quivhom"))
        .args(["ext", &fixture("higgs.json"), "V"])
        .env("QUIVHOM_LOG", "debug")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(!o.stderr.is_empty());
}
