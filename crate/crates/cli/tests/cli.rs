//! Exit-code and output contract of the binary.

use std::process::{Command, Output};

use serde_json::{json, Value};

fn gysin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gysin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn emit_example(dir: &std::path::Path) -> String {
    let path = dir.join("example.json").to_str().unwrap().to_string();
    assert_eq!(code(&gysin(&["builtin", "example-2-2-4-1", "--emit", &path])), 0);
    path
}

#[test]
fn unreadable_input_exits_two_on_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let garbled = dir.path().join("garbled.json");
    std::fs::write(&garbled, "{\"rank\": 1").unwrap();
    let out = gysin(&["verify", garbled.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed file"));

    let missing = gysin(&["invariants", "/nonexistent/f.json"]);
    assert_eq!(code(&missing), 2);
}

#[test]
fn incomplete_and_non_canonical_files_exit_two_with_the_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = emit_example(dir.path());
    let mut file: Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();

    let mut incomplete = file.clone();
    incomplete["edges"].as_array_mut().unwrap().clear();
    let p = dir.path().join("incomplete.json");
    std::fs::write(&p, incomplete.to_string()).unwrap();
    let out = gysin(&["verify", p.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("incomplete lattice data"));

    file["subgroups"][1]["key"] = json!([1, 1]);
    let p = dir.path().join("redundant.json");
    std::fs::write(&p, file.to_string()).unwrap();
    let out = gysin(&["verify", p.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("non-canonical subgroup key"));
}

#[test]
fn usage_problems_exit_two() {
    let out = gysin(&["no-such-command"]);
    assert_eq!(code(&out), 2);
    let out = gysin(&["builtin", "sphere", "--emit", "/tmp/x.json"]);
    assert_eq!(code(&out), 2, "missing --n must be a usage error");
    let out = gysin(&["--help"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn semantic_failures_exit_one_but_triggered_obstructions_do_not() {
    let dir = tempfile::tempdir().unwrap();
    let path = emit_example(dir.path());
    let mut file: Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    file["edges"][0]["psi"][10][4] = json!(0);
    let p = dir.path().join("broken.json");
    std::fs::write(&p, file.to_string()).unwrap();
    let out = gysin(&["verify", p.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("verdict: fail"));

    let sphere = dir.path().join("sphere.json");
    let s = sphere.to_str().unwrap();
    assert_eq!(code(&gysin(&["builtin", "sphere", "--n", "2", "--emit", s])), 0);
    let out = gysin(&["obstructions", s]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("triggered"));
}

#[test]
fn diagram_rejects_inputs_of_other_ranks() {
    let dir = tempfile::tempdir().unwrap();
    let path = emit_example(dir.path());
    let out = gysin(&["diagram-d", &path]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("rank"));
}

#[test]
fn relax_rho_accepts_additive_but_non_multiplicative_restrictions() {
    // Exact in every degree and linear over the coefficient action, but
    // rho sends the square-zero class v onto p with p*p = r, so it is
    // not an algebra map.
    let file = json!({
        "rank": 1,
        "subgroups": [
            {
                "key": [],
                "basis": [
                    {"name": "e", "degree": 0}, {"name": "p", "degree": 1},
                    {"name": "q", "degree": 1}, {"name": "r", "degree": 2}
                ],
                "unit": 0,
                "mul": [
                    [0,0,[0]], [0,1,[1]], [1,0,[1]], [0,2,[2]], [2,0,[2]],
                    [0,3,[3]], [3,0,[3]], [1,1,[3]]
                ],
                "h_images": []
            },
            {
                "key": [1],
                "basis": [
                    {"name": "iota", "degree": 0}, {"name": "u", "degree": 1},
                    {"name": "v", "degree": 1}, {"name": "w", "degree": 2}
                ],
                "unit": 0,
                "mul": [
                    [0,0,[0]], [0,1,[1]], [1,0,[1]], [0,2,[2]], [2,0,[2]],
                    [0,3,[3]], [3,0,[3]], [1,2,[3]], [2,1,[3]]
                ],
                "h_images": [[0]]
            }
        ],
        "edges": [
            {
                "sub_key": [], "sup_key": [1],
                "rho": [[1,0,0,0],[0,0,1,0],[0,0,0,0],[0,0,0,0]],
                "psi": [[0,0,0,0],[0,0,1,0],[0,0,0,0],[0,0,0,1]]
            }
        ]
    });
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("twisted.json");
    std::fs::write(&p, file.to_string()).unwrap();
    let strict = gysin(&["verify", p.to_str().unwrap()]);
    assert_eq!(code(&strict), 1);
    assert!(String::from_utf8_lossy(&strict.stdout).contains("rho-multiplicative"));
    let relaxed = gysin(&["verify", "--relax-rho", p.to_str().unwrap()]);
    assert_eq!(code(&relaxed), 0, "{}", String::from_utf8_lossy(&relaxed.stdout));
}

#[test]
fn json_reports_parse_and_match_the_text_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let path = emit_example(dir.path());
    for sub in ["verify", "invariants", "conjecture", "obstructions"] {
        let out = gysin(&["--json", sub, &path]);
        assert_eq!(code(&out), 0, "{sub}");
        let v: Value = serde_json::from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
        assert!(v.is_object() || v.is_array(), "{sub} emits a JSON document");
    }
}
