//! End-to-end acceptance checks, one test per release criterion. Each
//! prints a `criterion N: PASS` line once its assertions hold.

use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use gysin_core::functor::Trigger;
use gysin_core::{builtin, VerifyOptions};

fn gysin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gysin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn emit_example(dir: &Path) -> String {
    let path = dir.join("example.json").to_str().unwrap().to_string();
    let out = gysin(&["builtin", "example-2-2-4-1", "--emit", &path]);
    assert_eq!(exit_code(&out), 0, "{}", stdout(&out));
    path
}

#[test]
fn criterion_1_builtin_fidelity() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let path = emit_example(dir.path());

    let verify = gysin(&["verify", &path]);
    assert_eq!(exit_code(&verify), 0, "{}", stdout(&verify));

    let inv = gysin(&["--json", "invariants", &path]);
    assert_eq!(exit_code(&inv), 0);
    let table: Value = serde_json::from_str(&stdout(&inv)).unwrap();
    let subs = table["subgroups"].as_array().unwrap();
    assert_eq!(subs.len(), 2);
    assert_eq!(subs[0]["key"], "[]");
    assert_eq!(subs[0]["total_dim"], 8);
    assert_eq!(subs[0]["norm"], 6);
    assert_eq!(subs[0]["biconnected"], true);
    assert_eq!(subs[1]["key"], "[1]");
    assert_eq!(subs[1]["total_dim"], 17);
    assert_eq!(subs[1]["norm"], 6);
    assert_eq!(subs[1]["biconnected"], true);
    let edge = &table["edges"][0];
    assert_eq!(edge["bar_dims"], json!({"0": 1, "1": 1, "2": 1, "3": 1}));
    assert_eq!(edge["tau_dims"], json!({"4": 2, "5": 1, "6": 1}));

    assert!(start.elapsed() < Duration::from_secs(1));
    println!("criterion 1: PASS");
}

#[test]
fn criterion_2_block_count_oracle() {
    let start = Instant::now();
    let out = gysin(&["--json", "oracle", "lemma-2-3-4", "--max-dim", "10"]);
    assert_eq!(exit_code(&out), 0, "{}", stdout(&out));
    let sweep: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(sweep["partition_cases"], 139);
    assert_eq!(sweep["random_cases"], 1000);
    assert_eq!(sweep["failures"].as_array().unwrap().len(), 0);
    assert!(start.elapsed() < Duration::from_secs(10));
    println!("criterion 2: PASS");
}

#[test]
fn criterion_3_six_term_exactness() {
    let start = Instant::now();
    let out = gysin(&[
        "--json", "oracle", "tor-les", "--cases", "200", "--max-dim", "12",
    ]);
    assert_eq!(exit_code(&out), 0, "{}", stdout(&out));
    let sweep: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(sweep["cases"], 200);
    assert_eq!(sweep["failures"].as_array().unwrap().len(), 0);
    assert!(start.elapsed() < Duration::from_secs(10));
    println!("criterion 3: PASS");
}

fn corpus() -> Vec<gysin_core::GysinFunctor> {
    let mut instances = vec![
        builtin::example_2_2_4_1(),
        builtin::product_spheres(&[1, 2]).unwrap(),
        builtin::product_spheres(&[2, 3]).unwrap(),
        builtin::product_spheres(&[1, 2, 3]).unwrap(),
    ];
    for n in 1..=7 {
        instances.push(builtin::sphere(n).unwrap());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..50 {
        instances.push(builtin::sphere(rng.gen_range(1..=24)).unwrap());
    }
    instances
}

#[test]
fn criterion_4_even_dimension() {
    for f in corpus() {
        let report = f.verify(&VerifyOptions::default());
        assert!(report.passed(), "corpus instance fails to verify: {report}");
        let d0 = f.k_zero().space().total_dim();
        assert_eq!(d0 % 2, 0, "odd d(K_0) = {d0} on a verified instance");
        let (trigger, parity) = f.even_dimension_check();
        assert_eq!(trigger, Trigger::NotTriggered);
        assert!(parity.passed());
        assert!(!parity.to_string().contains("counterexample"));
    }
    println!("criterion 4: PASS");
}

#[test]
fn criterion_5_lower_bound() {
    for f in corpus() {
        if f.rank() > 3 {
            continue;
        }
        let o = f.conjecture_check();
        if o.hypothesis_met {
            assert!(o.holds, "bound fails on a hypothesis-satisfying instance");
        }
        assert_eq!(o.label, None, "unexpected label {:?}", o.label);
    }
    let two = builtin::product_spheres(&[1, 2]).unwrap().conjecture_check();
    assert_eq!((two.dim_k0, two.bound), (4, 4));
    let three = builtin::product_spheres(&[1, 2, 3]).unwrap().conjecture_check();
    assert_eq!((three.dim_k0, three.bound), (8, 8));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("product.json").to_str().unwrap().to_string();
    let emit = gysin(&[
        "builtin", "product-spheres", "--m", "1", "--n", "2", "--p", "3", "--emit", &path,
    ]);
    assert_eq!(exit_code(&emit), 0);
    let out = gysin(&["conjecture", &path]);
    assert_eq!(exit_code(&out), 0);
    assert!(!stdout(&out).contains("counterexample to Theorem 3.1"));
    println!("criterion 5: PASS");
}

#[test]
fn criterion_6_obstructions() {
    for n in [1, 2, 3, 7] {
        let f = builtin::sphere(n).unwrap();
        assert_eq!(
            f.obstruction_bar_one_dimensional().trigger,
            Trigger::Triggered,
            "sphere n = {n}"
        );
        assert_eq!(
            f.obstruction_unit_norm().trigger,
            Trigger::Triggered,
            "sphere n = {n}"
        );
    }
    let ex = builtin::example_2_2_4_1();
    assert_eq!(ex.obstruction_bar_one_dimensional().trigger, Trigger::NotTriggered);
    assert_eq!(ex.obstruction_unit_norm().trigger, Trigger::NotTriggered);
    println!("criterion 6: PASS");
}

type Mutation = (&'static str, Box<dyn Fn(&mut Value)>);

/// Sets the structure-constant entry for basis pair (i, j) of the given
/// subgroup, inserting the triple if absent.
fn set_triple(file: &mut Value, sub: usize, i: u64, j: u64, result: Vec<u64>) {
    let mul = file["subgroups"][sub]["mul"].as_array_mut().unwrap();
    for triple in mul.iter_mut() {
        if triple[0] == json!(i) && triple[1] == json!(j) {
            triple[2] = json!(result);
            return;
        }
    }
    mul.push(json!([i, j, result]));
}

#[test]
fn criterion_7_mutation_kill_rate() {
    let dir = tempfile::tempdir().unwrap();
    let path = emit_example(dir.path());
    let base: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();

    // All ten single-entry corruptions of the fixture. Basis order in
    // the emitted file: K_0 = iota x1 x2 x1x2 x4 y4 x5 x1x5, K_1 = mu
    // t.mu z1 t2.mu t.z1 z2 ... t3.z1z2 (degreewise).
    let mutations: Vec<Mutation> = vec![
        ("zero z1*z2 on one side", Box::new(|f| set_triple(f, 1, 2, 5, vec![]))),
        ("zero the unit product mu*t.z1", Box::new(|f| set_triple(f, 1, 0, 4, vec![]))),
        ("set x1*x1 = x2", Box::new(|f| set_triple(f, 0, 1, 1, vec![2]))),
        ("zero psi(x4)", Box::new(|f| f["edges"][0]["psi"][10][4] = json!(0))),
        ("zero psi(x1x5)", Box::new(|f| f["edges"][0]["psi"][16][7] = json!(0))),
        ("zero rho(z2)", Box::new(|f| f["edges"][0]["rho"][2][5] = json!(0))),
        ("zero rho(mu)", Box::new(|f| f["edges"][0]["rho"][0][0] = json!(0))),
        ("move the coefficient image to z1", Box::new(|f| f["subgroups"][1]["h_images"] = json!([[1]]))),
        ("drop t.mu*t.mu to degree 0", Box::new(|f| set_triple(f, 1, 1, 1, vec![0]))),
        ("zero t3.mu*t.mu on one side", Box::new(|f| set_triple(f, 1, 6, 1, vec![]))),
    ];
    assert_eq!(mutations.len(), 10);

    for (label, apply) in &mutations {
        let mut mutated = base.clone();
        apply(&mut mutated);
        assert_ne!(mutated, base, "mutation is a no-op: {label}");
        let mpath = dir.path().join("mutated.json").to_str().unwrap().to_string();
        std::fs::write(&mpath, serde_json::to_string(&mutated).unwrap()).unwrap();
        let out = gysin(&["verify", &mpath]);
        assert_eq!(exit_code(&out), 1, "mutation survived verify: {label}");
        let text = stdout(&out);
        assert!(text.contains("FAIL"), "{label}: {text}");
        assert!(
            text.contains("[1]") || text.contains("[]"),
            "finding carries no location: {label}: {text}"
        );
    }
    println!("criterion 7: PASS");
}

#[test]
fn criterion_8_lattice_counts() {
    let out = gysin(&["--json", "oracle", "lattice"]);
    assert_eq!(exit_code(&out), 0, "{}", stdout(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["passed"], true);
    let ranks = v["ranks"].as_array().unwrap();
    let totals: Vec<u64> = ranks
        .iter()
        .map(|r| r["profile"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).sum())
        .collect();
    assert_eq!(&totals[..3], &[2, 5, 16]);
    let pairs: Vec<&Value> = ranks.iter().map(|r| &r["pairs"]).collect();
    assert_eq!(pairs[..3], [&json!(1), &json!(6), &json!(35)]);
    for r in ranks {
        assert_eq!(r["agree"], true);
    }
    println!("criterion 8: PASS");
}

#[test]
fn criterion_9_diagram_grid() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("product.json").to_str().unwrap().to_string();
    let emit = gysin(&["builtin", "product-spheres", "--m", "1", "--n", "2", "--emit", &path]);
    assert_eq!(exit_code(&emit), 0);
    let out = gysin(&["diagram-d", &path]);
    assert_eq!(exit_code(&out), 0, "{}", stdout(&out));

    // A fixture whose unit submodule is a proper part of the top
    // algebra, checked at its one live pair; corrupting the transfer on
    // the restricted degree-1 class must surface at a named square.
    let fixture = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/gapped.json");
    let gapped = fixture.to_str().unwrap();
    let clean = gysin(&["diagram-d", gapped, "--pair", "[1] < [1,2]"]);
    assert_eq!(exit_code(&clean), 0, "{}", stdout(&clean));

    let mut mutated: Value =
        serde_json::from_str(&std::fs::read_to_string(&fixture).unwrap()).unwrap();
    let edge = mutated["edges"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|e| e["sub_key"] == json!([1]) && e["sup_key"] == json!([1, 2]))
        .unwrap();
    edge["psi"][2][2] = json!(1);
    let mpath = dir.path().join("gapped_mutated.json").to_str().unwrap().to_string();
    std::fs::write(&mpath, serde_json::to_string(&mutated).unwrap()).unwrap();
    let broken = gysin(&["diagram-d", &mpath, "--pair", "[1] < [1,2]"]);
    assert_eq!(exit_code(&broken), 1);
    let text = stdout(&broken);
    assert!(text.contains("diagram-square-commutes"), "{text}");
    assert!(text.contains("top-right square"), "{text}");

    assert!(start.elapsed() < Duration::from_secs(1));
    println!("criterion 9: PASS");
}
