use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

const TREFOIL: &str = "O1+U2+O3+U1+O2+U3+";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symquandle"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn write_output(args: &[&str], path: &Path) {
    let out = run(args);
    assert!(out.status.success());
    std::fs::write(path, out.stdout).unwrap();
}

#[test]
fn group_orders() {
    assert_eq!(ok_json(&["group", "--n", "1", "--order"])["order"], 24);
    assert_eq!(ok_json(&["group", "--n", "2", "--order"])["order"], 160);
    let v = ok_json(&["group", "--n", "1", "--centralizer", "--cosets"]);
    assert_eq!(v["centralizer"]["order"], 4);
    assert_eq!(v["cosets"]["count"], 6);
    assert_eq!(
        run(&["group", "--n", "0", "--order"]).status.code(),
        Some(1)
    );
}

#[test]
fn normal_forms() {
    let v = ok_json(&["group", "--n", "1", "--normal-form", "(3,1,2)"]);
    assert_eq!(v["normal_form"]["exponent"], 1);
    assert_eq!(v["normal_form"]["prefix"], "identity");
    assert_eq!(
        run(&["group", "--n", "1", "--normal-form", "(1,2)"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn quandle_queries() {
    let v = ok_json(&["quandle", "--family", "tilde", "--n", "1", "--table"]);
    assert_eq!(v["table"][0], json!([0, 5, 1, 0, 2, 4]));
    assert_eq!(v["rho"], json!([3, 4, 5, 0, 1, 2]));
    let v = ok_json(&[
        "quandle",
        "--family",
        "dihedral",
        "--n",
        "3",
        "--good-involutions",
    ]);
    assert_eq!(v["good_involutions"], json!(["identity"]));
    let v = ok_json(&[
        "quandle",
        "--family",
        "tilde",
        "--n",
        "1",
        "--involutory",
        "--connected",
        "--verify",
    ]);
    assert_eq!(v["involutory"], false);
    assert_eq!(v["connected"], true);
    assert_eq!(v["axioms"]["ok"], true);
}

#[test]
fn quandle_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.json");
    let v = ok_json(&["quandle", "--family", "tilde", "--n", "1"]);
    std::fs::write(&path, v.to_string()).unwrap();
    let spec = format!("file:{}", path.display());
    let h = ok_json(&[
        "homology",
        "--quandle",
        &spec,
        "--flavor",
        "Qrho",
        "--degree",
        "3",
    ]);
    assert_eq!(h, json!({"free_rank": 1, "torsion": []}));
}

#[test]
fn homology_groups() {
    let h3 = ok_json(&[
        "homology",
        "--quandle",
        "tilde:1",
        "--flavor",
        "Qrho",
        "--degree",
        "3",
    ]);
    assert_eq!(h3, json!({"free_rank": 1, "torsion": []}));
    let h2 = ok_json(&[
        "homology",
        "--quandle",
        "tilde:1",
        "--flavor",
        "Qrho",
        "--degree",
        "2",
    ]);
    assert_eq!(h2, json!({"free_rank": 0, "torsion": []}));
    let hy = ok_json(&[
        "homology",
        "--quandle",
        "tilde:1",
        "--flavor",
        "Qrho",
        "--degree",
        "3",
        "--checkerboard",
    ]);
    assert_eq!(hy, json!({"free_rank": 1, "torsion": [3]}));
    let r3 = ok_json(&[
        "homology",
        "--quandle",
        "dihedral:3",
        "--flavor",
        "Q",
        "--degree",
        "3",
    ]);
    assert_eq!(r3, json!({"free_rank": 0, "torsion": [3]}));
}

#[test]
fn cocycle_values_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.json");
    let g = dir.path().join("gamma.json");
    write_output(&["chain", "--name", "c"], &c);
    write_output(&["chain", "--name", "gamma"], &g);
    let c = c.to_str().unwrap();
    let g = g.to_str().unwrap();
    assert_eq!(
        ok_json(&["cocycle", "--name", "phi", "--eval", c])["value"],
        1
    );
    assert_eq!(
        ok_json(&["cocycle", "--name", "phi_prime", "--eval", c])["value"],
        4
    );
    assert_eq!(
        ok_json(&["cocycle", "--name", "phi_pp", "--eval", g])["value"],
        8
    );
    assert_eq!(
        ok_json(&["cocycle", "--name", "phi", "--eval", g])["value"],
        2
    );
    let m = ok_json(&["cocycle", "--name", "phi_prime", "--monic", "--check"]);
    assert_eq!(
        (
            m["monic"].clone(),
            m["bounded"].clone(),
            m["cocycle"].clone()
        ),
        (json!(true), json!(true), json!(true))
    );

    let class = ok_json(&["homology", "--degree", "3", "--class", c]);
    assert_eq!(class["class"]["free"][0].as_i64().unwrap().abs(), 1);
    let gy = ok_json(&["homology", "--degree", "3", "--checkerboard", "--class", g]);
    assert_eq!(gy["class"]["free"][0].as_i64().unwrap().abs(), 1);
}

#[test]
fn class_of_a_non_cycle_fails() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, r#"{"degree":3,"terms":[{"coeff":1,"x":[0,1,2]}]}"#).unwrap();
    let out = run(&["homology", "--degree", "3", "--class", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn triple_point_bounds() {
    let dir = tempfile::tempdir().unwrap();
    for m in [1, 3] {
        let p = dir.path().join(format!("records{m}.json"));
        write_output(
            &[
                "chain",
                "--name",
                "c",
                "--records",
                "--times",
                &m.to_string(),
            ],
            &p,
        );
        let v = ok_json(&[
            "bound",
            "--records",
            p.to_str().unwrap(),
            "--cocycle",
            "phi_prime",
        ]);
        assert_eq!(v["bound"], 4 * m);
    }
    let p = dir.path().join("gamma.json");
    write_output(&["chain", "--name", "gamma", "--records"], &p);
    assert_eq!(
        ok_json(&[
            "bound",
            "--records",
            p.to_str().unwrap(),
            "--cocycle",
            "phi"
        ])["bound"],
        2
    );
}

#[test]
fn scans() {
    let v = ok_json(&[
        "scan",
        "--quandle",
        "tilde:1",
        "--max-support",
        "3",
        "--mode",
        "exhaustive",
    ]);
    assert_eq!(v["counterexample_count"], 0);
    assert_eq!(v["quotient_rank"], 12);
    let args = [
        "scan",
        "--mode",
        "random",
        "--min-support",
        "4",
        "--max-support",
        "5",
        "--trials",
        "500",
        "--seed",
        "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["supports_checked"], 500);
}

#[test]
fn colorings() {
    let v = ok_json(&["color", "--quandle", "dihedral:3", "--gauss", TREFOIL]);
    assert_eq!(
        (v["total"].clone(), v["nontrivial"].clone()),
        (json!(9), json!(6))
    );
    let v = ok_json(&[
        "color",
        "--quandle",
        "tilde:1",
        "--gauss",
        TREFOIL,
        "--nontrivial",
    ]);
    assert!(v["nontrivial"].as_u64().unwrap() > 0);
    let out = run(&[
        "color", "--gauss", TREFOIL, "--gauss", "", "--format", "csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text,
        format!("code,quandle,total,nontrivial\n{TREFOIL},dihedral:3,9,6\n,dihedral:3,3,0\n")
    );
    assert_eq!(run(&["color", "--gauss", "O1+U1-x"]).status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(
        run(&["homology", "--degree", "3", "--flavor", "X"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["group", "--n", "12"]).status.code(), Some(3));
    assert_eq!(
        run(&["homology", "--degree", "3", "--max-matrix-cells", "100"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["bound", "--records", "/nonexistent.json"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn output_is_deterministic() {
    let args = ["homology", "--degree", "3", "--checkerboard"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let pretty = run(&[
        "homology",
        "--degree",
        "3",
        "--checkerboard",
        "--format",
        "pretty",
    ]);
    assert_eq!(
        String::from_utf8(pretty.stdout).unwrap(),
        "H_3^Qrho = Z ⊕ Z_3\n"
    );
}
