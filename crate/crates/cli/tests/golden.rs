//! Golden-file tests for the command-line front-end. Set UPDATE_GOLDEN=1 to
//! rewrite the expected outputs.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn dir(sub: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

fn run(args: &[&str], fixture: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weierpatch"))
        .args(args)
        .arg("-i")
        .arg(dir("fixtures").join(fixture))
        .output()
        .expect("binary runs")
}

/// (golden name, arguments, fixture)
const CASES: &[(&str, &[&str], &str)] = &[
    ("prepare_tx", &["prepare", "--ring", "Tx"], "prepare_tx.json"),
    ("prepare_ttx_f7", &["prepare"], "prepare_ttx_f7.json"),
    ("divide", &["divide", "--nt", "5", "--nx", "8"], "divide.json"),
    ("factor_matrix_pu", &["factor-matrix", "--direction", "pu"], "matrix_f7.json"),
    ("factor_matrix_up", &["factor-matrix", "--direction", "up"], "matrix_f7.json"),
    ("solve_patch", &["solve-patch"], "matrix_f7.json"),
    ("additive_split", &["additive-split"], "additive_split.json"),
    ("branch_decompose", &["branch-decompose"], "node.json"),
    ("branch_val", &["branch-val"], "branch_val.json"),
    ("obstruction_node", &["obstruction"], "obstruction_node.json"),
    ("split_cover_tate_3", &["split-cover", "--n", "3", "--dot"], "tate_graph.json"),
    ("split_cover_theta", &["split-cover"], "theta_graph.json"),
    ("split_cover_tree", &["split-cover"], "tree_graph.json"),
    ("choose_n_theta", &["choose-n"], "theta_graph.json"),
    ("choose_n_images", &["choose-n"], "images.json"),
    ("validate_cover", &["validate-cover"], "tate_cover_2.json"),
    ("validate_corrupt_cover", &["validate-cover"], "corrupt_cover.json"),
    ("u_bound_alg_closed", &["u-bound"], "alg_closed_patch.json"),
    ("u_bound_finite_2_local", &["u-bound"], "finite_2_local.json"),
    ("per_ind_brauer_dim_2", &["per-ind", "--roots-of-unity"], "brauer_dim_2.json"),
    ("per_ind_rational_laurent", &["per-ind"], "rational_laurent.json"),
];

#[test]
fn golden_outputs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatches = Vec::new();
    for (name, args, fixture) in CASES {
        let out = run(args, fixture);
        assert!(
            out.status.success(),
            "{name}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let path = dir("golden").join(format!("{name}.json"));
        if update {
            std::fs::write(&path, &out.stdout).unwrap();
            continue;
        }
        let want = std::fs::read(&path).unwrap_or_else(|_| panic!("missing golden file for {name}"));
        if want != out.stdout {
            mismatches.push(*name);
        }
    }
    assert!(mismatches.is_empty(), "outputs differ from golden files: {mismatches:?}");
}

#[test]
fn outputs_are_deterministic() {
    for (name, args, fixture) in CASES.iter().take(6) {
        assert_eq!(run(args, fixture).stdout, run(args, fixture).stdout, "{name}");
    }
}

fn json_out(args: &[&str], fixture: &str) -> Value {
    let out = run(args, fixture);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn documented_examples() {
    let p = json_out(&["prepare", "--ring", "Tx"], "prepare_tx.json");
    assert_eq!((p["m"].as_u64(), p["g"]["text"].as_str(), p["u"]["text"].as_str()), (Some(0), Some("x"), Some("1 + t*x")));

    let o = json_out(&["obstruction"], "obstruction_node.json");
    assert_eq!(o["verdict"], "fail");
    assert_eq!(o["witness"]["v"], serde_json::json!([1, 0]));

    let u = json_out(&["u-bound"], "alg_closed_patch.json");
    assert_eq!((u["exact"].as_bool(), u["u"].as_u64()), (Some(true), Some(4)));

    let f = json_out(&["factor-matrix"], "matrix_f7.json");
    assert_eq!(f["residual_norm"], f["left"]["prec"]["n_t"]);
}

#[test]
fn emitted_json_reparses() {
    // A series, a matrix and a cover written by the tool are valid inputs.
    let p = json_out(&["prepare"], "prepare_ttx_f7.json");
    let again = Command::new(env!("CARGO_BIN_EXE_weierpatch"))
        .args(["prepare", "--json", &p["u"].to_string()])
        .output()
        .unwrap();
    assert!(again.status.success());
    let u: Value = serde_json::from_slice(&again.stdout).unwrap();
    assert_eq!(u["m"], 0);
    assert_eq!(u["d"], 0);

    let f = json_out(&["factor-matrix"], "matrix_f7.json");
    let left = Command::new(env!("CARGO_BIN_EXE_weierpatch"))
        .args(["solve-patch", "--json", &f["left"].to_string()])
        .output()
        .unwrap();
    assert!(left.status.success(), "{}", String::from_utf8_lossy(&left.stderr));

    let c = json_out(&["split-cover", "--n", "4"], "theta_graph.json");
    let check = Command::new(env!("CARGO_BIN_EXE_weierpatch"))
        .args(["validate-cover", "--json", &c.to_string()])
        .output()
        .unwrap();
    let report: Value = serde_json::from_slice(&check.stdout).unwrap();
    assert_eq!(report["pass"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["prepare"], "broken.json").status.code(), Some(1));
    assert_eq!(run(&["branch-decompose"], "cusp.json").status.code(), Some(2));
    assert_eq!(run(&["obstruction"], "cusp_obstruction.json").status.code(), Some(2));
    assert_eq!(run(&["u-bound"], "char_two.json").status.code(), Some(2));
    assert_eq!(run(&["prepare"], "zero.json").status.code(), Some(3));
    let unknown = Command::new(env!("CARGO_BIN_EXE_weierpatch")).arg("frobnicate").output().unwrap();
    assert_ne!(unknown.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("Usage"));
}

#[test]
fn schema_files_are_json() {
    let mut count = 0;
    for entry in std::fs::read_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas")).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert!(v.get("$schema").is_some(), "{}", path.display());
        count += 1;
    }
    assert!(count >= 6);
}
