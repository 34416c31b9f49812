use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn g2syl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2syl")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&v).expect("schema compiles")
}

fn assert_valid(schema_name: &str, doc: &Value) {
    let s = schema(schema_name);
    let msgs: Vec<String> = match s.validate(doc) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{e} at {}", e.instance_path)).take(5).collect(),
    };
    panic!("{schema_name}: {msgs:?}");
}

#[test]
fn group_order() {
    let o = g2syl(&["group-order", "--q", "7"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "117649");
    let o = g2syl(&["group-order", "--p", "3", "--k", "2"]);
    assert_eq!(stdout(&o).trim(), "531441");
}

#[test]
fn commutators_check_at_q25() {
    let o = g2syl(&["commutators-check", "--q", "25"]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn character_table_needs_p_above_3() {
    let o = g2syl(&["character-table", "--q", "3"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("p > 3"));
}

#[test]
fn budget_is_enforced() {
    let o = g2syl(&["verify", "--q", "11", "--suite", "super"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn bad_field_is_rejected() {
    assert!(!g2syl(&["group-order", "--q", "6"]).status.success());
    assert!(!g2syl(&["group-order", "--q", "8"]).status.success());
    assert!(!g2syl(&["group-order"]).status.success());
}

#[test]
fn verify_all_at_q5_passes_with_valid_report() {
    let o = g2syl(&["verify", "--q", "5", "--suite", "all", "--format", "json"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_valid("report.schema.json", &v);
    assert_eq!(v["suite"], "all");
    assert!(v["checks"].as_array().unwrap().len() > 50);
}

#[test]
fn verify_at_q3_without_chartab() {
    let o = g2syl(&["verify", "--q", "3", "--suite", "group,orbits,super"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));
    let o = g2syl(&["verify", "--q", "3", "--suite", "all"]);
    assert!(!o.status.success());
}

#[test]
fn character_table_json() {
    let o = g2syl(&["character-table", "--q", "5", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_valid("table.schema.json", &v);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 169);
    assert_eq!(v["columns"].as_array().unwrap().len(), 169);
    let trivial = &rows[0];
    assert_eq!(trivial["character"], "chi_lin(A12=0,A23=0)");
    for (_, cell) in trivial["values"].as_object().unwrap() {
        assert_eq!(cell["zeta_coeffs"][0], serde_json::json!(["1", "1"]));
        assert!(cell["zeta_coeffs"].as_array().unwrap()[1..].iter().all(|c| c[0] == "0"));
    }
    let chi6 = rows.iter().find(|r| r["character"] == "chi_6q2(A17=1,A12=0)").unwrap();
    assert_eq!(chi6["values"]["I"]["zeta_coeffs"][0], serde_json::json!(["25", "1"]));
}

#[test]
fn supercharacter_table_and_listings_validate() {
    let o = g2syl(&["supercharacter-table", "--q", "3", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_valid("table.schema.json", &v);
    assert_eq!(v["rows"].as_array().unwrap().len(), 17);

    let o = g2syl(&["classes", "--q", "5", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_valid("list.schema.json", &v);
    assert_eq!(v["rows"].as_array().unwrap().len(), 169);

    let o = g2syl(&["superclasses", "--q", "5", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_valid("list.schema.json", &v);
    assert_eq!(v["rows"].as_array().unwrap().len(), 41);

    let o = g2syl(&["classes", "--q", "3", "--format", "csv"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("representative,size,superclass\n"));
}

#[test]
fn output_is_deterministic_and_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.md");
    let b = dir.path().join("b.md");
    for path in [&a, &b] {
        let o = g2syl(&["character-table", "--q", "5", "--out", path.to_str().unwrap()]);
        assert!(o.status.success());
        assert!(o.stdout.is_empty());
    }
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("# Character table of the Sylow p-subgroup of G2(5)"));
    assert!(text.contains("| chi_lin(A12=0,A23=0) | 1 |"));
}
