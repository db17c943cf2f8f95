use assert_cmd::Command;
use serde_json::Value;

fn kp() -> Command {
    let mut c = Command::cargo_bin("kpeterson").unwrap();
    c.env_remove("KPETERSON_TYPE");
    c
}

fn json(args: &[&str]) -> Value {
    let out = kp().args(args).assert().success().get_output().stdout.clone();
    serde_json::from_slice(&out).expect("stdout is JSON")
}

fn assert_gr_schema(doc: &Value, operation: &str) {
    assert_eq!(doc["root_system"], "A1");
    assert_eq!(doc["operation"], operation);
    assert!(doc["inputs"].is_array());
    let terms = doc["terms"].as_array().unwrap();
    assert!(!terms.is_empty());
    for t in terms {
        let keys: Vec<_> = t.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["finite_part", "translation", "coefficient"]);
        assert!(t["translation"].is_array());
        assert!(t["coefficient"].is_string());
    }
}

#[test]
fn product_json() {
    let doc = json(&["--type", "A1", "product", "s0", "s0"]);
    assert_gr_schema(&doc, "product");
    assert_eq!(doc["terms"][0]["coefficient"], "e[2]");
}

#[test]
fn expand_and_hop_json() {
    assert_gr_schema(&json(&["--type", "A1", "expand", "s0"]), "expand");
    assert_gr_schema(&json(&["--type", "A1", "expand", "s0", "--shift", "[1]"]), "expand");
    assert_gr_schema(&json(&["--type", "A1", "hop", "1", "s0"]), "hop");
}

#[test]
fn chevalley_entry_json() {
    let doc = json(&["--type", "A2", "chevalley", "--i", "1", "--w", "s1"]);
    assert_eq!(doc["type"], "A2");
    assert_eq!(doc["i"], 1);
    assert_eq!(doc["w"], "s1");
    for t in doc["terms"].as_array().unwrap() {
        let keys: Vec<_> = t.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["u", "Q_exponent", "coefficient"]);
    }
}

#[test]
fn chevalley_table_covers_every_entry() {
    let doc = json(&["--type", "A1", "chevalley"]);
    assert_eq!(doc.as_array().unwrap().len(), 2);
}

#[test]
fn table_format_is_derived_from_json() {
    let out = kp().args(["--type", "A1", "--format", "table", "product", "s0", "s0"]).assert().success();
    let text = String::from_utf8(out.get_output().stdout.clone()).unwrap();
    assert!(text.starts_with("root_system: A1\noperation: product\n"));
    assert!(text.contains("finite_part"));
    assert!(text.contains("e[0] - e[2]"));
}

#[test]
fn environment_supplies_the_type() {
    let a = kp().env("KPETERSON_TYPE", "A1").args(["product", "s0", "s0"]).assert().success();
    let b = kp().args(["--type", "A1", "product", "s0", "s0"]).assert().success();
    assert_eq!(a.get_output().stdout, b.get_output().stdout);
}

#[test]
fn cache_does_not_change_output() {
    let args = ["--type", "A2", "product", "s0", "s0 s1"];
    let a = kp().args(args).assert().success();
    let b = kp().args(args).arg("--no-cache").assert().success();
    assert_eq!(a.get_output().stdout, b.get_output().stdout);
}

#[test]
fn exit_codes() {
    kp().args(["product", "s0", "s0"]).assert().code(4);
    kp().args(["--type", "Z9", "product", "s0", "s0"]).assert().code(4);
    kp().args(["--type", "A1", "product", "s7", "s0"]).assert().code(4);
    kp().args(["--type", "A1", "product", "s0", "x y"]).assert().code(4);
    kp().args(["--type", "A1", "--N", "9", "product", "s0", "s0"]).assert().code(4);
    kp().args(["--type", "A1", "--bogus"]).assert().code(4);
    kp().args(["--type", "A1", "--window", "1", "expand", "s0 s1 s0 s1 s0"]).assert().code(3);
    kp().args(["--type", "A1", "verify", "--suite", "sl2"]).assert().code(0);
}
