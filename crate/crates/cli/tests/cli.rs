use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn felab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_felab"))
        .args(args)
        .env_remove("FELAB_CACHE")
        .output()
        .expect("run felab")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = felab(&full);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stderr)));
    (code(&out), v)
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("schema")
}

fn load_schema(name: &str) -> Value {
    let text = fs::read_to_string(schema_dir().join(name)).unwrap();
    serde_json::from_str(&text).unwrap()
}

/// Checks the subset of JSON Schema the shipped schemas use: type, enum,
/// required, properties, items, minimum, allOf and `$ref` to a sibling file
/// or to `#/$defs/...` in the current file.
fn validate(value: &Value, schema: &Value, root: &Value, path: &str) -> Vec<String> {
    let mut errs = Vec::new();
    if let Some(r) = schema.get("$ref").and_then(Value::as_str) {
        if let Some(name) = r.strip_prefix("#/$defs/") {
            errs.extend(validate(value, &root["$defs"][name], root, path));
        } else {
            let other = load_schema(r);
            errs.extend(validate(value, &other, &other, path));
        }
    }
    if let Some(all) = schema.get("allOf").and_then(Value::as_array) {
        for s in all {
            errs.extend(validate(value, s, root, path));
        }
    }
    if let Some(t) = schema.get("type") {
        let types: Vec<&str> = match t {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => vec![],
        };
        let ok = types.iter().any(|t| match *t {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "integer" => value.is_u64() || value.is_i64(),
            "boolean" => value.is_boolean(),
            "null" => value.is_null(),
            _ => false,
        });
        if !ok {
            errs.push(format!("{path}: expected {types:?}, got {value}"));
            return errs;
        }
    }
    if let Some(e) = schema.get("enum").and_then(Value::as_array) {
        if !e.contains(value) {
            errs.push(format!("{path}: {value} not in {e:?}"));
        }
    }
    if let (Some(m), Some(x)) = (schema.get("minimum").and_then(Value::as_i64), value.as_i64()) {
        if x < m {
            errs.push(format!("{path}: {x} below {m}"));
        }
    }
    if let Some(req) = schema.get("required").and_then(Value::as_array) {
        for k in req.iter().filter_map(Value::as_str) {
            if value.get(k).is_none() {
                errs.push(format!("{path}: missing `{k}`"));
            }
        }
    }
    if let (Some(props), Some(obj)) = (schema.get("properties").and_then(Value::as_object), value.as_object()) {
        for (k, s) in props {
            if let Some(v) = obj.get(k) {
                errs.extend(validate(v, s, root, &format!("{path}.{k}")));
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), value.as_array()) {
        for (i, v) in arr.iter().enumerate() {
            errs.extend(validate(v, items, root, &format!("{path}[{i}]")));
        }
    }
    errs
}

fn assert_valid(value: &Value, schema_name: &str) {
    let schema = load_schema(schema_name);
    let errs = validate(value, &schema, &schema, "$");
    assert!(errs.is_empty(), "{schema_name}: {errs:#?}");
}

#[test]
fn check_exit_codes() {
    assert_eq!(code(&felab(&["check", "max", "odd", "--N", "2"])), 1);
    assert_eq!(code(&felab(&["check", "a-thick", "N", "--n", "10"])), 0);
    let out = felab(&["check", "a-ip", "construct(exgamma,20)", "--L", "2", "--horizon", "10000"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn check_json_matches_schema() {
    let (c, v) = json(&["check", "max", "odd", "--N", "2", "--horizon", "1000"]);
    assert_eq!(c, 1);
    assert_eq!(v["verdict"], "refuted");
    assert_eq!(v["certificate"]["kind"], "residue");
    assert_eq!(v["certificate"]["m"], 2);
    assert_valid(&v, "check.schema.json");
}

#[test]
fn fe_examples_with_oracle_agreement() {
    let (c, v) = json(&["fe", "{2,3}", "mult(6)", "--horizon", "1000"]);
    assert_eq!(c, 0);
    assert_eq!(v["certificate"]["k"], 6);
    assert_eq!(v["oracle"]["agrees"], true);
    assert_eq!(v["oracle"]["oracle_k"], 6);
    assert_valid(&v, "fe.schema.json");

    let (c, v) = json(&["fe", "{6,8}", "union(level(2),level(5))", "--horizon", "1000"]);
    assert_eq!(c, 1);
    assert_eq!(v["certificate"]["kind"], "level");
    assert_eq!(v["certificate"]["delta"].as_i64().map(i64::abs), Some(1));
    assert_valid(&v, "fe.schema.json");

    let (c, v) = json(&["fe", "mult(3)", "mult(3)", "--horizon", "1000"]);
    assert_eq!(c, 0);
    assert_eq!(v["certificate"]["k"], 1);
}

#[test]
fn me_json_matches_schema() {
    let (c, v) = json(&["me", "{2,3,5}", "mult(6)", "--m", "2", "--horizon", "100"]);
    assert_eq!(c, 0);
    assert_valid(&v, "me.schema.json");
}

#[test]
fn diagram_reports() {
    let (c, v) = json(&["diagram", "odd", "--horizon", "2000"]);
    assert_eq!(c, 0);
    assert_valid(&v, "report.schema.json");
    let find = |name: &str| v["properties"].as_array().unwrap().iter().find(|p| p["name"] == name).cloned().unwrap();
    assert_eq!(find("A-pcws")["verdict"]["verdict"], "proved");
    assert_eq!(find("MAX")["verdict"]["verdict"], "refuted");
}

#[test]
fn diagram_is_deterministic() {
    let a = felab(&["--json", "diagram", "construct(fp_primes,odd,6)", "--horizon", "3000"]);
    let b = felab(&["--json", "diagram", "construct(fp_primes,odd,6)", "--horizon", "3000"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn diagram_batch_emits_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let list = dir.path().join("exprs.txt");
    fs::write(&list, "# corpus\nN\nodd\n\nmult(\n").unwrap();
    let out = felab(&["diagram", "--batch", list.to_str().unwrap(), "--horizon", "500"]);
    // The malformed line is reported in place and makes the run fail.
    assert_eq!(code(&out), 3);
    let lines: Vec<Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    assert_valid(&lines[0], "report.schema.json");
    assert_eq!(lines[1]["expr"], "ap(1,2)");
    assert!(lines[2]["error"].is_string());
}

#[test]
fn construct_listings() {
    let out = felab(&["construct", "exgamma", "6"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().next(), Some("1 2 6 12 25 48"));

    let (c, v) = json(&["construct", "thick_nonmaxstar", "4"]);
    assert_eq!(c, 0);
    assert_eq!(v["avoided"], serde_json::json!([3, 6, 12, 20]));
    assert_valid(&v, "construct.schema.json");

    let out = felab(&["construct", "nonesuch"]);
    assert_eq!(code(&out), 3);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("exgamma") && err.contains("mj_funcs"), "{err}");
}

#[test]
fn construct_emit_round_trips_through_file_sets() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fp.txt");
    let out = felab(&["construct", "fp_primes", "odd", "3", "--emit", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with('#'));
    let listed: Vec<u64> = text.lines().filter(|l| !l.starts_with('#')).map(|l| l.parse().unwrap()).collect();
    assert_eq!(listed, vec![2, 5, 10, 11, 22, 55, 110]);

    let expr = format!("file(\"{}\")", path.display());
    let (c, v) = json(&["fe", &expr, "construct(fp_primes,odd,3)", "--horizon", "1000"]);
    assert_eq!(c, 0);
    assert_eq!(v["certificate"]["k"], 1);
}

#[test]
fn chain_verifies() {
    let (c, v) = json(&["chain", "3", "6", "--verify"]);
    assert_eq!(c, 0);
    assert_eq!(v["levels"].as_array().unwrap().len(), 4);
    assert_eq!(v["verified"], true);
    assert_valid(&v, "chain.schema.json");

    let (c, v) = json(&["chain", "0", "4"]);
    assert_eq!(c, 0);
    assert_eq!(v["levels"], serde_json::json!([[1, 2, 3, 4]]));
}

#[test]
fn atlas_reports() {
    let (c, v) = json(&["atlas", "1"]);
    assert_eq!(c, 0);
    assert_eq!(v["up_closed"], 2);
    assert_valid(&v, "atlas.schema.json");

    let (c, v) = json(&["atlas", "12", "--exhaustive"]);
    assert_eq!(c, 0);
    assert_eq!(v["subsets_checked"], 4096);

    assert_eq!(code(&felab(&["atlas", "21"])), 3);
}

#[test]
fn parse_dumps_ast() {
    let (c, v) = json(&["parse", "inter(mult(2), compl(mult(2)))"]);
    assert_eq!(c, 0);
    assert_eq!(v["canonical"], "inter(mult(2),compl(mult(2)))");
    assert_eq!(v["ast"]["node"], "inter");
    assert_valid(&v, "parse.schema.json");
    assert_eq!(code(&felab(&["parse", "mult(2"])), 3);
}

#[test]
fn usage_errors_exit_three() {
    assert_eq!(code(&felab(&["frobnicate"])), 3);
    assert_eq!(code(&felab(&["check"])), 3);
    assert_eq!(code(&felab(&["check", "no-such-property", "N"])), 3);
    assert_eq!(code(&felab(&["--help"])), 0);
    assert_eq!(code(&felab(&["--version"])), 0);
}

#[test]
fn resource_errors_exit_five() {
    let out = felab(&["me", "N", "mult(3)", "--m", "3", "--horizon", "1000"]);
    assert_eq!(code(&out), 5);
}

#[test]
fn sieve_cache_is_reused_and_tamper_checked() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("sieve.bin");
    let c = cache.to_str().unwrap();
    let first = felab(&["--cache", c, "--horizon", "5000", "--json", "check", "max", "N", "--N", "5"]);
    assert_eq!(code(&first), 0);
    assert!(cache.exists());

    let again = felab(&["--cache", c, "--horizon", "5000", "--json", "check", "max", "N", "--N", "5"]);
    assert_eq!(first.stdout, again.stdout);
    assert!(again.stderr.is_empty());

    let mut bytes = fs::read(&cache).unwrap();
    let mid = bytes.len() / 2;
    bytes[mid] ^= 0x40;
    fs::write(&cache, bytes).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_felab"))
        .args(["--horizon", "5000", "--json", "check", "max", "N", "--N", "5"])
        .env("FELAB_CACHE", &cache)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(out.stdout, first.stdout);
    assert!(String::from_utf8_lossy(&out.stderr).contains("digest mismatch"));
}
