//! End-to-end tests of the binary: exit codes, JSON schema conformance,
//! and agreement between human and JSON output.

use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tropdiff"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a single JSON document")
}

fn basis_file(content: &str) -> tempfile_path::TempPath {
    tempfile_path::write(content)
}

/// Minimal file-backed temp paths without extra dependencies.
mod tempfile_path {
    use std::path::PathBuf;
    use std::sync::atomic::{AtomicU64, Ordering};

    static COUNTER: AtomicU64 = AtomicU64::new(0);

    pub struct TempPath(pub PathBuf);

    impl Drop for TempPath {
        fn drop(&mut self) {
            let _ = std::fs::remove_file(&self.0);
        }
    }

    impl TempPath {
        pub fn as_str(&self) -> &str {
            self.0.to_str().unwrap()
        }
    }

    pub fn write(content: &str) -> TempPath {
        let mut path = std::env::temp_dir();
        path.push(format!(
            "tropdiff-test-{}-{}.txt",
            std::process::id(),
            COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        std::fs::write(&path, content).unwrap();
        TempPath(path)
    }
}

const EXAMPLE_BASIS: &str = "\
# certified basis of the running example
D4(y)+D2(y)+D1(y)
D6(y)-2*D2(y)-D5(y)-D1(y)
3*D2(y)+D9(y)+2*D1(y)
D13(y)-2*D9(y)+5*D5(y)-D1(y)
";

// ---- JSON schema validation ----

fn schema() -> Value {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../schema/output.schema.json"
    );
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Structural validator for the subset of JSON Schema the shipped schema
/// uses: type, enum, required, properties, additionalProperties, items,
/// minItems, maxItems, oneOf, $ref into #/definitions.
fn validate(schema_root: &Value, node: &Value, spec: &Value, path: &str) -> Result<(), String> {
    if let Some(reference) = spec.get("$ref").and_then(Value::as_str) {
        let name = reference
            .strip_prefix("#/definitions/")
            .ok_or_else(|| format!("{}: unsupported $ref {}", path, reference))?;
        let target = &schema_root["definitions"][name];
        return validate(schema_root, node, target, path);
    }
    if let Some(options) = spec.get("oneOf").and_then(Value::as_array) {
        let hits = options
            .iter()
            .filter(|opt| validate(schema_root, node, opt, path).is_ok())
            .count();
        return if hits == 1 {
            Ok(())
        } else {
            Err(format!("{}: oneOf matched {} branches", path, hits))
        };
    }
    if let Some(allowed) = spec.get("enum").and_then(Value::as_array) {
        if !allowed.contains(node) {
            return Err(format!("{}: {} not in enum", path, node));
        }
        return Ok(());
    }
    if let Some(ty) = spec.get("type").and_then(Value::as_str) {
        let ok = match ty {
            "object" => node.is_object(),
            "array" => node.is_array(),
            "string" => node.is_string(),
            "integer" => node.is_i64() || node.is_u64(),
            "number" => node.is_number(),
            "boolean" => node.is_boolean(),
            "null" => node.is_null(),
            other => return Err(format!("{}: unknown type {}", path, other)),
        };
        if !ok {
            return Err(format!("{}: expected {}, got {}", path, ty, node));
        }
    }
    if let Some(obj) = node.as_object() {
        if let Some(required) = spec.get("required").and_then(Value::as_array) {
            for key in required {
                let key = key.as_str().unwrap();
                if !obj.contains_key(key) {
                    return Err(format!("{}: missing required key {}", path, key));
                }
            }
        }
        let props = spec.get("properties").and_then(Value::as_object);
        if let Some(props) = props {
            for (key, value) in obj {
                match props.get(key) {
                    Some(sub) => {
                        validate(schema_root, value, sub, &format!("{}/{}", path, key))?
                    }
                    None => {
                        if spec.get("additionalProperties") == Some(&Value::Bool(false)) {
                            return Err(format!("{}: unexpected key {}", path, key));
                        }
                    }
                }
            }
        }
    }
    if let Some(arr) = node.as_array() {
        if let Some(min) = spec.get("minItems").and_then(Value::as_u64) {
            if (arr.len() as u64) < min {
                return Err(format!("{}: fewer than {} items", path, min));
            }
        }
        if let Some(max) = spec.get("maxItems").and_then(Value::as_u64) {
            if (arr.len() as u64) > max {
                return Err(format!("{}: more than {} items", path, max));
            }
        }
        if let Some(item_spec) = spec.get("items") {
            for (i, item) in arr.iter().enumerate() {
                validate(schema_root, item, item_spec, &format!("{}/{}", path, i))?;
            }
        }
    }
    Ok(())
}

fn assert_schema(doc: &Value) {
    let root = schema();
    validate(&root, doc, &root, "$").unwrap_or_else(|e| panic!("schema violation: {}", e));
    // result payloads validate against their per-command definition
    if let (Some(cmd), Some(result)) = (doc["command"].as_str(), doc.get("result")) {
        let spec = &root["definitions"][cmd];
        assert!(
            !spec.is_null(),
            "schema has no definition for command {}",
            cmd
        );
        validate(&root, result, spec, &format!("$({})", cmd))
            .unwrap_or_else(|e| panic!("schema violation: {}", e));
    }
}

// ---- tests ----

#[test]
fn trdgb_example_human_and_json_agree() {
    let human = run(&["--support", "4N", "trdgb", "D4(y)+D2(y)+D1(y)"]);
    assert_eq!(human.status.code(), Some(0));
    let text = String::from_utf8(human.stdout).unwrap();

    let json = run(&["--support", "4N", "--json", "trdgb", "D4(y)+D2(y)+D1(y)"]);
    assert_eq!(json.status.code(), Some(0));
    let doc = stdout_json(&json);
    assert_schema(&doc);
    assert_eq!(doc["status"], "ok");
    let basis = doc["result"]["basis"].as_array().unwrap();
    assert_eq!(basis.len(), 4);
    for element in basis {
        assert!(
            text.contains(element.as_str().unwrap()),
            "human output lists {}",
            element
        );
    }
}

#[test]
fn trdgb_traces_flag_includes_provenance() {
    let out = run(&[
        "--support",
        "4N",
        "--json",
        "--traces",
        "trdgb",
        "D4(y)+D2(y)+D1(y)",
    ]);
    let doc = stdout_json(&out);
    assert_schema(&doc);
    let traces = doc["result"]["traces"].as_array().unwrap();
    assert_eq!(traces.len(), 4);
    assert_eq!(traces[0]["input"], 0);
    assert!(traces[1]["spair"].is_object());
}

#[test]
fn initial_command_matches_printed_form() {
    let out = run(&["--support", "{0,2,4}", "initial", "y1*D2(y1)+D1(y1)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "y1*D2(y1)");
}

#[test]
fn member_and_reduce_gb_against_basis_file() {
    let file = basis_file(EXAMPLE_BASIS);
    let out = run(&[
        "--support",
        "4N",
        "--basis",
        file.as_str(),
        "--json",
        "member",
        "3*D2(y)+D9(y)+2*D1(y)",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_schema(&doc);
    assert_eq!(doc["result"]["verdict"], "member");

    let out = run(&[
        "--support",
        "4N",
        "--basis",
        file.as_str(),
        "--json",
        "reduce-gb",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_schema(&doc);
    let basis = doc["result"]["basis"].as_array().unwrap();
    assert_eq!(basis.len(), 3);
}

#[test]
fn exit_code_contract() {
    // 0: definite outcome
    let out = run(&["--support", "4N", "bound", "D4(y)+D2(y)+D1(y)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "11");

    // 1: parse error, reported on stderr with a span
    let out = run(&["--support", "4N", "initial", "y3 + y"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    let json = run(&["--support", "4N", "--json", "initial", "y3 + y"]);
    assert_eq!(json.status.code(), Some(1));
    let doc = stdout_json(&json);
    assert_schema(&doc);
    assert_eq!(doc["status"], "error");
    assert_eq!(doc["error"]["code"], "index-out-of-range");

    // 2: inconclusive outcome
    let file = basis_file("y + t*D1(y)\n");
    let out = run(&[
        "--support",
        "N",
        "--basis",
        file.as_str(),
        "--cap",
        "10",
        "reduce",
        "y + t^2*D1(y)",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cap_env_override() {
    let file = basis_file("y + t*D1(y)\n");
    let out = bin()
        .env("TROPDIFF_CAP", "4")
        .args([
            "--support",
            "N",
            "--basis",
            file.as_str(),
            "--json",
            "reduce",
            "y + t^2*D1(y)",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["result"]["steps"], 4);

    // an explicit flag wins over the environment
    let out = bin()
        .env("TROPDIFF_CAP", "4")
        .args([
            "--support",
            "N",
            "--basis",
            file.as_str(),
            "--json",
            "--cap",
            "6",
            "reduce",
            "y + t^2*D1(y)",
        ])
        .output()
        .unwrap();
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["result"]["steps"], 6);
}

#[test]
fn check_gb_refutation_payload() {
    let file = basis_file("D4(y)+D2(y)+D1(y)\n");
    let out = run(&[
        "--support",
        "4N",
        "--basis",
        file.as_str(),
        "--json",
        "check-gb",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_schema(&doc);
    assert_eq!(doc["result"]["outcome"], "refuted");
    assert_eq!(doc["result"]["pair"], serde_json::json!([[0, 0], [0, 2]]));

    // explicit bound never certifies
    let single = basis_file("y\n");
    let out = run(&[
        "--support",
        "N",
        "--basis",
        single.as_str(),
        "--json",
        "check-gb",
        "--bound",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let doc = stdout_json(&out);
    assert_schema(&doc);
    assert_eq!(doc["result"]["outcome"], "inconclusive");
}

#[test]
fn support_check_reports() {
    let file = basis_file("D1(y) - y\n");
    let out = run(&[
        "--support",
        "N",
        "--basis",
        file.as_str(),
        "--window",
        "10",
        "--json",
        "support-check",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let doc = stdout_json(&out);
    assert_schema(&doc);
    assert_eq!(doc["result"]["report"], "none-in-window");

    let file = basis_file("y\n");
    let out = run(&[
        "--support",
        "N",
        "--basis",
        file.as_str(),
        "--json",
        "support-check",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_schema(&doc);
    assert_eq!(doc["result"]["report"], "monomial-found");
    assert_eq!(doc["result"]["witness"], "y1");
}

#[test]
fn spoly_and_leading_payloads() {
    let out = run(&[
        "--support",
        "4N",
        "--json",
        "spoly",
        "D4(y)+D2(y)+D1(y)",
        "D6(y)+D4(y)+D3(y)",
    ]);
    let doc = stdout_json(&out);
    assert_schema(&doc);
    assert_eq!(
        doc["result"]["spoly"],
        "-D6(y1) - D3(y1) + D2(y1) + D1(y1)"
    );

    let out = run(&["--support", "4N", "--json", "leading", "3*D2(y)+D9(y)+2*D1(y)"]);
    let doc = stdout_json(&out);
    assert_schema(&doc);
    assert_eq!(doc["result"]["lm"], "D2(y1)");
    assert_eq!(doc["result"]["lc"], "3");
    assert_eq!(doc["result"]["value"], 2);
}

#[test]
fn missing_support_or_basis_is_an_error() {
    let out = run(&["initial", "y"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["--support", "N", "member", "y"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["--support", "N", "--basis", "/nonexistent/path", "member", "y"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_ordering_is_rejected() {
    let out = run(&["--support", "N", "--ordering", "lex", "initial", "y"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["--support", "N", "--ordering", "dorder-deglex", "initial", "y"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn json_errors_stay_on_stdout_as_one_document() {
    let out = run(&["--support", "4N", "--json", "initial", "1/(t-t)*y"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = stdout_json(&out);
    assert_schema(&doc);
    assert_eq!(doc["error"]["code"], "zero-denominator");
}
