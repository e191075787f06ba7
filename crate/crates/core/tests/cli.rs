use std::process::Command;

use serde_json::Value;

fn multab(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_multab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn schema() -> Value {
    let text = include_str!("../schema/report.schema.json");
    serde_json::from_str(text).unwrap()
}

fn type_matches(v: &Value, ty: &str) -> bool {
    match ty {
        "string" => v.is_string(),
        "number" => v.is_number(),
        "integer" => v.is_u64() || v.is_i64(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        "array" => v.is_array(),
        "object" => v.is_object(),
        _ => panic!("unsupported type {ty}"),
    }
}

/// Checks the keywords the shipped schema uses: type, enum, const,
/// required, properties, items, additionalProperties.
fn validate(v: &Value, s: &Value, path: &str) -> Result<(), String> {
    if let Some(ty) = s.get("type") {
        let ok = match ty {
            Value::String(t) => type_matches(v, t),
            Value::Array(ts) => ts.iter().any(|t| type_matches(v, t.as_str().unwrap())),
            _ => false,
        };
        if !ok {
            return Err(format!("{path}: {v} is not {ty}"));
        }
    }
    if let Some(Value::Array(options)) = s.get("enum") {
        if !options.contains(v) {
            return Err(format!("{path}: {v} not in enum"));
        }
    }
    if let Some(c) = s.get("const") {
        if c != v {
            return Err(format!("{path}: {v} != {c}"));
        }
    }
    if let (Some(Value::Array(req)), Some(obj)) = (s.get("required"), v.as_object()) {
        for key in req {
            if !obj.contains_key(key.as_str().unwrap()) {
                return Err(format!("{path}: missing {key}"));
            }
        }
    }
    if let Some(obj) = v.as_object() {
        let props = s.get("properties").and_then(Value::as_object);
        for (k, child) in obj {
            match props.and_then(|p| p.get(k)) {
                Some(sub) => validate(child, sub, &format!("{path}.{k}"))?,
                None => {
                    if let Some(extra) = s.get("additionalProperties") {
                        validate(child, extra, &format!("{path}.{k}"))?;
                    }
                }
            }
        }
    }
    if let (Some(items), Some(arr)) = (s.get("items"), v.as_array()) {
        for (i, child) in arr.iter().enumerate() {
            validate(child, items, &format!("{path}[{i}]"))?;
        }
    }
    Ok(())
}

fn check_json(args: &[&str], row_def: &str) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = multab(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let s = schema();
    validate(&v, &s, "$").unwrap();
    let row_schema = &s["$defs"][row_def];
    for row in v["rows"].as_array().unwrap() {
        validate(row, row_schema, "$.rows").unwrap();
    }
    v
}

#[test]
fn json_outputs_validate_against_schema() {
    let v = check_json(&["count", "--kind", "H", "--q", "2", "--n", "4", "--b", "all"], "count_row");
    assert_eq!(v["rows"][2]["count"], "9");
    check_json(&["count", "--kind", "T", "--n", "4..6", "--b", "n/2"], "count_row");
    check_json(&["count", "--kind", "M", "--q", "3", "--deg", "2,4"], "count_row");
    check_json(&["sample", "--kind", "T", "--n", "20", "--b", "5", "--trials", "2000"], "sample_row");
    check_json(&["sample", "--kind", "H", "--p", "3", "--n", "6", "--b", "2", "--trials", "2000"], "sample_row");
    check_json(&["fit", "--n", "10,20"], "fit_row");
    let v = check_json(&["verify", "--scope", "appendix"], "verify_row");
    assert_eq!(v["passed"], true);
}

#[test]
fn validator_rejects_bad_documents() {
    let s = schema();
    let bad = serde_json::json!({"command": "count", "delta": "0.08607", "notes": [], "columns": [], "rows": []});
    assert!(validate(&bad, &s, "$").is_err());
    let row = serde_json::json!({"kind": "H", "q": 2, "n": 4, "b": 2, "count": 9, "density": 0.5, "predicted": 1.0, "ratio": 1.0});
    assert!(validate(&row, &s["$defs"]["count_row"], "$").is_err());
}

#[test]
fn exit_codes() {
    assert_eq!(multab(&["count", "--kind", "T", "--n", "4", "--b", "2"]).status.code(), Some(0));
    assert_eq!(multab(&["count", "--kind", "X"]).status.code(), Some(2));
    assert_eq!(multab(&["count", "--kind", "H", "--q", "6", "--n", "4", "--b", "2"]).status.code(), Some(2));
    assert_eq!(
        multab(&["--partition-cap", "100", "count", "--kind", "T", "--n", "40", "--b", "3"]).status.code(),
        Some(3)
    );
    let out = Command::new(env!("CARGO_BIN_EXE_multab"))
        .env("MULTAB_PARTITION_CAP", "100")
        .args(["count", "--kind", "T", "--n", "40", "--b", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn verify_scopes() {
    let out = multab(&["verify", "--scope", "appendix"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let scopes: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert!(!scopes.is_empty() && scopes.iter().all(|&s| s == "appendix"));
    assert!(multab(&["verify"]).status.success());
}

#[test]
fn output_file_and_gnuplot() {
    let dir = std::env::temp_dir().join(format!("multab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fit.dat");
    let out = multab(&["fit", "--n", "16,24", "--gnuplot", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# delta = 0.086071\n"));
    let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data.len(), 2);
    assert_eq!(data[0].split(' ').count(), 5);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn construct_family_reports_cap() {
    let out = multab(&["construct", "--family", "--q", "2", "--b", "1024", "--M", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let get = |k: &str| row[header.iter().position(|&h| h == k).unwrap()];
    assert_eq!(get("size"), "5");
    assert_eq!(get("degree_cap_ok"), "true");
    assert!(get("min_f").parse::<f64>().unwrap() >= 0.5);
    assert_eq!(multab(&["construct", "--family", "--q", "2", "--b", "64", "--M", "4"]).status.code(), Some(2));

    let out = multab(&["construct", "--family", "--q", "3", "--b", "4096"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let row = text.lines().last().unwrap();
    assert!(row.starts_with("3,4096,5,"), "{row}");
    assert!(row.contains(",true,0,"));
}
