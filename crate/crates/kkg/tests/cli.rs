//! The `kkg` binary end to end: determinism, encodings, exit statuses and check coverage.

use std::collections::BTreeSet;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kkg"))
        .env_remove("KKG_CACHE_DIR")
        .args(args)
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

const EXPONENT: &[&str] = &[
    "exponent", "--group", "GL", "--n", "2", "--ring", "witt", "--p", "5", "--f", "1", "--r", "2",
];

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        EXPONENT.to_vec(),
        vec![
            "exponent",
            "--group",
            "GL",
            "--n",
            "2",
            "--ring",
            "witt",
            "--p",
            "3",
            "--r",
            "3",
            "--sampled",
            "--trials",
            "500",
        ],
        vec!["verify", "lemma-power", "--samples", "20"],
        vec![
            "classes", "--group", "SL", "--n", "2", "--ring", "poly", "--p", "2", "--r", "2",
        ],
    ] {
        let mut full = vec!["--no-timings"];
        full.extend(&args);
        let a = run(&full);
        let b = run(&full);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn csv_and_json_carry_the_same_values() {
    let j = json(&[
        "--no-timings",
        "compare",
        "--group",
        "SL",
        "--n",
        "2",
        "--p",
        "2",
        "--r",
        "2",
    ]);
    let out = run(&[
        "--no-timings",
        "--format",
        "csv",
        "compare",
        "--group",
        "SL",
        "--n",
        "2",
        "--p",
        "2",
        "--r",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let mut rows = csv::Reader::from_reader(out.stdout.as_slice());
    let mut seen = 0;
    for row in rows.records() {
        let row = row.unwrap();
        let pointer = format!("/{}", row[0].replace('.', "/"));
        let value = j
            .pointer(&pointer)
            .unwrap_or_else(|| panic!("{pointer} missing from JSON"));
        let text = match value {
            Value::String(s) => s.clone(),
            Value::Null => String::new(),
            v => v.to_string(),
        };
        assert_eq!(text, &row[1], "{pointer}");
        seen += 1;
    }
    assert!(seen > 20);
    assert_eq!(j.pointer("/results/a/order"), Some(&Value::from(48)));
}

#[test]
fn exit_statuses() {
    assert_eq!(run(EXPONENT).status.code(), Some(0));
    // usage errors: non-prime p, unknown flag, bad literal, missing subcommand
    let mut not_prime = EXPONENT.to_vec();
    not_prime[8] = "6";
    assert_eq!(run(&not_prime).status.code(), Some(2));
    assert_eq!(run(&["exponent", "--bogus"]).status.code(), Some(2));
    let bad_literal = run(&[
        "order", "--group", "GL", "--n", "2", "--ring", "poly", "--p", "5", "--r", "2", "--matrix",
        "1,t;",
    ]);
    assert_eq!(bad_literal.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_literal.stderr).contains("literal"));
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn forged_cache_entry_is_caught_by_the_oracle() {
    // A well-formed file whose partition puts every element in its own class: it passes
    // the structural checks, but the linear-algebra route disagrees with the class count.
    let dir = tempfile::tempdir().unwrap();
    let cache = kkg::cache::Cache::new(Some(dir.path().to_path_buf()));
    let group = kkg_core::GroupDesc::new(
        kkg_core::Family::SL,
        2,
        kkg_core::RingDesc::new(kkg_core::RingKind::Witt, 2, 1, 2).unwrap(),
    )
    .unwrap();
    let table = kkg_core::enumerate_group(&group, kkg_core::ENUMERATION_CAP).unwrap();
    let forged = kkg_core::ClassPartition::from_class_of((0..table.size() as u32).collect());
    cache.store(&table, &forged).unwrap();

    let dir_arg = dir.path().to_str().unwrap();
    let out = run(&[
        "--no-timings",
        "--cache-dir",
        dir_arg,
        "verify",
        "oracle",
        "--groups",
        "SL2Z4",
    ]);
    assert_eq!(
        out.status.code(),
        Some(1),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["passed"], Value::Bool(false));
    assert_eq!(report["results"]["checks"][0]["status"], "fail");
}

#[test]
fn cache_directory_does_not_change_answers() {
    let dir = tempfile::tempdir().unwrap();
    let dir_arg = dir.path().to_str().unwrap();
    let args = [
        "--no-timings",
        "kuelshammer",
        "--group",
        "GL",
        "--n",
        "2",
        "--ring",
        "witt",
        "--p",
        "3",
        "--r",
        "2",
    ];
    let plain = run(&args);
    let mut cached = vec!["--cache-dir", dir_arg];
    cached.extend(args);
    let cold = run(&cached);
    let warm = run(&cached);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    assert_eq!(plain.stdout, cold.stdout);
    assert_eq!(plain.stdout, warm.stdout);

    let path = std::fs::read_dir(dir.path())
        .unwrap()
        .next()
        .unwrap()
        .unwrap()
        .path();
    let mut bytes = std::fs::read(&path).unwrap();
    bytes[20] ^= 1;
    std::fs::write(&path, bytes).unwrap();
    let recovered = run(&cached);
    assert_eq!(recovered.stdout, plain.stdout);
    assert!(String::from_utf8_lossy(&recovered.stderr).contains("ignoring cache entry"));
}

#[test]
fn verify_all_covers_every_checked_operation() {
    const MANIFEST: &[&str] = &[
        "ring_make",
        "uniformizer",
        "is_unit",
        "valuation",
        "reduce",
        "teichmuller",
        "witt_digits",
        "ring_selftest",
        "is_member",
        "element_order",
        "unitriangular_power",
        "chu_sum",
        "b_matrix",
        "sylow_p_elements",
        "p_exponent",
        "conjugacy_classes",
        "class_power_map",
        "kuelshammer_profile",
        "p_exponent_from_profile",
        "compare_groups",
        "algebra_table",
        "commutator_space",
        "kuelshammer_space",
        "perp",
        "oracle_profile",
    ];
    let report = json(&["--no-timings", "verify", "all", "--ring-max", "64"]);
    let checks = report["results"]["checks"].as_array().unwrap();
    let covered: BTreeSet<&str> = checks
        .iter()
        .flat_map(|c| {
            c["covers"]
                .as_array()
                .unwrap()
                .iter()
                .map(|v| v.as_str().unwrap())
        })
        .collect();
    let missing: Vec<&&str> = MANIFEST
        .iter()
        .filter(|op| !covered.contains(**op))
        .collect();
    assert!(
        missing.is_empty(),
        "not exercised by verify all: {missing:?}"
    );
    assert!(checks.iter().all(|c| c["status"] == "pass"));
    let kinds: BTreeSet<&str> = checks
        .iter()
        .map(|c| c["check"].as_str().unwrap())
        .collect();
    assert_eq!(kinds.len(), 11);
}

#[test]
fn published_schema_lists_the_report_fields() {
    let schema: Value = serde_json::from_str(include_str!("../schema/report.schema.json")).unwrap();
    let required: BTreeSet<&str> = schema["required"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    let report = json(&["--no-timings", "verify", "lemma-chu", "--pmax", "7"]);
    let keys: BTreeSet<&str> = report
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    assert_eq!(required, keys);
    assert_eq!(
        schema["properties"]["schema_version"]["const"],
        report["schema_version"]
    );
    let check_fields: BTreeSet<&str> = schema["$defs"]["check"]["required"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    let record: BTreeSet<&str> = report["results"]["checks"][0]
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    assert_eq!(check_fields, record);
}
