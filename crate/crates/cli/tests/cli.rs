//! Behavior tests that drive the compiled binary the way a script would.

use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quatzd"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("spawn quatzd");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
    )
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, stdout, stderr) = run(&full);
    let value: Value = serde_json::from_str(&stdout).unwrap_or_else(|e| {
        panic!("bad JSON from {full:?}: {e}\nstdout:\n{stdout}\nstderr:\n{stderr}")
    });
    (code, value)
}

#[test]
fn no_arguments_is_a_usage_error() {
    let (code, _, stderr) = run(&[]);
    assert_eq!(code, 1);
    assert!(stderr.contains("Usage") || stderr.contains("usage"), "{stderr}");
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let (code, _, _) = run(&["--definitely-not-a-flag"]);
    assert_eq!(code, 1);
}

#[test]
fn help_and_version_exit_zero() {
    let (code, stdout, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("verify"), "{stdout}");
    let (code, _, _) = run(&["--version"]);
    assert_eq!(code, 0);
}

#[test]
fn modulus_below_two_is_rejected() {
    let (code, _, stderr) = run(&["info", "1"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("n >= 2"), "{stderr}");
}

#[test]
fn info_reports_predictions() {
    let (code, v) = run_json(&["info", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["n"], 6);
    assert_eq!(v["elements"], 1296);
    assert_eq!(v["predicted"]["unit_count"], 384);
    assert_eq!(v["predicted"]["vertex_count"], 911);
    assert_eq!(v["predicted"]["domination"], 5);
}

#[test]
fn build_dot_undirected() {
    let (code, stdout, _) = run(&["build", "3", "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("graph zd {"), "{stdout}");
    assert_eq!(stdout.matches("label=").count(), 32);
    assert!(stdout.contains(" -- "));
    assert!(!stdout.contains(" -> "));
}

#[test]
fn build_dot_directed() {
    let (code, stdout, _) = run(&["build", "3", "--directed", "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("digraph zd {"), "{stdout}");
    assert!(stdout.contains(" -> "));
}

#[test]
fn build_writes_output_file() {
    let path = std::env::temp_dir().join(format!("quatzd-test-{}.edges", std::process::id()));
    let path_str = path.to_str().unwrap();
    let (code, _, _) = run(&["build", "2", "--format", "edges", "--out", path_str]);
    assert_eq!(code, 0);
    let body = std::fs::read_to_string(&path).expect("output file written");
    std::fs::remove_file(&path).ok();
    // 7 vertices, every line "code code"
    assert!(!body.is_empty());
    for line in body.lines() {
        let parts: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(parts.len(), 2, "line {line:?}");
        parts.iter().for_each(|p| {
            p.parse::<u64>().expect("numeric code");
        });
    }
}

#[test]
fn verify_full_n6_all_match() {
    let (code, v) = run_json(&["verify", "6", "--depth", "full"]);
    assert_eq!(code, 0);
    let m = v["match"].as_object().unwrap();
    for (k, flag) in m {
        assert_eq!(flag, &Value::Bool(true), "field {k}");
    }
    assert_eq!(v["computed"]["domination"], 5);
    assert_eq!(v["computed"]["diameter"], 3);
    assert_eq!(v["witnesses"]["domination"]["certificate_dominates"], true);
    assert_eq!(v["meta"]["schema"], "zdq.report/v1");
}

#[test]
fn verify_range_graph_diameters() {
    let (code, v) = run_json(&["verify", "2-8", "--depth", "graph"]);
    assert_eq!(code, 0);
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 7);
    let diameters: Vec<u64> = reports
        .iter()
        .map(|r| r["computed"]["diameter"].as_u64().unwrap())
        .collect();
    assert_eq!(diameters, [2, 2, 2, 2, 3, 2, 2]);
    for r in reports {
        assert_eq!(r["match"]["diameter"], true, "n = {}", r["spec"]["n"]);
        assert_eq!(r["match"]["girth_undirected"], true, "n = {}", r["spec"]["n"]);
    }
}

#[test]
fn verify_counts_depth_omits_graph_fields() {
    let (code, v) = run_json(&["verify", "10", "--depth", "counts"]);
    assert_eq!(code, 0);
    assert_eq!(v["computed"]["vertex_count"], 6159);
    assert!(v["computed"]["diameter"].is_null());
    assert!(v["witnesses"]["girth_undirected_cycle"].is_null());
}

#[test]
fn verify_n9_full_skips_domination() {
    // 9 = 3^2: no closed-form certificate, and the ring is over the default
    // solver cap, so the gamma field degrades to "skipped" and exit code 2.
    let (code, v) = run_json(&["verify", "9", "--depth", "full"]);
    assert_eq!(code, 2);
    assert_eq!(v["predicted"]["domination"], "uncovered");
    assert_eq!(v["computed"]["domination"], "skipped");
    assert_eq!(v["match"]["domination"], "n/a");
    assert_eq!(v["match"]["vertex_count"], true);
}

#[test]
fn dominate_exact_n6() {
    let (code, v) = run_json(&["dominate", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["gamma"], 5);
    assert_eq!(v["result"]["method"], "exact");
    assert_eq!(v["certificate_dominates"], true);
    assert_eq!(v["matches_predicted"], true);
    assert_eq!(v["result"]["certificate"].as_array().unwrap().len(), 5);
}

#[test]
fn dominate_default_cap_rejects_n8() {
    let (code, _, stderr) = run(&["dominate", "8"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("budget"), "{stderr}");
}

#[test]
fn dominate_n8_with_raised_cap() {
    let (code, v) = run_json(&["dominate", "8", "--solver-vertices", "4096"]);
    assert_eq!(code, 0);
    assert_eq!(v["vertex_count"], 2047);
    assert_eq!(v["gamma"], 1);
    assert_eq!(v["matches_predicted"], true);
}

#[test]
fn dominate_certificate_n15() {
    let (code, v) = run_json(&["dominate", "15", "--method", "certificate"]);
    assert_eq!(code, 0);
    assert_eq!(v["certificate_dominates"], true);
    assert_eq!(v["result"]["certificate"].as_array().unwrap().len(), 10);
    assert_eq!(v["matches_predicted"], true);
}

#[test]
fn dominate_node_budget_exhaustion_reports_bounds() {
    let (code, v) = run_json(&["dominate", "3", "--budget", "1"]);
    assert_eq!(code, 2);
    assert_eq!(v["result"]["method"], "bounds-only");
    assert_eq!(v["result"]["lo"], 3);
    assert_eq!(v["result"]["hi"], 4);
    assert_eq!(v["certificate_dominates"], true);
    assert!(v["gamma"].is_null());
}

#[test]
fn orbits_partition_zero_divisors() {
    let (code, v) = run_json(&["orbits", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["orbit_count"], 4);
    assert_eq!(v["zero_divisors"], 32);
    assert_eq!(v["partition_ok"], true);
    for row in v["orbits"].as_array().unwrap() {
        assert_eq!(row["size"], 8);
    }
}

#[test]
fn orbits_rejects_composite_modulus() {
    let (code, _, stderr) = run(&["orbits", "4"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("not prime"), "{stderr}");
}

#[test]
fn annihilators_structure_holds() {
    let (code, v) = run_json(&["annihilators", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["sizes_ok"], true);
    assert_eq!(v["same_side_intersections_trivial"], true);
    assert_eq!(v["mixed_ok"], true);
    assert_eq!(v["mixed_intersection_size"], 3);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for row in rows {
        assert_eq!(row["right_size"], 9);
        assert_eq!(row["left_size"], 9);
    }
}

#[test]
fn probe_overlaps_closed_form_on_n4() {
    let (code, v) = run_json(&["probe", "quat", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["vertex_count"], 127);
    assert_eq!(v["covered_by_formula"], true);
    assert_eq!(v["result"]["lo"], 1);
    assert_eq!(v["result"]["hi"], 1);
}

#[test]
fn shipped_schema_id_matches_emitted_reports() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/report_schema_v1.json");
    let schema: Value =
        serde_json::from_str(&std::fs::read_to_string(path).expect("schema file")).unwrap();
    let (_, v) = run_json(&["verify", "2", "--depth", "counts"]);
    assert_eq!(schema["$id"], v["meta"]["schema"]);
}

#[test]
fn json_is_stable_across_thread_counts() {
    let (c1, mut a) = run_json(&["--threads", "1", "verify", "4", "--depth", "full"]);
    let (c2, mut b) = run_json(&["--threads", "3", "verify", "4", "--depth", "full"]);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    a.as_object_mut().unwrap().remove("meta");
    b.as_object_mut().unwrap().remove("meta");
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}
