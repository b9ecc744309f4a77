//! End-to-end tests of the `su11` binary: output schemas, determinism,
//! round-trip parsing and the exit-code contract.

use std::process::{Command, Output};

fn su11(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_su11"))
        .args(args)
        .env_remove("SU11_DEFAULT_DIM")
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = su11(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8")
}

/// Parse a CSV emission into (schema, metadata pairs, header, rows).
fn parse_csv(text: &str) -> (String, Vec<(String, String)>, String, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let schema = lines.next().expect("schema line").to_string();
    assert!(schema.starts_with("# schema: "), "got {schema:?}");
    let mut meta = Vec::new();
    let mut header = String::new();
    for line in lines.by_ref() {
        if let Some(rest) = line.strip_prefix("# ") {
            let (key, value) = rest.split_once(" = ").expect("key = value");
            meta.push((key.to_string(), value.to_string()));
        } else {
            header = line.to_string();
            break;
        }
    }
    let rows = lines
        .map(|l| {
            l.split(',')
                .map(|v| v.parse::<f64>().expect("numeric cell"))
                .collect()
        })
        .collect();
    (schema, meta, header, rows)
}

fn meta_get<'a>(meta: &'a [(String, String)], key: &str) -> &'a str {
    meta.iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .unwrap_or_else(|| panic!("metadata key {key}"))
}

#[test]
fn state_cutoff_has_two_nonzero_rows() {
    let text = stdout_of(&["state", "--k", "0.5", "--r", "0.3", "--theta", "0", "--M", "1"]);
    let (schema, meta, header, rows) = parse_csv(&text);
    assert_eq!(schema, "# schema: su11.state.v1");
    assert_eq!(header, "n,re,im,abs2");
    assert_eq!(meta_get(&meta, "route"), "laguerre-cutoff");
    let nonzero = rows.iter().filter(|r| r[3] != 0.0).count();
    assert_eq!(nonzero, 2);
    // All mass in the first two rows.
    assert!((rows[0][3] + rows[1][3] - 1.0).abs() < 1e-12);
}

#[test]
fn state_eigen_route_reports_small_residual() {
    let text = stdout_of(&[
        "state", "--mu", "1", "--nu", "0.09", "--beta", "0.3", "--k", "1",
    ]);
    let (_, meta, _, _) = parse_csv(&text);
    let residual: f64 = meta_get(&meta, "residual").parse().unwrap();
    assert!(residual < 1e-9, "residual {residual:.3e}");
}

#[test]
fn state_coherent_branch_matches_two_term_recursion() {
    let text = stdout_of(&["state", "--k", "0.5", "--r", "0", "--beta-prime", "1.0"]);
    let (_, meta, _, rows) = parse_csv(&text);
    assert_eq!(meta_get(&meta, "route"), "transformed-recursion");
    // C_{n+1} = beta' C_n / sqrt((n+1)(2k+n)) at beta' = 1, k = 1/2.
    for n in 0..6 {
        let want = rows[n][1] / (((n + 1) * (n + 1)) as f64).sqrt();
        assert!(
            (rows[n + 1][1] - want).abs() < 1e-12,
            "row {}: {} vs {want}",
            n + 1,
            rows[n + 1][1]
        );
    }
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["state", "--k", "0.75", "--r", "0.4", "--theta", "0.9", "--M", "2"];
    assert_eq!(stdout_of(&args), stdout_of(&args));
    let args = ["cs-fig", "--figure", "4", "--points", "50"];
    assert_eq!(stdout_of(&args), stdout_of(&args));
    let args = ["verify", "radius"];
    assert_eq!(stdout_of(&args), stdout_of(&args));
}

#[test]
fn stamp_is_opt_in() {
    let plain = stdout_of(&["state", "--k", "0.5", "--r", "0.2", "--M", "0"]);
    assert!(!plain.contains("stamp"));
    let stamped = stdout_of(&["state", "--k", "0.5", "--r", "0.2", "--M", "0", "--stamp"]);
    assert!(stamped.contains("# stamp = "));
}

#[test]
fn figure_preset_equals_explicit_parameters() {
    let preset = stdout_of(&["cs-fig", "--figure", "4", "--points", "80"]);
    let custom = stdout_of(&[
        "cs-fig", "--lambda", "1.1", "--r", "0.69", "--theta", "0", "--points", "80",
    ]);
    assert_eq!(preset, custom);
}

#[test]
fn figure_csv_contract() {
    let text = stdout_of(&["cs-fig", "--figure", "3", "--points", "120"]);
    let (schema, meta, header, rows) = parse_csv(&text);
    assert_eq!(schema, "# schema: su11.figure.v1");
    assert_eq!(header, "x,density_perelomov,density_m1");
    assert_eq!(rows.len(), 120);
    let norm_m0: f64 = meta_get(&meta, "norm_m0").parse().unwrap();
    let norm_m1: f64 = meta_get(&meta, "norm_m1").parse().unwrap();
    assert!((norm_m0 - 1.0).abs() < 1e-8);
    assert!((norm_m1 - 1.0).abs() < 1e-8);
    // x grid is strictly increasing and densities are non-negative.
    for pair in rows.windows(2) {
        assert!(pair[1][0] > pair[0][0]);
    }
    assert!(rows.iter().all(|r| r[1] >= 0.0 && r[2] >= 0.0));
    // Metadata x_cl sits inside the grid for this preset.
    let x_cl: f64 = meta_get(&meta, "x_classical").parse().unwrap();
    assert!(x_cl > 0.0 && x_cl < rows.last().unwrap()[0]);
}

#[test]
fn verify_radius_reports_rho_two() {
    let out = su11(&["verify", "radius"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("valid JSON");
    assert_eq!(doc["schema"], "su11.verify.v1");
    assert_eq!(doc["pass"], true);
    let checks = doc["checks"].as_array().expect("checks array");
    assert!(checks
        .iter()
        .any(|c| c["check"] == "displacement-subseries-radius" && c["pass"] == true));
}

#[test]
fn verify_eigen_honors_overrides() {
    let out = su11(&["verify", "eigen", "--k", "0.75", "--r", "0.4", "--theta", "-1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("valid JSON");
    let first = &doc["checks"][0];
    assert_eq!(first["check"], "perelomov-eigenvalue");
    let params = first["params"].as_str().unwrap();
    assert!(params.contains("k=0.75") && params.contains("eigenvalue="));
}

#[test]
fn realization_tables() {
    // Squeezed vacuum over the even sector.
    let out = su11(&[
        "realization", "--kind", "amp2", "--j", "0", "--perelomov", "--r", "0.5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    assert_eq!(doc["schema"], "su11.realization.v1");
    assert_eq!(doc["effective_k"], 0.25);
    let rows = doc["rows"].as_array().unwrap();
    // Only even photon numbers appear.
    for row in rows {
        let label = row["label"][0].as_u64().unwrap();
        assert_eq!(label % 2, 0);
    }

    // Two-mode basis vector: a single |4, 1> entry.
    let out = su11(&[
        "realization", "--kind", "two-mode", "--p", "3", "--sign", "-", "--basis", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["label"][0], 4);
    assert_eq!(rows[0]["label"][1], 1);

    // Four-mode level-1 vacuum: the antisymmetric pair.
    let out = su11(&[
        "realization", "--kind", "four-mode", "--p1", "0", "--p2", "0", "--n", "1",
    ]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    let a = rows[0]["amp"][0].as_f64().unwrap();
    let b = rows[1]["amp"][0].as_f64().unwrap();
    assert!((a + b).abs() < 1e-12);
    assert!((a.abs() - 1.0 / 2.0f64.sqrt()).abs() < 1e-12);
}

#[test]
fn default_dim_env_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_su11"))
        .args(["state", "--k", "0.5", "--r", "0.2", "--beta-prime", "0.3"])
        .env("SU11_DEFAULT_DIM", "32")
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let (_, meta, _, rows) = parse_csv(&text);
    assert_eq!(meta_get(&meta, "dim"), "32");
    assert_eq!(rows.len(), 32);
}

#[test]
fn exit_code_contract() {
    // Usage error from clap: unknown flag.
    let out = su11(&["state", "--nonsense"]);
    assert_eq!(out.status.code(), Some(2));

    // Usage error from validation: k <= 0.
    let out = su11(&["state", "--k", "-1", "--r", "0.2", "--beta-prime", "0.3"]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).expect("error JSON");
    assert_eq!(err["schema"], "su11.error.v1");
    assert_eq!(err["kind"], "usage");

    // Numeric failure: truncation far too small for the tail.
    let out = su11(&[
        "state", "--k", "0.5", "--r", "1.2", "--beta-prime", "0.4", "--dim", "16",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).expect("error JSON");
    assert_eq!(err["kind"], "numeric");

    // Success path.
    let out = su11(&["verify", "bch"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn json_format_round_trips() {
    let out = su11(&[
        "state", "--k", "0.5", "--r", "0.3", "--M", "1", "--format", "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    assert_eq!(doc["schema"], "su11.state.v1");
    let rows = doc["rows"].as_array().unwrap();
    // abs2 column is consistent with re/im.
    for row in rows.iter().take(4) {
        let (re, im, abs2) = (
            row[1].as_f64().unwrap(),
            row[2].as_f64().unwrap(),
            row[3].as_f64().unwrap(),
        );
        assert!((re * re + im * im - abs2).abs() < 1e-15);
    }
}

#[test]
fn figure_json_round_trips() {
    let out = su11(&["cs-fig", "--figure", "5", "--points", "60", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    assert_eq!(doc["schema"], "su11.figure.v1");
    assert_eq!(doc["x"].as_array().unwrap().len(), 60);
    assert_eq!(doc["density_perelomov"].as_array().unwrap().len(), 60);
    assert_eq!(doc["density_m1"].as_array().unwrap().len(), 60);
    let norm = doc["norm_m1"].as_f64().unwrap();
    assert!((norm - 1.0).abs() < 1e-8);
}
