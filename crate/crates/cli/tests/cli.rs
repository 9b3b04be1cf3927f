//! End-to-end tests against the built binary: flag mapping, exit codes,
//! output determinism, and the config-file round trip.

use std::process::{Command, Output};

fn rext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rext"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

#[test]
fn spectrum_json_reports_both_degeneracy_routes() {
    let out = rext(&[
        "spectrum", "--family", "a", "--steps", "2,3", "--nmax", "20", "--format", "json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["schema_version"], "1");
    assert_eq!(value["command"], "spectrum");
    assert_eq!(value["n_min"], -3);
    assert_eq!(value["n_max"], 20);
    let results = value["results"].as_array().unwrap();
    assert_eq!(results.len(), 24);
    for row in results {
        assert_eq!(row["deg_enumerated"], row["deg_closed_form"]);
    }
    // N = 5 for a one-step m=2 system sits in the N+k branch.
    let out = rext(&[
        "spectrum", "--family", "a", "--steps", "2", "--nmax", "5", "--format", "json",
    ]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let last = value["results"].as_array().unwrap().last().unwrap().clone();
    assert_eq!(last["n"], 5);
    assert_eq!(last["energy"], "10");
    assert_eq!(last["deg_enumerated"], 6);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "daska", "--family", "a", "--steps", "2", "--nmax", "12", "--format", "json",
    ];
    let first = rext(&args);
    let second = rext(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn inadmissible_specs_exit_with_validation_code() {
    let out = rext(&["spectrum", "--family", "a", "--steps", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("parity"));

    let out = rext(&["spectrum", "--family", "b", "--steps", "2", "--lx", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("alpha bound"));

    let out = rext(&["spectrum", "--family", "q", "--steps", "2"]);
    assert_eq!(out.status.code(), Some(1));

    let out = rext(&["spectrum", "--family", "a", "--steps", "2", "--badflag"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn empty_range_is_an_empty_array_with_success() {
    let out = rext(&[
        "spectrum", "--family", "a", "--steps", "2", "--nmin", "5", "--nmax", "4", "--format",
        "json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["results"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_table3_passes_for_reference_systems() {
    for steps in ["2", "2,3"] {
        let out = rext(&[
            "verify-table3", "--family", "a", "--steps", steps, "--nmax", "25", "--format", "csv",
        ]);
        assert!(out.status.success(), "steps {steps}");
        let text = stdout(&out);
        assert!(text.lines().count() > 20);
        assert!(text.lines().skip(1).all(|l| l.contains("true")));
    }
}

#[test]
fn daska_json_has_nine_families_for_the_worked_example() {
    let out = rext(&[
        "daska", "--family", "a", "--steps", "2", "--nmax", "10", "--format", "json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let families = value["results"]["families"].as_array().unwrap();
    assert_eq!(families.len(), 9);
    for f in families {
        assert_eq!(f["validity"]["kind"], "AllP");
    }
    let unions = value["results"]["unions"].as_array().unwrap();
    assert_eq!(unions.len(), 13);
}

#[test]
fn config_file_round_trips_and_matches_flags() {
    let dir = std::env::temp_dir().join("rext-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("system.conf");

    // Emit a config record from flags, then consume it.
    let out = rext(&[
        "spectrum", "--family", "d", "--steps", "2,3", "--lx", "3", "--ly", "2",
        "--emit-config",
    ]);
    assert!(out.status.success());
    std::fs::write(&path, stdout(&out)).unwrap();
    let config_arg = path.to_str().unwrap();

    let from_config = rext(&[
        "spectrum", "--config", config_arg, "--nmax", "8", "--format", "json",
    ]);
    let from_flags = rext(&[
        "spectrum", "--family", "d", "--steps", "2,3", "--lx", "3", "--ly", "2", "--nmax", "8",
        "--format", "json",
    ]);
    assert!(from_config.status.success());
    assert_eq!(from_config.stdout, from_flags.stdout);
}

#[test]
fn output_flag_writes_the_report_to_disk() {
    let dir = std::env::temp_dir().join("rext-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("levels.csv");
    let out = rext(&[
        "spectrum", "--family", "c", "--steps", "2", "--ly", "1", "--nmax", "4", "--format",
        "csv", "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("n,energy,deg_enumerated,deg_closed_form,states"));
    // Energies are exact rational strings, never floats.
    assert!(text.contains("3/2"));

    // Unwritable paths surface as I/O failures.
    let out = rext(&[
        "spectrum", "--family", "c", "--steps", "2", "--ly", "1", "--output",
        "/nonexistent-dir/levels.csv",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn diff_report_flags_the_printed_constants() {
    let out = rext(&[
        "diff-report", "--family", "a", "--steps", "2", "--format", "json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let mismatches = value["results"]["structure"][0]["mismatches"]
        .as_array()
        .unwrap();
    assert_eq!(mismatches.len(), 3);
    for m in mismatches {
        assert_eq!(m["offset"], "-1");
    }
    assert!(value["results"]["printed_phi"].is_object());

    // Family c agrees everywhere: empty mismatch list, no phi section.
    let out = rext(&[
        "diff-report", "--family", "c", "--steps", "2", "--ly", "1", "--format", "json",
    ]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        value["results"]["structure"][0]["mismatches"]
            .as_array()
            .unwrap()
            .len(),
        0
    );
    assert!(value["results"]["printed_phi"].is_null());
}

#[test]
fn structure_fn_emits_factor_quadruples() {
    let out = rext(&[
        "structure-fn", "--family", "a", "--steps", "2", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("source,coef_h,coef_k,constant,prefactor"));
    // 6 derived + 6 printed factors for m = 2.
    assert_eq!(text.lines().count(), 13);
    assert!(text.contains("derived,1/2,6,5,1"));
}

#[test]
fn verify_numeric_passes_for_the_one_step_system() {
    let out = rext(&[
        "verify-numeric", "--family", "a", "--steps", "2", "--format", "json",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["results"]["passed"], true);
    let gap = value["results"]["x"]["gap_checks"][0]["measured"]
        .as_f64()
        .unwrap();
    assert!((gap - 6.0).abs() < 2e-3);
}

#[test]
fn table_output_is_human_readable() {
    let out = rext(&["unirreps", "--family", "a", "--steps", "2", "--nmax", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("p-multiset"));
    assert!(text.contains("[-3,0,3]"));
}
