use serde_json::{json, Value};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_fusionlim");

fn fusionlim(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

#[test]
fn unresolved_name_is_an_input_error() {
    let out = fusionlim(&["limits", "--input", "bad_name_ref"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("D8_flag"), "{err}");
}

#[test]
fn missing_file_and_bad_functor_are_input_errors() {
    assert_eq!(
        fusionlim(&["fusion", "--input", "/nonexistent.json"])
            .status
            .code(),
        Some(2)
    );
    let out = fusionlim(&[
        "theorem-b",
        "--input",
        "psl32_amalgam",
        "--functor",
        "cohomology",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn chain_budget_maps_to_exit_3() {
    let out = fusionlim(&["limits", "--input", "psl32_amalgam", "--budget-chains", "3"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degree"));
}

#[test]
fn report_embeds_the_resolved_job() {
    let out = fusionlim(&[
        "theorem-b",
        "--input",
        "psl32_amalgam",
        "--functor",
        "constant",
        "--radical",
        "paper",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["schema"], "fusionlim-report/1");
    assert_eq!(r["command"], "theorem-b");
    assert_eq!(r["status"], "ok");
    assert_eq!(r["job"]["functor"], "constant");
    assert_eq!(r["job"]["radical"], "paper");
    assert_eq!(r["job"]["max_degree"], 3);
    assert_eq!(
        r["job"]["groups"]["D8"]["generators"][0],
        json!([1, 6, 3, 5, 4, 2, 7])
    );
    let text = String::from_utf8_lossy(&out.stdout);
    let pos: Vec<usize> = [
        "\"schema\"",
        "\"command\"",
        "\"status\"",
        "\"job\"",
        "\"result\"",
    ]
    .iter()
    .map(|k| text.find(k).unwrap())
    .collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{pos:?}");
}

#[test]
fn out_flag_and_file_input() {
    let dir = std::env::temp_dir().join(format!("fusionlim-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let job = dir.join("job.json");
    let rep = dir.join("report.json");
    std::fs::write(&job, include_str!("../fixtures/s3_c3.json")).unwrap();
    let out = fusionlim(&[
        "--out",
        rep.to_str().unwrap(),
        "theorem-a",
        "--input",
        job.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&rep).unwrap()).unwrap();
    assert_eq!(r["result"]["cgp_dims"], json!([1]));
    assert_eq!(r["result"]["theorem_b_match"], "not-applicable");
    assert_eq!(r["result"]["euler_identity"], "true");
    std::fs::remove_dir_all(&dir).unwrap();
}

/// The constant functor written out explicitly has the same limits.
#[test]
fn explicit_functor_matches_constant() {
    let base = report(&fusionlim(&[
        "limits",
        "--input",
        "s4_group",
        "--functor",
        "constant",
    ]));
    let objects = base["result"]["objects"].as_array().unwrap().len();
    let morphisms = base["result"]["morphisms"].as_array().unwrap().len();
    let mut job = base["job"].clone();
    job["functor"] =
        json!({"explicit": {"dims": vec![1; objects], "matrices": vec![json!([[1]]); morphisms]}});
    let dir = std::env::temp_dir().join(format!("fusionlim-explicit-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("job.json");
    std::fs::write(&path, job.to_string()).unwrap();
    let out = fusionlim(&["limits", "--input", path.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(report(&out)["result"]["lim"], base["result"]["lim"]);
    assert_eq!(base["result"]["lim"], json!([1, 0, 0, 0]));
    std::fs::remove_dir_all(&dir).unwrap();
}

/// An explicit collection must be closed under F-conjugacy.
#[test]
fn explicit_collection() {
    let base = report(&fusionlim(&["fusion", "--input", "s4_group"]));
    let sylow = base["result"]["sylow"]["generators"].clone();
    let mut job = base["job"].clone();
    job["collection"] = json!({"explicit": [sylow]});
    job["functor"] = json!({"cohomology": 1});
    let dir = std::env::temp_dir().join(format!("fusionlim-coll-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("job.json");
    std::fs::write(&path, job.to_string()).unwrap();
    let out = fusionlim(&["limits", "--input", path.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let r = report(&out);
    assert_eq!(r["result"]["objects"].as_array().unwrap().len(), 1);
    // H¹(D8)^{Out_F(D8)} with Out_{S4}(D8) trivial
    assert_eq!(r["result"]["lim"], json!([2, 0, 0, 0]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn failing_catalog_parameters() {
    assert_eq!(
        fusionlim(&["catalog", "parker-stroth", "--p", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        fusionlim(&["catalog", "clelland-parker", "--n", "5", "--q", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn golden_reports() {
    for (args, golden) in [
        (
            &["theorem-b", "--input", "psl32_amalgam"][..],
            include_str!("golden/theorem_b_psl32.json"),
        ),
        (
            &["rep-graph", "--input", "s3_c3"][..],
            include_str!("golden/rep_graph_s3_c3.json"),
        ),
    ] {
        let out = fusionlim(args);
        assert_eq!(String::from_utf8_lossy(&out.stdout), golden, "{args:?}");
    }
}
