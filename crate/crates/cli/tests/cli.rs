use std::path::PathBuf;
use std::process::{Command, Output};

use dybe::scalars::parse_scalar;
use serde_json::Value;

fn dybe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dybe"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("dybe-cli-{}-{name}", std::process::id()))
}

#[test]
fn fusion_pipelines_reproduce_the_sl2_example() {
    let o = dybe(&["fusion", "--algebra", "sl2", "--method", "both"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["schema"], "dybe.fusion/1");
    assert_eq!(v["agree"], true);
    let want =
        serde_json::json!({"0,0": "1", "1,1": "1", "2,1": "-1/(l1+1)", "2,2": "1", "3,3": "1"});
    assert_eq!(v["construction"]["entries"], want);
    assert_eq!(v["abrr"]["entries"], want);
}

#[test]
fn exchange_pipelines_agree_on_powers() {
    let o = dybe(&[
        "exchange",
        "--algebra",
        "gl3",
        "--quantum",
        "--left",
        "L2",
        "--right",
        "V",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["agree"], true);
}

#[test]
fn catalog_solutions_verify() {
    let o = dybe(&[
        "verify",
        "qdybe",
        "--catalog",
        "R-eps-X",
        "--n",
        "3",
        "--X",
        "1,2",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["schema"], "dybe.verify/1");
    assert_eq!(v["reports"][0]["is_zero"], true);
    for args in [
        &[
            "verify",
            "all",
            "--catalog",
            "R-X",
            "--n",
            "3",
            "--X",
            "1,3",
        ][..],
        &[
            "verify",
            "braid",
            "--catalog",
            "R-eps-X",
            "--n",
            "2",
            "--X",
            "1,2",
            "--p",
            "3",
        ],
        &[
            "verify",
            "all",
            "--catalog",
            "r-eps-X",
            "--n",
            "3",
            "--flavor",
            "sl",
            "--X",
            "2",
        ],
        &[
            "verify",
            "all",
            "--catalog",
            "r-l",
            "--n",
            "3",
            "--roots",
            "1-2",
        ],
        &["verify", "all", "--catalog", "appA"],
        &[
            "verify",
            "all",
            "--catalog",
            "basic-trig",
            "--n",
            "3",
            "--gauge-two-form",
            "1,2,l1;2,3,7/3",
        ],
        &[
            "verify",
            "all",
            "--catalog",
            "basic-rational",
            "--n",
            "3",
            "--gauge-weyl",
            "3,1,2",
        ],
        &[
            "verify",
            "all",
            "--catalog",
            "R-eps-X",
            "--n",
            "3",
            "--X",
            "1,2,3",
            "--gauge-shift",
            "-1,1/2,0",
        ],
        &[
            "verify",
            "hecke",
            "--catalog",
            "gl-closed-form",
            "--n",
            "2",
            "--quantum",
            "--q",
            "s^2",
        ],
    ] {
        let o = dybe(args);
        assert_eq!(
            code(&o),
            if args.contains(&"hecke") { 1 } else { 0 },
            "{args:?}"
        );
    }
}

#[test]
fn perturbed_solutions_exit_with_one() {
    let o = dybe(&[
        "verify",
        "qdybe",
        "--catalog",
        "R-X",
        "--n",
        "2",
        "--X",
        "1,2",
        "--perturb",
        "0,0:l1",
    ]);
    assert_eq!(code(&o), 1);
    assert!(!json(&o)["reports"][0]["witness"].is_null());
    let o = dybe(&[
        "verify",
        "cdybe",
        "--catalog",
        "basic-rational",
        "--n",
        "3",
        "--perturb",
        "E12,E21:1",
    ]);
    assert_eq!(code(&o), 1);
    assert!(!json(&o)["reports"][0]["witness"]["value"].is_null());
}

#[test]
fn malformed_input_exits_with_two() {
    for args in [
        &["verify", "qdybe", "--catalog", "no-such-family"][..],
        &["verify", "all", "--catalog", "basic-trig", "--eps", "(("],
        &["verify", "qdybe", "--catalog", "R-X", "--X", "0"],
        &["verify", "qdybe"],
        &["fusion", "--bogus"],
        &["run", "--job", "/nonexistent/job.json"],
        &["acceptance", "--criterion", "15"],
    ] {
        assert_eq!(code(&dybe(args)), 2, "{args:?}");
    }
    let bad = scratch("bad-job.json");
    std::fs::write(&bad, r#"{"schema": "dybe.job/0", "task": {"subcommand": "shapovalov", "depth": 1, "quantum": false}}"#).unwrap();
    assert_eq!(code(&dybe(&["run", "--job", bad.to_str().unwrap()])), 2);
    std::fs::remove_file(bad).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_dybe"))
        .args(["shapovalov", "--depth", "1"])
        .env("DYBE_WORKERS", "many")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn violated_preconditions_exit_with_three() {
    for args in [
        &["verify", "qdybe", "--catalog", "basic-rational"][..],
        &[
            "verify",
            "hecke",
            "--catalog",
            "gl-closed-form",
            "--quantum",
        ],
        &[
            "verify",
            "all",
            "--catalog",
            "appA",
            "--gamma1",
            "1",
            "--gamma2",
            "2",
            "--l-basis",
            "1,0,0;0,1,0;0,0,1",
        ],
        &[
            "verify",
            "all",
            "--catalog",
            "basic-rational",
            "--n",
            "3",
            "--gauge-two-form",
            "1,2,l3",
        ],
        &[
            "verify",
            "all",
            "--catalog",
            "r-l",
            "--n",
            "3",
            "--roots",
            "1-2,2-3",
        ],
        &["macdonald", "trace-residual", "--depth", "9"],
    ] {
        assert_eq!(code(&dybe(args)), 3, "{args:?}");
    }
}

#[test]
fn limit_matches_the_trigonometric_r_matrix() {
    let o = dybe(&[
        "limit",
        "--catalog",
        "gl-closed-form",
        "--n",
        "2",
        "--order",
        "2",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 3);
    assert_eq!(v["reports"][1]["equation"], "first-order");
    assert_eq!(v["reports"][1]["is_zero"], true);
}

#[test]
fn shapovalov_rows_vanish() {
    let o = dybe(&["shapovalov", "--depth", "2", "--quantum"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    assert!(v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["residual"] == "0"));
}

#[test]
fn macdonald_subcommands() {
    let o = dybe(&["macdonald", "operator", "--n", "2", "--r", "1"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["schema"], "dybe.diffop/1");
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
    let o = dybe(&["macdonald", "polynomial", "--mu", "1,0"]);
    let p = parse_scalar(json(&o)["polynomial"].as_str().unwrap()).unwrap();
    assert_eq!(p, parse_scalar("x1+x2").unwrap());
    for args in [
        &["macdonald", "eigen", "--mu", "2,1,0"][..],
        &["macdonald", "commutativity", "--n", "3", "--degree", "1"],
        &["macdonald", "transfer", "--quantum", "--w", "V"],
        &["macdonald", "corollary91", "--m", "1"],
        &[
            "macdonald",
            "trace-residual",
            "--side",
            "primal",
            "--depth",
            "2",
        ],
        &[
            "macdonald",
            "trace-residual",
            "--side",
            "dual",
            "--depth",
            "2",
        ],
        &[
            "macdonald",
            "trace-residual",
            "--side",
            "symmetry",
            "--depth",
            "1",
        ],
    ] {
        let o = dybe(args);
        assert_eq!(code(&o), 0, "{args:?}");
        assert_eq!(json(&o)["pass"], true, "{args:?}");
    }
}

#[test]
fn acceptance_subset() {
    let o = dybe(&["acceptance", "--criterion", "1,12"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 2);
    assert_eq!(v["criteria"][1]["id"], 12);
}

#[test]
fn jobs_replay_byte_identically() {
    let args = [
        "verify",
        "all",
        "--catalog",
        "R-eps-X",
        "--n",
        "2",
        "--X",
        "1,2",
        "--gauge-weyl",
        "2,1",
    ];
    let direct = dybe(&args);
    assert_eq!(code(&direct), 0);
    assert_eq!(dybe(&args).stdout, direct.stdout);
    let emitted = dybe(&[&args[..], &["--emit-job"]].concat());
    assert_eq!(code(&emitted), 0);
    let spec: dybe_cli::JobSpec = serde_json::from_slice(&emitted.stdout).unwrap();
    assert_eq!(spec.schema, "dybe.job/1");
    let path = scratch("job.json");
    std::fs::write(&path, &emitted.stdout).unwrap();
    let replay = dybe(&["run", "--job", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code(&replay), 0);
    assert_eq!(replay.stdout, direct.stdout);
}

#[test]
fn catalog_output_reads_back_as_a_solution() {
    let path = scratch("r.json");
    let o = dybe(&[
        "catalog",
        "--catalog",
        "R-eps-X",
        "--n",
        "2",
        "--X",
        "1,2",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let file = path.to_str().unwrap();
    assert_eq!(code(&dybe(&["verify", "qdybe", "--file", file])), 0);
    assert_eq!(
        code(&dybe(&["verify", "hecke", "--file", file, "--q", "s^2"])),
        0
    );
    assert_eq!(
        code(&dybe(&["verify", "hecke", "--file", file, "--q", "s^4"])),
        1
    );
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn worker_count_does_not_change_artifacts() {
    let run = |workers: &str| {
        Command::new(env!("CARGO_BIN_EXE_dybe"))
            .args([
                "verify",
                "qdybe",
                "--catalog",
                "R-X",
                "--n",
                "3",
                "--X",
                "1,2,3",
            ])
            .env("DYBE_WORKERS", workers)
            .output()
            .unwrap()
    };
    let one = run("1");
    assert_eq!(code(&one), 0);
    assert_eq!(run("4").stdout, one.stdout);
}
