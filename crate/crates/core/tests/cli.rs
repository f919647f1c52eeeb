use std::process::Command;

use bwangle::SpaceDescriptor;
use serde_json::Value;

fn bwangle(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bwangle")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

const L1: &str = r#"{"family":"hoelder","p":1}"#;

#[test]
fn taxicab_angle_in_radians_and_degrees() {
    let (code, out, _) = bwangle(&["angle", "--space", L1, "--x", "1,0", "--y", "1,1", "--rho", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("angle_rad  0.722734247813"), "{out}");
    let (_, out, _) = bwangle(&["angle", "--space", L1, "--x", "1,0", "--y", "1,1", "--rho", "0", "--degrees"]);
    assert!(out.contains("angle_deg  41.4096221093"), "{out}");
}

#[test]
fn undefined_angle_reports_cosine() {
    let (code, out, _) =
        bwangle(&["angle", "--space", r#"{"family":"hexagon","r":3}"#, "--x", "1,3", "--y", "-1,3", "--rho", "-0.5"]);
    assert_eq!(code, 2);
    let c: f64 = out.lines().find(|l| l.starts_with("cosine")).unwrap().split_whitespace().last().unwrap().parse().unwrap();
    assert!((c - 8.0 / 10f64.sqrt()).abs() < 1e-11);
}

#[test]
fn upsilon_of_taxicab() {
    let (code, out, _) = bwangle(&["upsilon", "--space", L1, "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let nu = v["result"]["nu"].as_f64().unwrap();
    let mu = v["result"]["mu"].as_f64().unwrap();
    assert!((nu + 1.0).abs() <= 1e-3 && (mu - 1.0).abs() <= 1e-3);
    assert_eq!(v["config"]["args"]["seed"], bwangle::DEFAULT_SEED);
    assert_eq!(v["config"]["args"]["resolution"], 1024);
}

#[test]
fn exit_codes_for_bad_input() {
    assert_eq!(bwangle(&["angle", "--space", "{\"family\":\"torus\"}", "--x", "1,0", "--y", "0,1", "--rho", "0"]).0, 3);
    assert_eq!(bwangle(&["csb", "--space", r#"{"family":"hoelder","p":-1}"#, "--rho", "0"]).0, 3);
    assert_eq!(bwangle(&["csb", "--space", L1, "--rho", "0", "--resolution", "10"]).0, 3);
    assert_eq!(bwangle(&["axioms", "--space", "/nonexistent/space.json", "--rho", "0"]).0, 3);
    assert_eq!(bwangle(&["sweep", "--family", "torus"]).0, 3);
    assert_eq!(bwangle(&["--version"]).0, 0);
}

#[test]
fn space_from_file_and_output_path() {
    let dir = std::env::temp_dir().join(format!("bwangle-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let space = dir.join("hex.json");
    std::fs::write(&space, r#"{"family":"hexagon","r":2}"#).unwrap();
    let out = dir.join("corners.csv");
    let (code, stdout, _) = bwangle(&[
        "corners",
        "--space",
        space.to_str().unwrap(),
        "--format",
        "csv",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# config: "));
    assert_eq!(lines.next().unwrap(), "kind,y_hat_x,y_hat_y,x_bar_x,x_bar_y,m_minus,m_plus,delta_max");
    assert!(text.contains("concave,0,1,1,0,-1,1,"), "{text}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn identical_runs_are_byte_identical() {
    for args in [
        vec!["csb", "--space", L1, "--rho", "1.2"],
        vec!["axioms", "--space", L1, "--rho", "0", "--samples", "500", "--format", "csv"],
        vec!["sphere-export", "--space", r#"{"family":"hexagon","r":2}"#, "--resolution", "64", "--format", "csv"],
    ] {
        assert_eq!(bwangle(&args), bwangle(&args));
    }
    let args = ["csb", "--space", r#"{"family":"hoelder","p":1,"dimension":3}"#, "--rho", "1.5", "--random-pairs", "5000"];
    let one = Command::new(env!("CARGO_BIN_EXE_bwangle")).args(args).env("BWANGLE_THREADS", "1").output().unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_bwangle")).args(args).env("BWANGLE_THREADS", "4").output().unwrap();
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn echoed_space_round_trips() {
    for space in [
        r#"{"family":"hexagon","r":2.5}"#,
        r#"{"family":"product","left":{"family":"hoelder","p":2,"dimension":1},"right":{"family":"hoelder","p":2,"dimension":1},"p":3}"#,
        r#"{"family":"polygon","vertices":[[1,0],[0.5,1],[-1,0],[-0.5,-1]]}"#,
        r#""pathological_b""#,
    ] {
        let (code, out, err) = bwangle(&["curvature", "--space", space, "--format", "json", "--resolution", "256"]);
        assert_eq!(code, 0, "{err}");
        let v: Value = serde_json::from_str(&out).unwrap();
        let echoed = SpaceDescriptor::from_value(&v["config"]["args"]["space"]).unwrap();
        assert_eq!(echoed, SpaceDescriptor::from_json(space).unwrap());
    }
}

#[test]
fn every_subcommand_runs() {
    let hex = r#"{"family":"hexagon","r":2}"#;
    for args in [
        vec!["product", "--space", hex, "--x", "1,2", "--y", "-1,2", "--rho", "0"],
        vec!["classify", "--space", hex, "--rho-list", "-1,0", "--resolution", "256"],
        vec!["curvature", "--space", L1, "--format", "json"],
        vec!["sweep", "--family", "hexagon", "--params", "0,2", "--rho-grid", "-1,0,1", "--resolution", "128", "--format", "csv"],
    ] {
        let (code, out, err) = bwangle(&args);
        assert_eq!(code, 0, "{args:?}: {err}");
        assert!(out.starts_with("# config: ") || out.starts_with('{'));
    }
}
