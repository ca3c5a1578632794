use std::process::Command;

use dynatomic::cli::config::{parse_config, resolve, Overrides};
use dynatomic::cli::run;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("dynatomic").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let (code, out, _) = call(&a);
    (code, serde_json::from_str(out.trim()).unwrap())
}

#[test]
fn phi_text_output() {
    let (code, out, _) = call(&["phi", "--d", "2", "--n", "1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("# Y1(1) over Q"));
    assert!(out.ends_with("[1] z^2 c^0\n[-1] z^1 c^0\n[1] z^0 c^1\n"));
    let (code, out, _) = call(&["phi", "--d", "2", "--n", "2"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("[1] z^2 c^0\n[1] z^1 c^0\n[1] z^0 c^1\n[1] z^0 c^0\n"));
}

#[test]
fn no_linear_factor() {
    let (code, v) = json(&["scan", "--p", "3", "--d", "2", "--e", "1", "--n", "2", "--m", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["factors"], serde_json::json!([]));
}

#[test]
fn json_carries_schema() {
    let (code, v) = json(&["phi", "--d", "3", "--n", "2", "--p", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "v1");
    assert_eq!(v["deg_z"], 6);
    assert_eq!(v["field"]["q"], 7);
    let (_, v) = json(&["bounds", "x0", "--d", "2", "--n", "6", "--genus", "10"]);
    assert_eq!(v["schema"], "v1");
    assert_eq!(v["value"], "3");
    assert_eq!(v["mode"], "user-supplied-genus");
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["phi", "--d", "2"]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&["phi", "--d", "1", "--n", "2"]).0, 2);
    assert_eq!(call(&["series-roots", "--p", "3", "--d", "3", "--n", "1"]).0, 2);
    let (code, v) = json(&["phi", "--d", "3", "--n", "12"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "degree-cap");
    let (code, v) = json(&["scan", "--p", "5", "--d", "2", "--n", "4", "--e", "10", "--scan-cap", "100"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "cap-exceeded");
    assert_eq!(call(&["verify", "product", "--d", "2", "--n", "3"]).0, 0);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn verify_subcommands_pass() {
    for args in [
        vec!["verify", "zeta", "--d", "3", "--m", "2", "--n", "1"],
        vec!["verify", "simple-roots", "--d", "2", "--m", "2", "--n", "1"],
        vec!["verify", "zero-fibre", "--d", "2", "--m", "3", "--n", "2"],
        vec!["verify", "splitting", "--p", "3", "--d", "2", "--n", "2", "--m", "1"],
        vec!["verify", "reduction", "--d", "3", "--n", "2", "--p", "5"],
        vec!["verify", "degree", "--d", "2", "--n", "6"],
    ] {
        let (code, out, err) = call(&args);
        assert_eq!(code, 0, "{args:?}: {out}{err}");
        assert!(out.starts_with("PASS"));
    }
}

#[test]
fn factor_and_roots_commands() {
    let (code, v) = json(&["factor-fq", "--p", "3", "--d", "2", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["degrees"], serde_json::json!([2, 2]));
    let (code, v) = json(&["series-roots", "--p", "2", "--d", "3", "--n", "1", "--prec", "8"]);
    assert_eq!(code, 0);
    assert_eq!(v["roots"].as_array().unwrap().len(), 3);
    let (code, out, _) = call(&["component", "--d", "3", "--m", "1", "--n", "1", "--j", "2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("# Y1(1,1)^zeta^2 over Q(zeta_3)"));
}

#[test]
fn output_is_deterministic() {
    let a = call(&["factor-fq", "--p", "5", "--d", "2", "--n", "3", "--json"]);
    let b = call(&["factor-fq", "--p", "5", "--d", "2", "--n", "3", "--json", "--threads", "1"]);
    assert_eq!(a, b);
}

#[test]
fn config_parsing_and_precedence() {
    let file = parse_config("# comment\nprec = 40\nscan-cap = 77\n\n").unwrap();
    let s = resolve(&Overrides::default(), &file).unwrap();
    assert_eq!((s.prec, s.scan_cap), (40, 77));
    let over = Overrides { prec: Some(12), ..Default::default() };
    let s = resolve(&over, &file).unwrap();
    assert_eq!((s.prec, s.scan_cap), (12, 77));
    assert!(parse_config("bogus = 1").is_err());
    assert!(parse_config("prec 3").is_err());
    assert!(resolve(&Overrides::default(), &parse_config("prec = x").unwrap()).is_err());
}

#[test]
fn env_overrides_config_and_flags_override_env() {
    let dir = std::env::temp_dir().join(format!("dynatomic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("cfg");
    std::fs::write(&cfg, "scan_cap = 1\n").unwrap();
    let bin = env!("CARGO_BIN_EXE_dynatomic");
    let scan = ["scan", "--p", "3", "--d", "2", "--n", "2", "--e", "2", "--config"];

    let out = Command::new(bin).args(scan).arg(&cfg).env_remove("DYNATOMIC_SCAN_CAP").output().unwrap();
    assert_eq!(out.status.code(), Some(3));

    let out = Command::new(bin).args(scan).arg(&cfg).env("DYNATOMIC_SCAN_CAP", "1000").output().unwrap();
    assert_eq!(out.status.code(), Some(0));

    let out = Command::new(bin)
        .args(scan)
        .arg(&cfg)
        .args(["--scan-cap", "2"])
        .env("DYNATOMIC_SCAN_CAP", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    std::fs::remove_dir_all(&dir).unwrap();
}
