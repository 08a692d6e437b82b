//! Command-line behavior: output formats, round trips, determinism and exit codes.

use std::path::PathBuf;
use std::process::Command;

use clap::Parser;
use ellgenus::cli::{run, Cli, ConfigFile};
use ellgenus::genus::corpus::star;
use ellgenus::surface::Coeffs;

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ellgenus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn star_file() -> PathBuf {
    scratch("star.toml", &ConfigFile::new(star(), Coeffs::new()).render())
}

fn call(args: &[&str]) -> (String, i32) {
    let out = run(&Cli::parse_from(std::iter::once("ellgenus").chain(args.iter().copied())));
    (out.output, out.code)
}

#[test]
fn discrepancies_of_star() {
    let f = star_file();
    assert_eq!(call(&["discrepancies", f.to_str().unwrap()]), ("E1: -1, E2: -1, E3: -1, E4: -2\n".to_string(), 0));
}

#[test]
fn validate_and_chi_y() {
    let f = star_file();
    let (out, code) = call(&["validate", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("OK 4 curves"));
    let (chi, code) = call(&["chi-y", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (veys, _) = call(&["veys", f.to_str().unwrap()]);
    assert_eq!(chi, veys);
}

#[test]
fn ell_is_deterministic() {
    let f = star_file();
    let a = call(&["ell", f.to_str().unwrap(), "--q-order", "2"]);
    let b = call(&["ell", f.to_str().unwrap(), "--q-order", "2"]);
    assert_eq!(a.1, 0);
    assert_eq!(a, b);
    assert!(a.0.contains("# q-order: 2"));
}

#[test]
fn blowup_round_trips_and_preserves_ell() {
    let f = star_file();
    let (text, code) = call(&["blowup", f.to_str().unwrap(), "--at", "node:E1,E4"]);
    assert_eq!(code, 0);
    let cfg = ConfigFile::parse(&text).unwrap();
    assert_eq!(cfg.render(), text);
    assert_eq!(cfg.model.len(), 5);
    let g = scratch("star-blown.toml", &text);
    let series = |p: &PathBuf| {
        let (out, code) = call(&["ell", p.to_str().unwrap(), "--q-order", "2"]);
        assert_eq!(code, 0, "{out}");
        out.lines().filter(|l| !l.starts_with('#')).collect::<Vec<_>>().join("\n")
    };
    assert_eq!(series(&f), series(&g));
}

#[test]
fn exit_codes() {
    let missing = call(&["ell", "/nonexistent/ellgenus.toml"]);
    assert_eq!(missing.1, 4);
    let bad = scratch("bad.toml", "[surface]\nc1sq = 0\nc2 =\n");
    let (out, code) = call(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 4);
    assert!(out.contains("line 3"), "{out}");
    let positive = scratch(
        "positive.toml",
        "[surface]\nc1sq = 0\nc2 = 0\n\n[[curve]]\nlabel = \"E\"\ngenus = 0\nself_int = 1\nexceptional = true\n",
    );
    assert_eq!(call(&["validate", positive.to_str().unwrap()]).1, 2);
    let pole = scratch(
        "pole.toml",
        "[surface]\nc1sq = 0\nc2 = 0\n\n[[curve]]\nlabel = \"A\"\ngenus = 0\nself_int = -2\nexceptional = true\ncoeff = \"-1\"\n\n\
         [[curve]]\nlabel = \"B\"\ngenus = 0\nself_int = -2\nexceptional = true\ncoeff = \"-1\"\n\n\
         [[curve]]\nlabel = \"C\"\ngenus = 0\nself_int = -3\nexceptional = true\ncoeff = \"-1\"\n\n\
         [[intersection]]\na = \"A\"\nb = \"C\"\nmultiplicity = 1\n\n[[intersection]]\na = \"B\"\nb = \"C\"\nmultiplicity = 1\n",
    );
    let (out, code) = call(&["veys", pole.to_str().unwrap()]);
    assert_eq!(code, 3, "{out}");
}

#[test]
fn conflicting_coefficient_is_rejected() {
    let mut coeffs = Coeffs::new();
    coeffs.insert("E1".into(), ellgenus::coeff::rat(5));
    let f = scratch("conflict.toml", &ConfigFile::new(star(), coeffs).render());
    assert_eq!(call(&["ell", f.to_str().unwrap()]).1, 2);
}

#[test]
fn verify_suite_reports_lines() {
    let (out, code) = call(&["verify", "--suite", "residues", "--count", "2"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS residue")).count(), 8);
    assert!(out.contains("8/8 checks passed"));
}

#[test]
fn binary_exit_status() {
    let f = star_file();
    let bin = env!("CARGO_BIN_EXE_ellgenus");
    let ok = Command::new(bin).args(["discrepancies", f.to_str().unwrap()]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "E1: -1, E2: -1, E3: -1, E4: -2\n");
    let err = Command::new(bin).args(["ell", "/nonexistent/ellgenus.toml"]).output().unwrap();
    assert_eq!(err.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&err.stderr).starts_with("error:"));
}
