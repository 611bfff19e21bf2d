//! Shared by the CLI golden tests and the acceptance suite.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub code: i32,
}

pub const CASES: &[Case] = &[
    Case { name: "minimal_validate", args: &["-w", "minimal.json", "validate"], code: 0 },
    Case { name: "z4z2_validate", args: &["-w", "z4z2.json", "validate"], code: 0 },
    Case { name: "z2_check_zero", args: &["-w", "z2.json", "check", "structure", "zero"], code: 0 },
    Case { name: "z2_check_lone_xi", args: &["-w", "z2.json", "check", "structure", "lone_xi"], code: 1 },
    Case { name: "z2_check_sigma_only", args: &["-w", "z2.json", "check", "cocycle3", "sigma_only"], code: 1 },
    Case { name: "z2_h3", args: &["-w", "z2.json", "cohomology", "--degree", "3"], code: 0 },
    Case { name: "z2_h2_reps", args: &["-w", "z2.json", "cohomology", "--degree", "2", "--representatives"], code: 0 },
    Case { name: "z2_tau_coboundary", args: &["-w", "z2.json", "coboundary", "--degree", "2", "tau_one"], code: 1 },
    Case { name: "z2_enumerate", args: &["-w", "z2.json", "enumerate", "structures"], code: 0 },
    Case { name: "z4z2_h3", args: &["-w", "z4z2.json", "cohomology", "--degree", "3"], code: 0 },
    Case { name: "z4z2_convert", args: &["-w", "z4z2.json", "convert", "struct-to-cocycle", "h1"], code: 0 },
    Case { name: "z4z2_cohomologous", args: &["-w", "z4z2.json", "cohomologous", "h1", "zero"], code: 1 },
    Case { name: "z4z2_obstruction_nonzero", args: &["-w", "z4z2.json", "obstruction", "--pair", "id", "--source", "h1", "--target", "zero"], code: 1 },
    Case { name: "z4z2_hom_classes", args: &["-w", "z4z2.json", "hom-classes", "--pair", "id", "--source", "h1", "--target", "h1"], code: 0 },
    Case { name: "z4z2_enumerate", args: &["-w", "z4z2.json", "enumerate", "structures"], code: 0 },
    Case { name: "dual2_catring", args: &["-w", "dual2.json", "check", "catring", "appendix"], code: 0 },
    Case { name: "dual2_h1", args: &["-w", "dual2.json", "cohomology", "--degree", "1"], code: 0 },
    Case { name: "swap_obstruction", args: &["-w", "f2xf2.json", "obstruction", "--pair", "swap", "--source", "zero", "--target", "zero"], code: 0 },
    Case { name: "swap_hom_classes", args: &["-w", "f2xf2.json", "hom-classes", "--pair", "swap", "--source", "zero", "--target", "zero"], code: 0 },
    Case { name: "counterexample_2", args: &["counterexample", "--n", "2"], code: 0 },
    Case { name: "counterexample_4", args: &["counterexample", "--n", "4", "--seed", "7"], code: 0 },
];

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Runs the binary from the data directory; returns (exit code, stdout, stderr).
pub fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_maclane-coh"))
        .args(args)
        .current_dir(data_dir())
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

pub fn with_json(args: &[&'static str]) -> Vec<&'static str> {
    let mut v = args.to_vec();
    v.push("--json");
    v
}
