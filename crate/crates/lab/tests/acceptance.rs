//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//!
//! Run with `cargo test -p spinorlab --test acceptance -- --nocapture` to see
//! the lines.

use std::path::PathBuf;

use spinorlab::suite::{self, Criterion, SuiteConfig, SPIN45_SEED};
use spinorlab::witness::{default_path, WITNESS_DIR};

const MAX_N: usize = 8;
const SEED: u64 = 7;

fn config() -> SuiteConfig {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..");
    let mut cfg = SuiteConfig::new(MAX_N, SEED);
    cfg.witness = default_path(&root.join(WITNESS_DIR), SPIN45_SEED);
    cfg
}

fn check(c: Criterion) {
    println!("criterion {}: {}", c.id, if c.passed { "PASS" } else { "FAIL" });
    println!("  {}", c.title);
    if !c.passed {
        println!("  detail: {}", serde_json::to_string(&c.detail).unwrap());
    }
    assert!(c.passed, "criterion {} failed: {}", c.id, c.detail);
}

#[test]
fn criterion_01_clifford_relations() {
    check(suite::clifford_relations(&config()));
}

#[test]
fn criterion_02_admissible_table() {
    check(suite::admissible_table(&config()));
}

#[test]
fn criterion_03_null_kernel_lemma() {
    check(suite::null_kernel_lemma(&config()));
}

#[test]
fn criterion_04_beta_symmetry_and_rank() {
    check(suite::beta_symmetry(&config()));
}

#[test]
fn criterion_05_bound_tightness() {
    check(suite::bound_tightness(&config()));
}

#[test]
fn criterion_06_spin23_isotropic_planes() {
    check(suite::spin23_remark(&config()));
}

#[test]
fn criterion_07_spin45_witness() {
    check(suite::spin45_remark(&config()));
}

#[test]
fn criterion_08_mixed_bound() {
    check(suite::mixed_bound(&config()));
}

#[test]
fn criterion_09a_cone_even_iso() {
    check(suite::even_iso(&config()));
}

#[test]
fn criterion_09b_semispinor_split() {
    check(suite::semispinor_split(&config()));
}

#[test]
fn criterion_10_invariant_spinors() {
    check(suite::invariant_spinors(&config()));
}

#[test]
fn criterion_11_model_space() {
    check(suite::model_space(&config()));
}

#[test]
fn criterion_12_convergence() {
    check(suite::convergence(&config()));
}
