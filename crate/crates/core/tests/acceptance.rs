//! Acceptance suite: one test per criterion, each printing its measured
//! pass/fail line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the measurements.

use groundspace::verify;

fn run(check: verify::CheckResult) {
    println!("{}", check.line());
    assert!(check.pass, "{}", check.line());
}

#[test]
fn c01_exact_pauli_decomposition() {
    run(verify::c01_exact_pauli_decomposition());
}

#[test]
fn c02_depth4_bound() {
    run(verify::c02_depth4_bound());
}

#[test]
fn c03_suzuki_scaling() {
    run(verify::c03_suzuki_scaling());
}

#[test]
fn c04_flux_spectrum() {
    run(verify::c04_flux_spectrum());
}

#[test]
fn c05_fooling_dichotomy() {
    run(verify::c05_fooling_dichotomy());
}

#[test]
fn c06_path_following() {
    run(verify::c06_path_following());
}

#[test]
fn c07_ground_space_traversal() {
    run(verify::c07_ground_space_traversal());
}

#[test]
fn c08_embedding_completeness() {
    run(verify::c08_embedding_completeness());
}

#[test]
fn c09_cheating_state() {
    run(verify::c09_cheating_state());
}

#[test]
fn c10_verifier_identity() {
    run(verify::c10_verifier_identity());
}

#[test]
fn c11_stconn() {
    run(verify::c11_stconn());
}

#[test]
fn c12_go_reduction() {
    run(verify::c12_go_reduction());
}

#[test]
fn c13_sparse_oracle() {
    run(verify::c13_sparse_oracle());
}
