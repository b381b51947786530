//! End-to-end acceptance checklist; one test per criterion, each printing
//! its PASS/FAIL line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the details.

use zeta_moments::acceptance as acc;
use zeta_moments::acceptance::CriterionOutcome;

fn check(outcome: CriterionOutcome) {
    let status = if outcome.pass { "PASS" } else { "FAIL" };
    println!(
        "[{status}] criterion {:02} {}: {} ({} ms)",
        outcome.id, outcome.name, outcome.detail, outcome.runtime_ms
    );
    assert!(
        outcome.pass,
        "criterion {:02} {} failed: {}",
        outcome.id, outcome.name, outcome.detail
    );
}

#[test]
fn criterion_01_psi_exactness() {
    check(acc::criterion_01_psi_exactness());
}

#[test]
fn criterion_02_moment_oracle() {
    check(acc::criterion_02_moment_oracle());
}

#[test]
fn criterion_03_constants() {
    check(acc::criterion_03_constants());
}

#[test]
fn criterion_04_sinc_integrals() {
    check(acc::criterion_04_sinc_integrals());
}

#[test]
fn criterion_05_kernel_identity() {
    check(acc::criterion_05_kernel_identity());
}

#[test]
fn criterion_06_kpp_bound() {
    check(acc::criterion_06_kpp_bound());
}

#[test]
fn criterion_07_zero_computation() {
    check(acc::criterion_07_zero_computation());
}

#[test]
fn criterion_08_f_oracle() {
    check(acc::criterion_08_f_oracle());
}

#[test]
fn criterion_09_f_asymptotics() {
    check(acc::criterion_09_f_asymptotics());
}

#[test]
fn criterion_10_j_bridge() {
    check(acc::criterion_10_j_bridge());
}

#[test]
fn criterion_11_second_term_fit() {
    check(acc::criterion_11_second_term_fit());
}

#[test]
fn criterion_12_lemma_suite() {
    check(acc::criterion_12_lemma_suite());
}

#[test]
fn criterion_13_zero_sum_moment() {
    check(acc::criterion_13_zero_sum_moment());
}

#[test]
fn criterion_14_determinism() {
    check(acc::criterion_14_determinism());
}
