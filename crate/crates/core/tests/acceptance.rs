//! Acceptance gate: one test per end-to-end criterion, each printing a
//! single PASS/FAIL line. Run with `--nocapture` to see the lines for
//! passing criteria too.

use rabi_spectrum::acceptance::{self, CriterionReport};

fn gate(r: CriterionReport) {
    println!("{r}");
    assert!(r.passed, "{r}");
}

#[test]
fn criterion_01_decoupled_limit_exactness() {
    gate(acceptance::criterion_1());
}

#[test]
fn criterion_02_displaced_oscillator_oracle_exactness() {
    gate(acceptance::criterion_2());
}

#[test]
fn criterion_03_degree_1_truncation_ellipse_and_doublet() {
    gate(acceptance::criterion_3());
}

#[test]
fn criterion_04_degree_5_truncation_locus_count() {
    gate(acceptance::criterion_4());
}

#[test]
fn criterion_05_oracle_bijection_at_reference_couplings() {
    gate(acceptance::criterion_5());
}

#[test]
fn criterion_06_non_degenerate_integer_state_exists() {
    gate(acceptance::criterion_6());
}

#[test]
fn criterion_07_small_coupling_crossings() {
    gate(acceptance::criterion_7());
}

#[test]
fn criterion_08_avoided_crossing_window() {
    gate(acceptance::criterion_8());
}

#[test]
fn criterion_09_condition_forms_agree() {
    gate(acceptance::criterion_9());
}

#[test]
fn criterion_10_coupling_sign_symmetry() {
    gate(acceptance::criterion_10());
}

#[test]
fn criterion_11_evaluation_point_independence() {
    gate(acceptance::criterion_11());
}
