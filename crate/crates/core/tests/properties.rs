mod common;

use common::{cases, suites};

#[test]
fn labeling_cochain_is_a_cocycle() {
    suites::cocycle(cases(256)).unwrap();
}

#[test]
fn opposite_edges_share_labels() {
    suites::e_edge_lemma(cases(256)).unwrap();
}

#[test]
fn opposite_faces_share_labels() {
    suites::face_lemma(cases(256)).unwrap();
}

#[test]
fn tensor_labels_are_wedges() {
    suites::tensor_label_identity(cases(128)).unwrap();
}

#[test]
fn cross_product_labels_are_wedges() {
    suites::cross_product_theorem(cases(64)).unwrap();
}

#[test]
fn boundary_squares_to_zero() {
    suites::boundary_squares_to_zero(cases(256)).unwrap();
}

#[test]
fn smith_form_certificates_verify() {
    suites::snf_certificates(cases(512)).unwrap();
}

#[test]
fn homology_generators_are_cycles() {
    suites::generators_are_cycles(cases(128)).unwrap();
}

#[test]
fn loops_with_coprime_length_do_not_bound() {
    let (fixtures, loops) = suites::loop_cycles(50).unwrap();
    assert_eq!(fixtures, 50);
    assert!(loops >= 50);
}

#[test]
fn kunneth_ranks_over_z2() {
    suites::kunneth_z2(20).unwrap();
}
