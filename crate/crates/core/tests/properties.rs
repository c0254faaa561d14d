mod support;

const CASES: u32 = 1000;

#[test]
fn ring_axioms() {
    support::ring_axioms(CASES).unwrap();
}

#[test]
fn truncation_homomorphism() {
    support::truncation_homomorphism(CASES).unwrap();
}

#[test]
fn powering_equivalence() {
    support::powering_equivalence(CASES).unwrap();
}

#[test]
fn permanent_oracles() {
    support::permanent_oracles(CASES).unwrap();
}

#[test]
fn pointcount_coefficient() {
    support::pointcount_coefficient(CASES).unwrap();
}

#[test]
fn exact_divide_round_trip() {
    support::exact_divide_round_trip(CASES).unwrap();
}

#[test]
fn fedder_matches_unit_witness() {
    support::fedder_matches_unit_witness(CASES).unwrap();
}
