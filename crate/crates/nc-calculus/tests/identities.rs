//! End-to-end residual checks for the derived identities, plus the
//! randomized property suites.

use conformal_algebra::{Generator, StructureTable};
use nc_calculus::{
    check_canonical_commutators, check_double_commutators, check_mass_shifts,
    check_pauli_lubanski, check_position_commutators, check_redshift_law, check_structure_pairs,
    NCPolynomial, ObservableCatalog, WordAlgebra,
};
use std::sync::LazyLock;
use tensor_core::Scalar;

static ALG: LazyLock<WordAlgebra> = LazyLock::new(|| WordAlgebra::new(StructureTable::conformal()));

fn assert_all_zero(checks: &[nc_calculus::ResidualCheck]) {
    for c in checks {
        assert!(
            c.passed(),
            "residual for {} is nonzero: {}",
            c.label,
            c.residual
        );
    }
}

#[test]
fn structure_pairs_reproduced_by_word_algebra() {
    let checks = check_structure_pairs(&ALG);
    assert_eq!(checks.len(), 105);
    assert_all_zero(&checks);
}

#[test]
fn mass_shifts() {
    assert_all_zero(&check_mass_shifts(&ALG));
}

#[test]
fn canonical_commutators() {
    let checks = check_canonical_commutators(&ALG);
    assert_eq!(checks.len(), 16 + 4 + 24);
    assert_all_zero(&checks);
}

#[test]
fn canonical_commutator_examples() {
    let obs = ObservableCatalog::new(&ALG);
    // (P_0, X_0) = -1
    let b = ALG.nc_bracket(&NCPolynomial::generator(Generator::P(0)), &obs.position(0));
    assert_eq!(b, NCPolynomial::from_scalar(Scalar::from_int(-1)));
    // (D, X_2) = -X_2
    let b = ALG.nc_bracket(&NCPolynomial::generator(Generator::D), &obs.position(2));
    assert_eq!(b, obs.position(2).neg());
    // (J_01, X_1) = -X_0
    let b = ALG.nc_bracket(
        &NCPolynomial::generator(Generator::J(0, 1)),
        &obs.position(1),
    );
    assert_eq!(b, obs.position(0).neg());
}

#[test]
fn position_commutators() {
    assert_all_zero(&check_position_commutators(&ALG));
}

#[test]
fn pauli_lubanski() {
    assert_all_zero(&check_pauli_lubanski(&ALG));
}

#[test]
fn redshift_law() {
    assert_all_zero(&check_redshift_law(&ALG));
}

#[test]
fn double_commutators() {
    assert_all_zero(&check_double_commutators(&ALG));
}

#[test]
fn brackets_with_scalars_vanish() {
    let obs = ObservableCatalog::new(&ALG);
    let delta = obs.accel_generator();
    assert!(ALG.nc_bracket(&delta, &NCPolynomial::one()).is_zero());
    assert!(ALG
        .nc_bracket(&delta, &NCPolynomial::from_scalar(Scalar::ratio(-7, 3)))
        .is_zero());
}

#[test]
fn property_suites() {
    nc_calculus::prop_normal_form_idempotent(&ALG, 11, 200).unwrap();
    nc_calculus::prop_confluence(&ALG, 12, 200).unwrap();
    nc_calculus::prop_leibniz(&ALG, 13, 100).unwrap();
    nc_calculus::prop_sym_leibniz(&ALG, 14, 60).unwrap();
    nc_calculus::prop_word_jacobi(&ALG, 15, 60).unwrap();
    nc_calculus::prop_grading(&ALG, 16, 100).unwrap();
}
