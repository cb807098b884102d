//! The realization as an independent oracle: structure-table closure at one
//! and two particles, the derived identities as exact operator identities at
//! two particles, the two-photon mass example, and the randomized bridge and
//! point-evaluation checks.

use conformal_algebra::StructureTable;
use nc_calculus::WordAlgebra;
use realizations::checks::{
    bridge_examples, check_eq10, check_eq11, check_eq12_eq13, check_eq5, check_eq7, check_eq9,
    check_pairs, eq7_point_checks, homomorphism_check, spin_nontriviality_witness,
    two_photon_mass_example, RealizedObservables,
};
use realizations::{OperatorCheck, Realization, RingCtx};
use std::sync::LazyLock;
use tensor_core::Scalar;

static TABLE: LazyLock<StructureTable> = LazyLock::new(StructureTable::conformal);
static OBS2: LazyLock<RealizedObservables> =
    LazyLock::new(|| RealizedObservables::new(Realization::new(2).unwrap()).unwrap());

fn assert_all_zero(checks: &[OperatorCheck]) {
    for c in checks {
        assert!(
            c.residual.is_zero(),
            "residual for {} is nonzero: {}",
            c.label,
            c.residual
        );
    }
}

#[test]
fn one_particle_closure() {
    let real = Realization::new(1).unwrap();
    let checks = check_pairs(&real, &TABLE);
    assert_eq!(checks.len(), 105);
    assert_all_zero(&checks);
}

#[test]
fn two_particle_closure() {
    let checks = check_pairs(OBS2.realization(), &TABLE);
    assert_eq!(checks.len(), 105);
    assert_all_zero(&checks);
}

#[test]
fn one_particle_mass_vanishes() {
    assert!(RingCtx::new(1).s_poly().is_zero());
}

#[test]
fn eq5_in_realization() {
    assert_all_zero(&check_eq5(&OBS2).unwrap());
}

#[test]
fn eq7_in_realization() {
    let checks = check_eq7(&OBS2);
    assert_eq!(checks.len(), 44);
    assert_all_zero(&checks);
}

#[test]
fn eq9_in_realization() {
    assert_all_zero(&check_eq9(&OBS2).unwrap());
}

#[test]
fn eq10_in_realization() {
    assert_all_zero(&check_eq10(&OBS2).unwrap());
}

#[test]
fn eq11_in_realization() {
    assert_all_zero(&check_eq11(&OBS2).unwrap());
}

#[test]
fn eq12_eq13_in_realization() {
    assert_all_zero(&check_eq12_eq13(&OBS2));
}

#[test]
fn spin_tensor_is_nonzero_for_two_particles() {
    let witness = spin_nontriviality_witness(&OBS2);
    assert!(
        !witness.residual.is_zero(),
        "two scalar particles must carry internal angular momentum"
    );
    // The same witness through the abstract bridge.
    let alg = WordAlgebra::new(StructureTable::conformal());
    let obs = nc_calculus::ObservableCatalog::new(&alg);
    let realized = OBS2
        .realization()
        .realize(&obs.spin_tensor(1, 2))
        .unwrap();
    assert!(!realized.is_zero());
}

#[test]
fn realized_mass_square_is_multiplication_by_s() {
    // sum_rho eta^{rho rho} P_rho P_rho composed from realized generators
    // equals multiplication by s.
    use conformal_algebra::Generator;
    use realizations::DiffOperator;
    let real = OBS2.realization();
    let mut composed = DiffOperator::zero(real.ctx());
    for rho in 0..4u8 {
        let p = real.op(Generator::P(rho));
        let sign = tensor_core::metric_component(rho, rho);
        composed = composed.add(&p.compose(p).scale(&sign));
    }
    let mult_s = real.mass_power_op(2).unwrap();
    assert!(composed.sub(&mult_s).is_zero());
}

#[test]
fn two_photon_mass() {
    let (m_sq, p_total) = two_photon_mass_example(OBS2.realization()).unwrap();
    assert_eq!(m_sq, Scalar::from_int(4));
    assert_eq!(p_total, [Scalar::zero(), Scalar::zero(), Scalar::zero()]);
}

#[test]
fn realize_is_a_homomorphism() {
    let alg = WordAlgebra::new(StructureTable::conformal());
    homomorphism_check(OBS2.realization(), &alg, 2024, 20).unwrap();
}

#[test]
fn bridge_examples_hold() {
    let alg = WordAlgebra::new(StructureTable::conformal());
    assert_all_zero(&bridge_examples(OBS2.realization(), &alg).unwrap());
}

#[test]
fn canonical_commutator_point_checks() {
    eq7_point_checks(&OBS2, 99, 100).unwrap();
}

/// Three-particle closure and canonical structure; not part of the default
/// suite because exact arithmetic in twelve momentum variables takes a few
/// seconds per identity family. Run with `cargo test -- --ignored`.
#[test]
#[ignore]
fn three_particle_closure_and_canonical_structure() {
    let obs3 = RealizedObservables::new(Realization::new(3).unwrap()).unwrap();
    assert_all_zero(&check_pairs(obs3.realization(), &TABLE));
    assert_all_zero(&check_eq7(&obs3));
}
