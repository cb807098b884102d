//! Algebraic laws of the word algebra under proptest-generated inputs:
//! associativity of the product, antisymmetry of the bracket, symmetry of
//! the dot. These complement the seeded property checks that the report
//! runner replays (confluence, Leibniz, Jacobi, grading).

use conformal_algebra::{Generator, StructureTable};
use nc_calculus::{Letter, NCPolynomial, WordAlgebra};
use proptest::prelude::*;
use std::sync::LazyLock;
use tensor_core::{CoefficientExpr, Scalar};

static ALG: LazyLock<WordAlgebra> = LazyLock::new(|| WordAlgebra::new(StructureTable::conformal()));

fn arb_letter() -> impl Strategy<Value = Letter> {
    prop_oneof![
        4 => (0usize..15).prop_map(|i| Letter::Gen(Generator::basis()[i])),
        1 => prop_oneof![Just(-2i64), Just(-1), Just(1), Just(2)].prop_map(Letter::M),
    ]
}

fn arb_poly() -> impl Strategy<Value = NCPolynomial> {
    proptest::collection::vec(
        (
            proptest::collection::vec(arb_letter(), 0..=2),
            -3i64..=3,
            -2i64..=2,
        ),
        1..=2,
    )
    .prop_map(|terms| {
        let mut p = NCPolynomial::zero();
        for (word, re, im) in terms {
            let s = Scalar::from_int(re) + Scalar::ratio_i(im, 1);
            if s.is_zero() {
                continue;
            }
            p = p.add(&NCPolynomial::term(CoefficientExpr::from_scalar(s), word));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        let lhs = ALG.multiply(&ALG.multiply(&p, &q), &r);
        let rhs = ALG.multiply(&p, &ALG.multiply(&q, &r));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_antisymmetric(p in arb_poly(), q in arb_poly()) {
        prop_assert_eq!(ALG.nc_bracket(&p, &q), ALG.nc_bracket(&q, &p).neg());
    }

    #[test]
    fn dot_is_symmetric(p in arb_poly(), q in arb_poly()) {
        prop_assert_eq!(ALG.sym_product(&p, &q), ALG.sym_product(&q, &p));
    }

    #[test]
    fn normal_form_is_linear(p in arb_poly(), q in arb_poly()) {
        let sum_then_reduce = ALG.normal_form(&p.add(&q));
        let reduce_then_sum = ALG.normal_form(&p).add(&ALG.normal_form(&q));
        prop_assert_eq!(sum_then_reduce, reduce_then_sum);
    }
}
