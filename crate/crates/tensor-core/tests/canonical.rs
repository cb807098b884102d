//! Property tests for canonicalization: idempotence, agreement with
//! brute-force index summation, and the scalar field laws.

use proptest::prelude::*;
use std::collections::BTreeMap;
use tensor_core::{
    epsilon_component, metric_component, CoefficientExpr, IndexLabel, Monomial, Scalar,
    SplitMix64, TensorFactor, Variance,
};

/// Independent evaluation oracle: sums every bound index over 0..4 and
/// collects the result as a polynomial in the upper acceleration components
/// (multiset of concrete indices -> scalar). Never calls canonicalization.
fn brute_force(monos: &[Monomial]) -> BTreeMap<Vec<u8>, Scalar> {
    let mut out: BTreeMap<Vec<u8>, Scalar> = BTreeMap::new();
    for m in monos {
        // Collect bound names in this monomial.
        let mut names: Vec<String> = Vec::new();
        for f in &m.factors {
            for slot in f.slots() {
                if let Some(n) = slot.name() {
                    if !names.contains(&n.to_string()) {
                        names.push(n.to_string());
                    }
                }
            }
        }
        let k = names.len();
        let total = 4usize.pow(k as u32);
        for assign_id in 0..total {
            let mut rem = assign_id;
            let mut assignment: BTreeMap<&str, u8> = BTreeMap::new();
            for n in &names {
                assignment.insert(n, (rem % 4) as u8);
                rem /= 4;
            }
            let value_of = |slot: &IndexLabel| -> u8 {
                match slot.concrete() {
                    Some(c) => c,
                    None => assignment[slot.name().unwrap()],
                }
            };
            let mut val = m.scalar.clone();
            let mut accel: Vec<u8> = Vec::new();
            for f in &m.factors {
                match f {
                    TensorFactor::Metric(a, b) => {
                        val *= &metric_component(value_of(a), value_of(b));
                    }
                    TensorFactor::Kronecker(a, b) => {
                        if value_of(a) != value_of(b) {
                            val = Scalar::zero();
                        }
                    }
                    TensorFactor::Epsilon(slots) => {
                        let vals = [
                            value_of(&slots[0]),
                            value_of(&slots[1]),
                            value_of(&slots[2]),
                            value_of(&slots[3]),
                        ];
                        let mut c = epsilon_component(vals);
                        if slots[0].variance == Variance::Upper {
                            c = -c;
                        }
                        val *= &c;
                    }
                    TensorFactor::Accel(slot) => {
                        let v = value_of(slot);
                        if slot.variance == Variance::Lower {
                            val *= &metric_component(v, v);
                        }
                        accel.push(v);
                    }
                }
                if val.is_zero() {
                    break;
                }
            }
            if !val.is_zero() {
                accel.sort_unstable();
                let e = out.entry(accel).or_insert_with(Scalar::zero);
                *e += &val;
            }
        }
    }
    out.retain(|_, s| !s.is_zero());
    out
}

/// Random well-formed monomial with all indices concrete or bound.
fn random_monomial(rng: &mut SplitMix64) -> Monomial {
    let nfactors = 1 + rng.below(3) as usize;
    let mut factors = Vec::new();
    for _ in 0..nfactors {
        let variance = if rng.chance(1, 2) {
            Variance::Upper
        } else {
            Variance::Lower
        };
        let conc = |rng: &mut SplitMix64, v: Variance| match v {
            Variance::Upper => IndexLabel::conc_up(rng.below(4) as u8),
            Variance::Lower => IndexLabel::conc_down(rng.below(4) as u8),
        };
        match rng.below(4) {
            0 => factors.push(TensorFactor::metric(
                conc(rng, variance),
                conc(rng, variance),
            )),
            1 => factors.push(TensorFactor::kronecker(
                conc(rng, Variance::Upper),
                conc(rng, Variance::Lower),
            )),
            2 => factors.push(TensorFactor::epsilon([
                conc(rng, variance),
                conc(rng, variance),
                conc(rng, variance),
                conc(rng, variance),
            ])),
            _ => factors.push(TensorFactor::accel(conc(rng, variance))),
        }
    }
    // Rewire some opposite-variance slot pairs into bound names.
    let mut slots: Vec<(usize, usize, Variance)> = Vec::new();
    for (fi, f) in factors.iter().enumerate() {
        for (si, slot) in f.slots().iter().enumerate() {
            slots.push((fi, si, slot.variance));
        }
    }
    let mut used: Vec<(usize, usize)> = Vec::new();
    for fresh in 0..rng.below(3) {
        let ups: Vec<_> = slots
            .iter()
            .filter(|(f, s, v)| *v == Variance::Upper && !used.contains(&(*f, *s)))
            .cloned()
            .collect();
        let downs: Vec<_> = slots
            .iter()
            .filter(|(f, s, v)| *v == Variance::Lower && !used.contains(&(*f, *s)))
            .cloned()
            .collect();
        if ups.is_empty() || downs.is_empty() {
            break;
        }
        let u = ups[rng.below(ups.len() as u64) as usize];
        let d = downs[rng.below(downs.len() as u64) as usize];
        let name = format!("n{fresh}");
        for (fi, si, val) in [(u.0, u.1, &name), (d.0, d.1, &name)] {
            let mut ss = factors[fi].slots_mut();
            ss[si].value = tensor_core::IndexValue::Name(val.clone());
        }
        used.push((u.0, u.1));
        used.push((d.0, d.1));
    }
    let scalar = Scalar::from_int(rng.range_i64(-3, 3)) + Scalar::ratio_i(rng.range_i64(-2, 2), 1);
    Monomial::new(scalar, factors)
}

#[test]
fn canonicalize_agrees_with_brute_force_summation() {
    let mut rng = SplitMix64::new(0xc0ffee);
    for _ in 0..1500 {
        let monos: Vec<Monomial> = (0..=rng.below(2)).map(|_| random_monomial(&mut rng)).collect();
        let canon = CoefficientExpr::from_monomials(monos.clone()).expect("well-formed input");
        assert_eq!(
            brute_force(&monos),
            brute_force(&canon.monomials()),
            "mismatch for {monos:?}"
        );
    }
}

#[test]
fn canonicalize_is_idempotent() {
    let mut rng = SplitMix64::new(0xfeedbead);
    for _ in 0..1500 {
        let monos: Vec<Monomial> = (0..=rng.below(2)).map(|_| random_monomial(&mut rng)).collect();
        let once = CoefficientExpr::from_monomials(monos).expect("well-formed input");
        let twice = CoefficientExpr::from_monomials(once.monomials()).expect("canonical input");
        assert_eq!(once, twice);
    }
}

fn arb_scalar() -> impl Strategy<Value = Scalar> {
    (-50i64..50, 1i64..20, -50i64..50, 1i64..20)
        .prop_map(|(rn, rd, in_, id)| Scalar::ratio(rn, rd) + Scalar::ratio_i(in_, id))
}

proptest! {
    #[test]
    fn scalar_add_sub_roundtrip(a in arb_scalar(), b in arb_scalar()) {
        prop_assert_eq!((a.clone() + &b) - b, a);
    }

    #[test]
    fn scalar_mul_div_roundtrip(a in arb_scalar(), b in arb_scalar()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((a.clone() * &b) / b, a);
    }
}
