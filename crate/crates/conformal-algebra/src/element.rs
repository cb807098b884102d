//! Formal linear combinations of basis generators with exact coefficients.

use crate::generator::Generator;
use std::collections::BTreeMap;
use std::fmt;
use tensor_core::{CoefficientExpr, Scalar};

/// An element of the linear span of the 15 basis generators.
///
/// Terms are merged per generator and zero coefficients pruned, so equality
/// is structural.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<Generator, CoefficientExpr>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(g: Generator) -> Self {
        Self::term(CoefficientExpr::one(), g)
    }

    pub fn term(coeff: CoefficientExpr, g: Generator) -> Self {
        assert!(g.is_valid(), "invalid generator {g}");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(g, coeff);
        }
        AlgebraElement { terms }
    }

    /// `J_{mu nu}` with arbitrary slot order, normalized through antisymmetry.
    pub fn j(mu: u8, nu: u8) -> Self {
        match Generator::j_normalized(mu, nu) {
            None => Self::zero(),
            Some((sign, g)) => Self::term(
                CoefficientExpr::from_scalar(Scalar::from_int(sign)),
                g,
            ),
        }
    }

    pub fn scaled(g: Generator, s: Scalar) -> Self {
        Self::term(CoefficientExpr::from_scalar(s), g)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, g: &Generator) -> CoefficientExpr {
        self.terms.get(g).cloned().unwrap_or_else(CoefficientExpr::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Generator, &CoefficientExpr)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (g, c) in &other.terms {
            let merged = match terms.get(g) {
                Some(cur) => cur.add(c),
                None => c.clone(),
            };
            if merged.is_zero() {
                terms.remove(g);
            } else {
                terms.insert(*g, merged);
            }
        }
        AlgebraElement { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        AlgebraElement {
            terms: self.terms.iter().map(|(g, c)| (*g, c.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        AlgebraElement {
            terms: self.terms.iter().map(|(g, c)| (*g, c.scale(s))).collect(),
        }
    }

    pub fn scale_expr(&self, e: &CoefficientExpr) -> Self {
        if e.is_zero() {
            return Self::zero();
        }
        AlgebraElement {
            terms: self.terms.iter().map(|(g, c)| (*g, c.mul(e))).collect(),
        }
    }

    /// True when every nonzero coefficient multiplies a `P` generator.
    pub fn in_p_span(&self) -> bool {
        self.terms.keys().all(|g| matches!(g, Generator::P(_)))
    }

    /// True when every nonzero coefficient multiplies a `C` generator.
    pub fn in_c_span(&self) -> bool {
        self.terms.keys().all(|g| matches!(g, Generator::C(_)))
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, c)| {
                if let Some(s) = c.as_scalar() {
                    if s.is_one() {
                        return g.to_string();
                    }
                    if (-&s).is_one() {
                        return format!("-{g}");
                    }
                    return format!("{s} {g}");
                }
                format!("({c}) {g}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn like_terms_merge_and_zeroes_prune() {
        let p0 = AlgebraElement::generator(Generator::P(0));
        let sum = p0.add(&p0).sub(&p0.scale(&Scalar::from_int(2)));
        assert!(sum.is_zero());
    }

    #[test]
    fn j_antisymmetry_normalization() {
        let a = AlgebraElement::j(2, 0);
        let b = AlgebraElement::j(0, 2).neg();
        assert_eq!(a, b);
        assert!(AlgebraElement::j(1, 1).is_zero());
    }
}
