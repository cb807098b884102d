//! Words and polynomials over generator letters and formal mass powers.

use conformal_algebra::{AlgebraElement, Generator};
use std::collections::BTreeMap;
use std::fmt;
use tensor_core::{CoefficientExpr, Scalar};

/// A letter of the word algebra: a basis generator or a formal power `M^k`
/// of the mass observable. `M(0)` is the empty letter and never survives in
/// a stored word.
///
/// The derived `Ord` is the normal order: `D < J < P < C < M^k`, with `J`, `P`
/// and `C` internally ordered by index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Letter {
    Gen(Generator),
    M(i64),
}

impl Letter {
    /// Conformal weight under bracketing with `D`.
    pub fn weight(&self) -> i64 {
        match self {
            Letter::Gen(g) => g.conformal_weight(),
            Letter::M(k) => *k,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Gen(g) => write!(f, "{g}"),
            Letter::M(1) => write!(f, "M"),
            Letter::M(k) => write!(f, "M^{k}"),
        }
    }
}

pub type Word = Vec<Letter>;

/// A formal sum of coefficient-weighted words.
///
/// The type itself does not enforce normal form; `WordAlgebra::normal_form`
/// produces the canonical representative, and every public operation of the
/// algebra returns polynomials in normal form. Addition of normal forms is
/// again normal since normality is a per-word property.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct NCPolynomial {
    terms: BTreeMap<Word, CoefficientExpr>,
}

impl NCPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(CoefficientExpr::one(), Vec::new())
    }

    pub fn from_scalar(s: Scalar) -> Self {
        Self::term(CoefficientExpr::from_scalar(s), Vec::new())
    }

    pub fn from_coeff(c: CoefficientExpr) -> Self {
        Self::term(c, Vec::new())
    }

    pub fn term(coeff: CoefficientExpr, word: Word) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        NCPolynomial { terms }
    }

    pub fn generator(g: Generator) -> Self {
        Self::term(CoefficientExpr::one(), vec![Letter::Gen(g)])
    }

    pub fn mpower(k: i64) -> Self {
        if k == 0 {
            Self::one()
        } else {
            Self::term(CoefficientExpr::one(), vec![Letter::M(k)])
        }
    }

    pub fn from_element(e: &AlgebraElement) -> Self {
        let mut out = Self::zero();
        for (g, c) in e.iter() {
            out.add_term(vec![Letter::Gen(*g)], c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &CoefficientExpr)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, CoefficientExpr> {
        self.terms
    }

    pub(crate) fn add_term(&mut self, word: Word, coeff: CoefficientExpr) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(slot) => {
                *slot = slot.add(&coeff);
                if slot.is_zero() {
                    self.terms.remove(&word);
                }
            }
            None => {
                self.terms.insert(word, coeff);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        NCPolynomial {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        NCPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.scale(s)))
                .collect(),
        }
    }

    pub fn scale_coeff(&self, e: &CoefficientExpr) -> Self {
        if e.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.mul(e));
        }
        out
    }

    /// Substitutes concrete components for the formal acceleration parameter
    /// in every coefficient.
    pub fn substitute_accel(&self, components: &[Scalar; 4]) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.substitute_accel(components));
        }
        out
    }

    /// The scalar value if the polynomial is a pure scalar (empty word only).
    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.terms.is_empty() {
            return Some(Scalar::zero());
        }
        if self.terms.len() == 1 {
            let (w, c) = self.terms.iter().next().unwrap();
            if w.is_empty() {
                return c.as_scalar();
            }
        }
        None
    }

    /// Collapses words to sorted letter multisets, yielding the commutative
    /// shadow of the polynomial. Used by classical-limit cross-checks.
    pub fn to_commutative(&self) -> BTreeMap<Word, CoefficientExpr> {
        let mut out: BTreeMap<Word, CoefficientExpr> = BTreeMap::new();
        for (w, c) in &self.terms {
            let mut key = w.clone();
            key.sort();
            let slot = out.entry(key).or_insert_with(CoefficientExpr::zero);
            *slot = slot.add(c);
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Total conformal weight of a word: `+1` per `P`, `-1` per `C`, `+k` per
    /// `M^k`, `0` for `D` and `J`.
    pub fn word_weight(word: &Word) -> i64 {
        word.iter().map(Letter::weight).sum()
    }
}

impl fmt::Display for NCPolynomial {
    /// Stable plain-text grammar: letters left to right, coefficients as
    /// exact fractions with `i` explicit, e.g. `-2i D + P0 C0 M^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (w, c) in &self.terms {
            let word = if w.is_empty() {
                "1".to_string()
            } else {
                w.iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let coeff = match c.as_scalar() {
                Some(s) if s.is_one() => word.clone(),
                Some(s) if (-&s).is_one() => format!("-{word}"),
                Some(s) => format!("{s} {word}"),
                None => format!("({c}) {word}"),
            };
            parts.push(coeff);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letter_normal_order() {
        use Generator::*;
        let mut letters = vec![
            Letter::M(-2),
            Letter::Gen(C(0)),
            Letter::Gen(P(3)),
            Letter::Gen(D),
            Letter::Gen(J(1, 2)),
        ];
        letters.sort();
        assert_eq!(
            letters,
            vec![
                Letter::Gen(D),
                Letter::Gen(J(1, 2)),
                Letter::Gen(P(3)),
                Letter::Gen(C(0)),
                Letter::M(-2),
            ]
        );
    }

    #[test]
    fn display_grammar() {
        let p = NCPolynomial::generator(Generator::P(0))
            .scale(&Scalar::ratio_i(-2, 1))
            .add(&NCPolynomial::one());
        assert_eq!(p.to_string(), "1 + -2i P0");
    }
}
