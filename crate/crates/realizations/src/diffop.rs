//! Differential operators with exact ring coefficients.
//!
//! An operator is a finite sum of `coefficient * partial^alpha` with `alpha`
//! a multi-index over the spatial momentum variables `k_{a,j}`. Composition
//! uses the Leibniz rule with exact symbolic differentiation of the
//! coefficients (on-shell and mass-shell chain rules included), so the
//! commutator of two operators is again an operator of this shape.

use crate::ring::{d_elem, RingCtx, RingElem};
use std::collections::BTreeMap;
use std::fmt;
use tensor_core::Scalar;

/// Multi-index of partial-derivative orders, one entry per `k_{a,j}`
/// (length `3n`).
pub type PartialMulti = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiffOperator {
    ctx: RingCtx,
    terms: BTreeMap<PartialMulti, RingElem>,
}

impl DiffOperator {
    pub fn zero(ctx: RingCtx) -> Self {
        DiffOperator {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(ctx: RingCtx) -> Self {
        Self::mult(RingElem::one(ctx))
    }

    /// Multiplication operator by a ring element.
    pub fn mult(f: RingElem) -> Self {
        let ctx = f.ctx();
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert(vec![0; 3 * ctx.n], f);
        }
        DiffOperator { ctx, terms }
    }

    /// First-order derivative `d/dk_{a,j}`.
    pub fn deriv(ctx: RingCtx, a: usize, j: usize) -> Self {
        let mut alpha = vec![0u32; 3 * ctx.n];
        alpha[3 * a + j] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(alpha, RingElem::one(ctx));
        DiffOperator { ctx, terms }
    }

    pub fn ctx(&self) -> RingCtx {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PartialMulti, &RingElem)> {
        self.terms.iter()
    }

    fn add_term(&mut self, alpha: PartialMulti, coeff: RingElem) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&alpha) {
            Some(slot) => {
                *slot = slot.add(&coeff);
                if slot.is_zero() {
                    self.terms.remove(&alpha);
                }
            }
            None => {
                self.terms.insert(alpha, coeff);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.ctx, other.ctx);
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        DiffOperator {
            ctx: self.ctx,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.ctx);
        }
        DiffOperator {
            ctx: self.ctx,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.clone(), c.scale(s)))
                .collect(),
        }
    }

    /// Left multiplication by a function: `f * A`.
    pub fn scale_elem(&self, f: &RingElem) -> Self {
        let mut out = Self::zero(self.ctx);
        for (a, c) in &self.terms {
            out.add_term(a.clone(), c.mul(f));
        }
        out
    }

    /// Applies `partial^alpha` to a ring element.
    fn apply_partial(_ctx: RingCtx, alpha: &PartialMulti, f: &RingElem) -> RingElem {
        let mut out = f.clone();
        for (idx, &ord) in alpha.iter().enumerate() {
            let (a, j) = (idx / 3, idx % 3);
            for _ in 0..ord {
                out = d_elem(&out, a, j);
                if out.is_zero() {
                    return out;
                }
            }
        }
        out
    }

    /// Applies the operator to a ring element.
    pub fn apply(&self, f: &RingElem) -> RingElem {
        let mut out = RingElem::zero(self.ctx);
        for (alpha, coeff) in &self.terms {
            let df = Self::apply_partial(self.ctx, alpha, f);
            if !df.is_zero() {
                out = out.add(&coeff.mul(&df));
            }
        }
        out
    }

    /// Operator composition `self . other` via the Leibniz rule:
    /// `partial^a (g h) = sum_{c <= a} binom(a, c) partial^c(g) partial^{a-c}(h)`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.ctx, other.ctx);
        let mut out = Self::zero(self.ctx);
        for (alpha, f) in &self.terms {
            for (beta, g) in &other.terms {
                for (gamma, binom) in sub_multi_indices(alpha) {
                    let dg = Self::apply_partial(self.ctx, &gamma, g);
                    if dg.is_zero() {
                        continue;
                    }
                    let coeff = f.mul(&dg).scale(&Scalar::from_int(binom));
                    let mut rest: PartialMulti = alpha
                        .iter()
                        .zip(&gamma)
                        .map(|(a, c)| a - c)
                        .collect();
                    for (r, b) in rest.iter_mut().zip(beta) {
                        *r += b;
                    }
                    out.add_term(rest, coeff);
                }
            }
        }
        out
    }

    /// Normalized bracket `(A, B) = -i (AB - BA)`.
    pub fn nbr(&self, other: &Self) -> Self {
        self.compose(other)
            .sub(&other.compose(self))
            .scale(&-Scalar::i())
    }

    /// Symmetrized product `(AB + BA)/2`.
    pub fn sym(&self, other: &Self) -> Self {
        self.compose(other)
            .add(&other.compose(self))
            .scale(&Scalar::ratio(1, 2))
    }
}

/// All `gamma <= alpha` with the product of binomial coefficients.
fn sub_multi_indices(alpha: &PartialMulti) -> Vec<(PartialMulti, i64)> {
    let mut out: Vec<(PartialMulti, i64)> = vec![(Vec::new(), 1)];
    for &a in alpha {
        let mut next = Vec::with_capacity(out.len() * (a as usize + 1));
        for (prefix, coeff) in &out {
            for c in 0..=a {
                let mut p = prefix.clone();
                p.push(c);
                next.push((p, coeff * binom(a, c)));
            }
        }
        out = next;
    }
    out
}

fn binom(n: u32, k: u32) -> i64 {
    let k = k.min(n - k);
    let mut num = 1i64;
    let mut den = 1i64;
    for i in 0..k {
        num *= (n - i) as i64;
        den *= (i + 1) as i64;
    }
    num / den
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(alpha, c)| {
                let ds: Vec<String> = alpha
                    .iter()
                    .enumerate()
                    .filter(|(_, o)| **o > 0)
                    .map(|(idx, o)| {
                        let name = format!("d{}_{}", idx / 3, idx % 3);
                        if *o == 1 {
                            name
                        } else {
                            format!("{name}^{o}")
                        }
                    })
                    .collect();
                if ds.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c}) {}", ds.join(" "))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingPoly;

    #[test]
    fn composition_is_associative() {
        let ctx = RingCtx::new(2);
        let a = DiffOperator::mult(RingElem::from_poly(RingPoly::var(ctx, ctx.omega_var(0))))
            .compose(&DiffOperator::deriv(ctx, 0, 1));
        let b = DiffOperator::deriv(ctx, 0, 0).add(&DiffOperator::mult(RingElem::from_poly(
            RingPoly::var(ctx, ctx.k_var(1, 2)),
        )));
        let c = DiffOperator::deriv(ctx, 1, 2).compose(&DiffOperator::deriv(ctx, 0, 1));
        let lhs = a.compose(&b).compose(&c);
        let rhs = a.compose(&b.compose(&c));
        assert_eq!(lhs.sub(&rhs), DiffOperator::zero(ctx));
    }

    #[test]
    fn canonical_commutator_of_k_and_d() {
        let ctx = RingCtx::new(1);
        let k = DiffOperator::mult(RingElem::from_poly(RingPoly::var(ctx, ctx.k_var(0, 0))));
        let d = DiffOperator::deriv(ctx, 0, 0);
        // [d, k] = 1
        let comm = d.compose(&k).sub(&k.compose(&d));
        assert_eq!(comm, DiffOperator::identity(ctx));
    }

    #[test]
    fn apply_chain_rule_through_omega() {
        let ctx = RingCtx::new(1);
        // d/dk_0 (omega^1) = k_0 / omega, then multiplied by omega gives k_0
        let d = DiffOperator::deriv(ctx, 0, 0);
        let omega = RingElem::from_poly(RingPoly::var(ctx, ctx.omega_var(0)));
        let got = DiffOperator::mult(omega.clone()).apply(&d.apply(&omega));
        let want = RingElem::from_poly(RingPoly::var(ctx, ctx.k_var(0, 0)));
        assert!(got.sub(&want).is_zero());
    }
}
