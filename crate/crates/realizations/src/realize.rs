//! The bridge from the abstract word algebra to the N-particle realization.
//!
//! Each generator is realized as the coproduct (sum over particles) of its
//! one-particle image; a word realizes as the composition of its letters and
//! `M^k` as multiplication by `sigma^k`. Normalized brackets on the abstract
//! side map to `(1/i) [A, B]` operator commutators.

use crate::diffop::DiffOperator;
use crate::oneparticle::{particle_op, solved_constants};
use crate::ring::{RingCtx, RingElem};
use crate::RealizationError;
use conformal_algebra::{AlgebraElement, Generator, StructureTable};
use nc_calculus::{Letter, NCPolynomial};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct Realization {
    ctx: RingCtx,
    ops: BTreeMap<Generator, DiffOperator>,
}

impl Realization {
    /// Builds the `n`-particle realization from the closure-solved
    /// one-particle constants.
    pub fn new(n: usize) -> Result<Self, RealizationError> {
        assert!(n >= 1);
        let consts = solved_constants()?;
        let ctx = RingCtx::new(n);
        let mut ops = BTreeMap::new();
        for g in Generator::basis() {
            let mut op = DiffOperator::zero(ctx);
            for a in 0..n {
                op = op.add(&particle_op(ctx, consts, g, a));
            }
            ops.insert(g, op);
        }
        Ok(Realization { ctx, ops })
    }

    pub fn particles(&self) -> usize {
        self.ctx.n
    }

    pub fn ctx(&self) -> RingCtx {
        self.ctx
    }

    pub fn op(&self, g: Generator) -> &DiffOperator {
        &self.ops[&g]
    }

    /// Linear extension to algebra elements with scalar coefficients.
    pub fn apply_element(&self, e: &AlgebraElement) -> Result<DiffOperator, RealizationError> {
        let mut out = DiffOperator::zero(self.ctx);
        for (g, c) in e.iter() {
            let s = c
                .as_scalar()
                .ok_or_else(|| RealizationError::FormalCoefficient(c.to_string()))?;
            out = out.add(&self.ops[g].scale(&s));
        }
        Ok(out)
    }

    /// Multiplication by `sigma^k`; negative powers require at least two
    /// particles since a single massless particle has `M = 0`.
    pub fn mass_power_op(&self, k: i64) -> Result<DiffOperator, RealizationError> {
        if k < 0 && self.ctx.n < 2 {
            return Err(RealizationError::MassNotInvertible(self.ctx.n));
        }
        Ok(DiffOperator::mult(
            RingElem::one(self.ctx).mul_sigma_power(k),
        ))
    }

    /// Realizes a normal-form polynomial: homomorphic on products, linear in
    /// coefficients. Coefficients must be plain scalars (substitute the
    /// acceleration parameter first).
    pub fn realize(&self, p: &NCPolynomial) -> Result<DiffOperator, RealizationError> {
        let mut out = DiffOperator::zero(self.ctx);
        for (word, coeff) in p.iter() {
            let s = coeff
                .as_scalar()
                .ok_or_else(|| RealizationError::FormalCoefficient(coeff.to_string()))?;
            let mut op = DiffOperator::identity(self.ctx);
            for letter in word {
                let next = match letter {
                    Letter::Gen(g) => self.ops[g].clone(),
                    Letter::M(k) => self.mass_power_op(*k)?,
                };
                op = op.compose(&next);
            }
            out = out.add(&op.scale(&s));
        }
        Ok(out)
    }

    /// All 105 pair residuals `(rho(A), rho(B)) - rho((A,B))` against the
    /// structure table.
    pub fn verify_pairs(&self, table: &StructureTable) -> Vec<OperatorCheck> {
        let mut out = Vec::new();
        for (a, b) in StructureTable::distinct_pairs() {
            let lhs = self.ops[&a].nbr(&self.ops[&b]);
            let rhs = self
                .apply_element(table.bracket_basis(a, b))
                .expect("table coefficients are scalars");
            out.push(OperatorCheck {
                label: format!("pair.{a}.{b}"),
                residual: lhs.sub(&rhs),
            });
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct OperatorCheck {
    pub label: String,
    pub residual: DiffOperator,
}

impl OperatorCheck {
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}
