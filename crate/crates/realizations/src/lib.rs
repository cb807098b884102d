//! Two independent concrete realizations of the conformal algebra, used as
//! cross-checking oracles for the abstract word-algebra engine: an exact 6x6
//! rational matrix representation of so(4,2), and an N-particle massless
//! scalar realization by differential operators over an exact algebraic
//! function ring in the momentum variables.

mod diffop;
mod matrix;
mod oneparticle;
mod point;
mod realize;
mod ring;
mod solver;

pub mod checks;

pub use diffop::DiffOperator;
pub use matrix::{l_basis, Mat6, MatrixCheck, MatrixRep, RepCoefficients};
pub use oneparticle::{solved_constants, SolvedConstants};
pub use point::{random_point, MomentumPoint};
pub use realize::{OperatorCheck, Realization};
pub use ring::{DenMono, RingCtx, RingElem, RingPoly};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RealizationError {
    /// Closure constraints have no (unique) exact solution; indicates a
    /// structure-table or convention bug rather than bad input.
    #[error("closure solve failed: {0}")]
    ClosureUnsolvable(String),

    /// A coefficient that must be a real rational was not.
    #[error("coefficient is not a real rational: {0}")]
    NonRationalCoefficient(String),

    /// A coefficient that must be a plain scalar still carries formal tensor
    /// factors (an unsubstituted acceleration parameter).
    #[error("coefficient is not scalar: {0}")]
    FormalCoefficient(String),

    /// Negative mass powers need at least two particles; a single massless
    /// particle has `M = 0`.
    #[error("mass is not invertible at particle count {0}")]
    MassNotInvertible(usize),

    /// Point evaluation hit a vanishing denominator or needs an irrational
    /// value of the mass at this point.
    #[error("rejected evaluation point: {0}")]
    BadPoint(String),
}
