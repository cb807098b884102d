//! Exact scalar arithmetic and tensor-index bookkeeping for the conformal
//! verification engine.
//!
//! Everything here is exact: scalars are Gaussian rationals over
//! arbitrary-precision integers, and tensor expressions (metric, Kronecker,
//! Levi-Civita, acceleration parameters) are kept in a canonical form so that
//! equality of values is equality of representations. There is no floating
//! point anywhere in this workspace.
//!
//! Conventions, fixed globally:
//! - Minkowski signature `(+,-,-,-)`
//! - Levi-Civita orientation `eps_{0123} = +1` (hence `eps^{0123} = -1`)
//! - `hbar = 1`

mod expr;
mod factor;
mod index;
mod rng;
mod scalar;

pub use expr::{CoefficientExpr, Monomial};
pub use factor::TensorFactor;
pub use index::{IndexLabel, IndexValue, Variance, DIM};
pub use rng::SplitMix64;
pub use scalar::Scalar;

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TensorError {
    /// A symbolic index name occurs with a multiplicity or variance pattern
    /// that is neither free (once) nor bound (exactly twice, once upper and
    /// once lower). The offending monomial is rendered verbatim.
    #[error("malformed index pairing for `{name}` in monomial `{monomial}`")]
    MalformedIndexPairing { name: String, monomial: String },
}

/// Component of the Minkowski metric with signature `(+,-,-,-)`.
///
/// The metric is its own inverse component-wise, so this serves for both
/// `eta_{mu nu}` and `eta^{mu nu}`.
pub fn metric_component(mu: u8, nu: u8) -> Scalar {
    assert!(mu < DIM && nu < DIM, "index out of range");
    if mu != nu {
        Scalar::zero()
    } else if mu == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// Component of the rank-4 Levi-Civita tensor with all indices lower,
/// orientation `eps_{0123} = +1`: the sign of the permutation, or zero on a
/// repeated index.
pub fn epsilon_component(indices: [u8; 4]) -> Scalar {
    for &i in &indices {
        assert!(i < DIM, "index out of range");
    }
    let mut perm = indices;
    let mut sign = 1i64;
    for i in 0..4 {
        for j in (i + 1)..4 {
            match perm[j].cmp(&perm[i]) {
                std::cmp::Ordering::Less => {
                    perm.swap(i, j);
                    sign = -sign;
                }
                std::cmp::Ordering::Equal => return Scalar::zero(),
                std::cmp::Ordering::Greater => {}
            }
        }
    }
    Scalar::from_int(sign)
}

/// Component of the all-upper Levi-Civita tensor: raising four indices with
/// signature `(+,-,-,-)` multiplies by `det(eta) = -1`.
pub fn epsilon_component_upper(indices: [u8; 4]) -> Scalar {
    -epsilon_component(indices)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metric_signature() {
        assert_eq!(metric_component(0, 0), Scalar::one());
        assert_eq!(metric_component(1, 1), -Scalar::one());
        assert_eq!(metric_component(2, 2), -Scalar::one());
        assert_eq!(metric_component(3, 3), -Scalar::one());
        assert_eq!(metric_component(0, 1), Scalar::zero());
        assert_eq!(metric_component(3, 1), Scalar::zero());
    }

    #[test]
    fn epsilon_orientation() {
        assert_eq!(epsilon_component([0, 1, 2, 3]), Scalar::one());
        assert_eq!(epsilon_component([1, 0, 2, 3]), -Scalar::one());
        assert_eq!(epsilon_component([0, 0, 2, 3]), Scalar::zero());
        assert_eq!(epsilon_component([3, 2, 1, 0]), Scalar::one());
        assert_eq!(epsilon_component_upper([0, 1, 2, 3]), -Scalar::one());
    }
}
