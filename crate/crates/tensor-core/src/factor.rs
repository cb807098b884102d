//! The four tensor factor kinds appearing in coefficients: metric, Kronecker,
//! Levi-Civita, and the formal acceleration parameter.

use crate::index::{IndexLabel, Variance};
use std::fmt;

/// A single tensor factor inside a coefficient monomial.
///
/// Variance discipline:
/// - `Metric` slots carry equal variance (`eta^{ab}` or `eta_{ab}`); a metric
///   with mixed variance is a Kronecker delta and is stored as such.
/// - `Kronecker` is `delta^a_b`: slot 0 upper, slot 1 lower.
/// - `Epsilon` slots carry equal variance (all upper or all lower).
/// - `Accel` is the commuting acceleration parameter `a^mu` (or `a_mu`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum TensorFactor {
    Metric(IndexLabel, IndexLabel),
    Kronecker(IndexLabel, IndexLabel),
    Epsilon([IndexLabel; 4]),
    Accel(IndexLabel),
}

impl TensorFactor {
    pub fn metric(a: IndexLabel, b: IndexLabel) -> Self {
        if a.variance != b.variance {
            // eta^a_b is delta^a_b
            return Self::kronecker(a, b);
        }
        TensorFactor::Metric(a, b)
    }

    pub fn kronecker(a: IndexLabel, b: IndexLabel) -> Self {
        assert!(
            a.variance != b.variance,
            "kronecker delta needs one upper and one lower slot"
        );
        if a.variance == Variance::Upper {
            TensorFactor::Kronecker(a, b)
        } else {
            TensorFactor::Kronecker(b, a)
        }
    }

    pub fn epsilon(slots: [IndexLabel; 4]) -> Self {
        let v = slots[0].variance;
        assert!(
            slots.iter().all(|s| s.variance == v),
            "epsilon slots must share variance"
        );
        TensorFactor::Epsilon(slots)
    }

    pub fn accel(slot: IndexLabel) -> Self {
        TensorFactor::Accel(slot)
    }

    pub fn slots(&self) -> Vec<&IndexLabel> {
        match self {
            TensorFactor::Metric(a, b) | TensorFactor::Kronecker(a, b) => vec![a, b],
            TensorFactor::Epsilon(s) => s.iter().collect(),
            TensorFactor::Accel(a) => vec![a],
        }
    }

    pub fn slots_mut(&mut self) -> Vec<&mut IndexLabel> {
        match self {
            TensorFactor::Metric(a, b) | TensorFactor::Kronecker(a, b) => vec![a, b],
            TensorFactor::Epsilon(s) => s.iter_mut().collect(),
            TensorFactor::Accel(a) => vec![a],
        }
    }
}

impl fmt::Display for TensorFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TensorFactor::Metric(a, b) => write!(f, "eta{a}{b}"),
            TensorFactor::Kronecker(a, b) => write!(f, "delta{a}{b}"),
            TensorFactor::Epsilon(s) => write!(f, "eps{}{}{}{}", s[0], s[1], s[2], s[3]),
            TensorFactor::Accel(a) => write!(f, "a{a}"),
        }
    }
}
