//! Lorentz index labels: symbolic or concrete, upper or lower.

use std::fmt;

/// Space-time dimension; concrete index values live in `0..DIM`.
pub const DIM: u8 = 4;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Variance {
    Upper,
    Lower,
}

impl Variance {
    pub fn flip(self) -> Self {
        match self {
            Variance::Upper => Variance::Lower,
            Variance::Lower => Variance::Upper,
        }
    }
}

/// Either a concrete component in `0..4` or a symbolic name.
///
/// Symbolic names are free when they occur once in a monomial and bound when
/// they occur exactly twice, once upper and once lower; any other pattern is
/// malformed and rejected by canonicalization.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum IndexValue {
    Concrete(u8),
    Name(String),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IndexLabel {
    pub value: IndexValue,
    pub variance: Variance,
}

impl IndexLabel {
    pub fn up(name: &str) -> Self {
        IndexLabel {
            value: IndexValue::Name(name.to_string()),
            variance: Variance::Upper,
        }
    }

    pub fn down(name: &str) -> Self {
        IndexLabel {
            value: IndexValue::Name(name.to_string()),
            variance: Variance::Lower,
        }
    }

    pub fn conc_up(v: u8) -> Self {
        assert!(v < DIM, "concrete index out of range");
        IndexLabel {
            value: IndexValue::Concrete(v),
            variance: Variance::Upper,
        }
    }

    pub fn conc_down(v: u8) -> Self {
        assert!(v < DIM, "concrete index out of range");
        IndexLabel {
            value: IndexValue::Concrete(v),
            variance: Variance::Lower,
        }
    }

    pub fn concrete(&self) -> Option<u8> {
        match self.value {
            IndexValue::Concrete(v) => Some(v),
            IndexValue::Name(_) => None,
        }
    }

    pub fn name(&self) -> Option<&str> {
        match &self.value {
            IndexValue::Concrete(_) => None,
            IndexValue::Name(n) => Some(n),
        }
    }
}

impl fmt::Display for IndexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = match &self.value {
            IndexValue::Concrete(c) => c.to_string(),
            IndexValue::Name(n) => n.clone(),
        };
        match self.variance {
            Variance::Upper => write!(f, "^{v}"),
            Variance::Lower => write!(f, "_{v}"),
        }
    }
}
