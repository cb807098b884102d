//! The fifteen basis generators: translations `P_mu`, Lorentz rotations and
//! boosts `J_{mu nu}`, the dilatation `D`, and the generators `C_mu` of
//! transformations to uniformly accelerated frames.
//!
//! All generator indices are stored lower; raising is always explicit through
//! metric components. `J` is kept with slot order `mu < nu`; the antisymmetric
//! partner `J_{nu mu}` is `-J_{mu nu}` and the diagonal vanishes.

use std::fmt;
use tensor_core::DIM;

/// A basis generator with concrete lower indices.
///
/// The derived `Ord` is the normal-ordering of the word algebra:
/// `D < J_{01} < ... < J_{23} < P_0 < ... < P_3 < C_0 < ... < C_3`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Generator {
    D,
    J(u8, u8),
    P(u8),
    C(u8),
}

impl Generator {
    /// All 15 basis generators in normal order.
    pub fn basis() -> Vec<Generator> {
        let mut out = vec![Generator::D];
        for mu in 0..DIM {
            for nu in (mu + 1)..DIM {
                out.push(Generator::J(mu, nu));
            }
        }
        for mu in 0..DIM {
            out.push(Generator::P(mu));
        }
        for mu in 0..DIM {
            out.push(Generator::C(mu));
        }
        out
    }

    /// Normalizes `J_{mu nu}` with arbitrary slot order: returns the basis
    /// generator and the sign, or `None` for the vanishing diagonal.
    pub fn j_normalized(mu: u8, nu: u8) -> Option<(i64, Generator)> {
        assert!(mu < DIM && nu < DIM, "index out of range");
        match mu.cmp(&nu) {
            std::cmp::Ordering::Less => Some((1, Generator::J(mu, nu))),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some((-1, Generator::J(nu, mu))),
        }
    }

    /// Conformal weight: eigenvalue of the normalized bracket with `D`.
    pub fn conformal_weight(&self) -> i64 {
        match self {
            Generator::D | Generator::J(_, _) => 0,
            Generator::P(_) => 1,
            Generator::C(_) => -1,
        }
    }

    pub fn is_valid(&self) -> bool {
        match *self {
            Generator::D => true,
            Generator::J(a, b) => a < b && b < DIM,
            Generator::P(a) | Generator::C(a) => a < DIM,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::D => write!(f, "D"),
            Generator::J(a, b) => write!(f, "J{a}{b}"),
            Generator::P(a) => write!(f, "P{a}"),
            Generator::C(a) => write!(f, "C{a}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_basis_generators_in_normal_order() {
        let basis = Generator::basis();
        assert_eq!(basis.len(), 15);
        for w in basis.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert_eq!(basis[0], Generator::D);
        assert_eq!(basis[1], Generator::J(0, 1));
        assert_eq!(basis[7], Generator::P(0));
        assert_eq!(basis[14], Generator::C(3));
    }

    #[test]
    fn j_slot_normalization() {
        assert_eq!(Generator::j_normalized(2, 1), Some((-1, Generator::J(1, 2))));
        assert_eq!(Generator::j_normalized(1, 2), Some((1, Generator::J(1, 2))));
        assert_eq!(Generator::j_normalized(3, 3), None);
    }
}
