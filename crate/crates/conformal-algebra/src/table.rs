//! The structure-constant table of the conformal algebra.
//!
//! The table stores the normalized bracket `(A, B)` for every ordered pair of
//! basis generators, with concrete indices and signature `(+,-,-,-)`:
//!
//! ```text
//! (P_mu, P_nu)        = 0
//! (J_mn, P_r)         = eta_nr P_m - eta_mr P_n
//! (J_mn, J_rs)        = eta_nr J_ms + eta_ms J_nr - eta_mr J_ns - eta_ns J_mr
//! (D, P_mu)           = P_mu          (D, J_mn) = 0
//! (P_mu, C_nu)        = -2 eta_mn D - 2 J_mn
//! (J_mn, C_r)         = eta_nr C_m - eta_mr C_n
//! (D, C_mu)           = -C_mu         (C_mu, C_nu) = 0
//! ```
//!
//! The table is immutable data built once; every other module (the word
//! algebra, the matrix representation, the differential-operator realization)
//! consumes this single source of truth.

use crate::element::AlgebraElement;
use crate::generator::Generator;
use std::collections::BTreeMap;
use tensor_core::{metric_component, Scalar};

#[derive(Clone, Debug)]
pub struct StructureTable {
    entries: BTreeMap<(Generator, Generator), AlgebraElement>,
}

fn eta(a: u8, b: u8) -> Scalar {
    metric_component(a, b)
}

/// `(J_mn, P_r)` per the table; also used for the `C` rule which has the same
/// covariant shape.
fn j_vector_rule(m: u8, n: u8, r: u8, make: fn(u8) -> Generator) -> AlgebraElement {
    AlgebraElement::scaled(make(m), eta(n, r)).add(&AlgebraElement::scaled(make(n), -eta(m, r)))
}

fn j_j_rule(m: u8, n: u8, r: u8, s: u8) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (a, b, sign) in [(m, s, eta(n, r)), (n, r, eta(m, s)), (n, s, -eta(m, r)), (m, r, -eta(n, s))]
    {
        out = out.add(&AlgebraElement::j(a, b).scale(&sign));
    }
    out
}

fn bracket_rule(a: Generator, b: Generator) -> Option<AlgebraElement> {
    use Generator::*;
    Some(match (a, b) {
        (D, D) => AlgebraElement::zero(),
        (P(_), P(_)) => AlgebraElement::zero(),
        (C(_), C(_)) => AlgebraElement::zero(),
        (D, P(mu)) => AlgebraElement::generator(P(mu)),
        (D, J(_, _)) => AlgebraElement::zero(),
        (D, C(mu)) => AlgebraElement::generator(C(mu)).neg(),
        (J(m, n), P(r)) => j_vector_rule(m, n, r, P),
        (J(m, n), C(r)) => j_vector_rule(m, n, r, C),
        (J(m, n), J(r, s)) => j_j_rule(m, n, r, s),
        (P(mu), C(nu)) => {
            let d_part = AlgebraElement::scaled(D, eta(mu, nu) * Scalar::from_int(-2));
            let j_part = AlgebraElement::j(mu, nu).scale(&Scalar::from_int(-2));
            d_part.add(&j_part)
        }
        _ => return None,
    })
}

impl StructureTable {
    /// Builds the conformal table for all 225 ordered basis pairs. Pairs whose
    /// orientation has no stated rule are filled by antisymmetry.
    pub fn conformal() -> Self {
        let basis = Generator::basis();
        let mut entries = BTreeMap::new();
        for &a in &basis {
            for &b in &basis {
                let value = match bracket_rule(a, b) {
                    Some(v) => v,
                    None => bracket_rule(b, a)
                        .expect("rule table covers every unordered pair")
                        .neg(),
                };
                entries.insert((a, b), value);
            }
        }
        StructureTable { entries }
    }

    /// The normalized bracket `(g1, g2)` of two basis generators.
    pub fn bracket_basis(&self, g1: Generator, g2: Generator) -> &AlgebraElement {
        self.entries
            .get(&(g1, g2))
            .expect("valid generator pair")
    }

    /// Bilinear extension of the table to arbitrary elements.
    pub fn bracket(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (ga, ca) in a.iter() {
            for (gb, cb) in b.iter() {
                let coeff = ca.mul(cb);
                out = out.add(&self.bracket_basis(*ga, *gb).scale_expr(&coeff));
            }
        }
        out
    }

    /// `((g1,g2),g3) - (g1,(g2,g3)) + (g2,(g1,g3))`; zero iff the Jacobi
    /// identity holds on the triple.
    pub fn jacobi_residual(&self, g1: Generator, g2: Generator, g3: Generator) -> AlgebraElement {
        let e1 = AlgebraElement::generator(g1);
        let e2 = AlgebraElement::generator(g2);
        let e3 = AlgebraElement::generator(g3);
        self.bracket(&self.bracket(&e1, &e2), &e3)
            .sub(&self.bracket(&e1, &self.bracket(&e2, &e3)))
            .add(&self.bracket(&e2, &self.bracket(&e1, &e3)))
    }

    /// Residual of the conformal-weight relation `(D, g) = w(g) g`.
    pub fn weight_residual(&self, g: Generator) -> AlgebraElement {
        let e = AlgebraElement::generator(g);
        self.bracket(&AlgebraElement::generator(Generator::D), &e)
            .sub(&e.scale(&Scalar::from_int(g.conformal_weight())))
    }

    /// Testing hook: replaces one table entry so failure paths can be
    /// exercised. Never used outside deliberate corruption fixtures.
    pub fn with_entry_override(
        mut self,
        g1: Generator,
        g2: Generator,
        value: AlgebraElement,
    ) -> Self {
        self.entries.insert((g1, g2), value);
        self
    }

    /// All unordered pairs `{a, b}` of distinct basis generators (105).
    pub fn distinct_pairs() -> Vec<(Generator, Generator)> {
        let basis = Generator::basis();
        let mut out = Vec::new();
        for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                out.push((basis[i], basis[j]));
            }
        }
        out
    }

    /// All unordered triples of distinct basis generators (455).
    pub fn distinct_triples() -> Vec<(Generator, Generator, Generator)> {
        let basis = Generator::basis();
        let mut out = Vec::new();
        for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                for k in (j + 1)..basis.len() {
                    out.push((basis[i], basis[j], basis[k]));
                }
            }
        }
        out
    }

    /// All triples with a repeated generator (225 up to permutation).
    pub fn degenerate_triples() -> Vec<(Generator, Generator, Generator)> {
        let basis = Generator::basis();
        let mut out = Vec::new();
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                // (a, a, b) covers every repetition pattern once combined
                // with the bracket's antisymmetry.
                out.push((basis[i], basis[i], basis[j]));
            }
        }
        out
    }

    /// Exhaustive Jacobi enumeration: distinct triples first, then the
    /// degenerate ones, each with its residual.
    pub fn enumerate_jacobi(&self) -> Vec<JacobiEntry> {
        let mut out = Vec::new();
        for (a, b, c) in Self::distinct_triples() {
            out.push(JacobiEntry {
                triple: (a, b, c),
                distinct: true,
                residual: self.jacobi_residual(a, b, c),
            });
        }
        for (a, b, c) in Self::degenerate_triples() {
            out.push(JacobiEntry {
                triple: (a, b, c),
                distinct: false,
                residual: self.jacobi_residual(a, b, c),
            });
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct JacobiEntry {
    pub triple: (Generator, Generator, Generator),
    pub distinct: bool,
    pub residual: AlgebraElement,
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    #[test]
    fn dilatation_weights() {
        let t = StructureTable::conformal();
        assert_eq!(
            *t.bracket_basis(D, P(1)),
            AlgebraElement::generator(P(1))
        );
        assert_eq!(
            *t.bracket_basis(D, C(2)),
            AlgebraElement::generator(C(2)).neg()
        );
        assert!(t.bracket_basis(D, J(0, 3)).is_zero());
    }

    #[test]
    fn p_c_bracket_at_equal_timelike_indices() {
        // (P_0, C_0) = -2 eta_00 D - 2 J_00 = -2 D
        let t = StructureTable::conformal();
        assert_eq!(
            *t.bracket_basis(P(0), C(0)),
            AlgebraElement::scaled(D, Scalar::from_int(-2))
        );
    }

    #[test]
    fn boost_acts_on_translations() {
        // (J_01, P_1) = eta_11 P_0 - eta_01 P_1 = -P_0
        let t = StructureTable::conformal();
        assert_eq!(
            *t.bracket_basis(J(0, 1), P(1)),
            AlgebraElement::generator(P(0)).neg()
        );
    }

    #[test]
    fn bilinear_bracket_expands_sums() {
        // (P_0 + P_1, C_0) = -2D + 2 J_01
        let t = StructureTable::conformal();
        let lhs = t.bracket(
            &AlgebraElement::generator(P(0)).add(&AlgebraElement::generator(P(1))),
            &AlgebraElement::generator(C(0)),
        );
        let want = AlgebraElement::scaled(D, Scalar::from_int(-2))
            .add(&AlgebraElement::j(0, 1).scale(&Scalar::from_int(2)));
        assert_eq!(lhs, want);
    }

    #[test]
    fn accelerations_commute() {
        let t = StructureTable::conformal();
        assert!(t.bracket_basis(C(2), C(3)).is_zero());
        assert!(t
            .bracket(
                &AlgebraElement::generator(D),
                &AlgebraElement::generator(D)
            )
            .is_zero());
    }

    #[test]
    fn antisymmetry_on_all_ordered_pairs() {
        let t = StructureTable::conformal();
        for a in Generator::basis() {
            for b in Generator::basis() {
                assert!(
                    t.bracket_basis(a, b)
                        .add(t.bracket_basis(b, a))
                        .is_zero(),
                    "antisymmetry fails for ({a}, {b})"
                );
            }
        }
    }

    #[test]
    fn jacobi_spot_checks() {
        let t = StructureTable::conformal();
        assert!(t.jacobi_residual(P(0), C(1), D).is_zero());
        assert!(t.jacobi_residual(P(0), P(1), C(2)).is_zero());
        assert!(t.jacobi_residual(D, D, D).is_zero());
    }

    #[test]
    fn jacobi_enumeration_counts() {
        let t = StructureTable::conformal();
        let entries = t.enumerate_jacobi();
        let distinct = entries.iter().filter(|e| e.distinct).count();
        assert_eq!(distinct, 455);
        assert_eq!(entries.len(), 455 + 225);
        assert!(entries.iter().all(|e| e.residual.is_zero()));
    }

    #[test]
    fn lorentz_covariance_of_spans() {
        let t = StructureTable::conformal();
        for mu in 0..4 {
            for nu in (mu + 1)..4 {
                let j = AlgebraElement::generator(J(mu, nu));
                for rho in 0..4 {
                    assert!(t
                        .bracket(&j, &AlgebraElement::generator(P(rho)))
                        .in_p_span());
                    assert!(t
                        .bracket(&j, &AlgebraElement::generator(C(rho)))
                        .in_c_span());
                }
            }
        }
    }

    #[test]
    fn corrupted_entry_breaks_jacobi() {
        let t = StructureTable::conformal().with_entry_override(
            P(0),
            C(0),
            AlgebraElement::generator(D),
        );
        let broken = StructureTable::distinct_triples()
            .iter()
            .any(|&(a, b, c)| !t.jacobi_residual(a, b, c).is_zero());
        assert!(broken);
    }
}
