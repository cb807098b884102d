//! The associative word algebra over the conformal generators plus formal
//! mass powers: normal-ordering rewriting, symmetrized products, the derived
//! observables (mass, position, spin, Pauli-Lubanski, accelerated-frame
//! generator) and residual-zero verification of their exact identities.

mod algebra;
mod checks;
mod observables;
mod poly;

pub use algebra::{Strategy, WordAlgebra, DEFAULT_STEP_BUDGET};
pub use checks::{
    check_canonical_commutators, check_double_commutators, check_mass_shifts,
    check_pauli_lubanski, check_position_commutators, check_redshift_law, check_structure_pairs,
    normal_form_seeded, prop_confluence, prop_grading, prop_leibniz,
    prop_normal_form_idempotent, prop_sym_leibniz, prop_word_jacobi, random_polynomial,
    ResidualCheck,
};
pub use observables::ObservableCatalog;
pub use poly::{Letter, NCPolynomial, Word};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum NcError {
    /// The rewrite loop exceeded its step budget. The rule system is proved
    /// terminating, so hitting this indicates a rule bug (or an absurdly
    /// large input), never a long-but-finite reduction that should be waited
    /// out.
    #[error("rewriting exceeded the step budget of {budget} steps")]
    StepBudgetExceeded { budget: usize },
}
