//! The 15-generator conformal Lie algebra as an exact structure-constant
//! table, with bilinear bracket evaluation and exhaustive Jacobi verification.
//!
//! Brackets here are the normalized ones, `(A, B) = [A, B] / (i hbar)` with
//! `hbar = 1`; at this level they are pure Lie data with rational structure
//! constants. The imaginary unit only enters when the word algebra of the
//! `nc-calculus` crate re-expresses operator products in terms of brackets.

mod element;
mod generator;
mod table;

pub use element::AlgebraElement;
pub use generator::Generator;
pub use table::{JacobiEntry, StructureTable};
