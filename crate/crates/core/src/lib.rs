//! Exact re-derivation of a two-parameter-family identity for
//! `A^3 + B^3 = C^3 + D^3`, generation of integer solutions from it, and a
//! brute-force sum-of-two-cubes search used to cross-check them.

pub mod algebra;

pub use algebra::{
    rf_equal, AlgebraError, Assignment, Integer, Monomial, Polynomial, Rational,
    RationalFunction, Symbol, SymbolTable,
};
pub mod derivation;
pub mod identity;
pub mod parser;
pub mod oracle;
