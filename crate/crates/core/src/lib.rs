//! Exact Frobenius numbers of three generators.
//!
//! The engine reduces the input to a pairwise-coprime core (Johnson), then
//! evaluates one of the closed forms selected by the residue-walk case
//! analysis. Brute-force oracles and the residue recursion are exposed
//! alongside so every result can be cross-checked.

pub mod arith;
pub mod cli;
mod error;
pub mod formulas;
pub mod oracle;
pub mod params;
pub mod render;
pub mod sweep;
pub mod walk;

pub use arith::Int;
pub use error::{ArithError, Error, InputError, Result, StructureViolation};
pub use formulas::{
    frobenius, frobenius_triple, frobenius_with, Evaluator, Fallback, FrobeniusResult, Method,
};
pub use params::{make_triple, Case, CaseLabel, CaseParams, Generators, Triple};
