//! Differential forms on curves over prime fields, the Cartier operator, and a
//! decision procedure for whether a morphism `f = h ∘ F` with a Frobenius factor
//! of degree `p` degenerates from separable morphisms.
//!
//! Modules, bottom-up:
//!
//! * [`field_linalg`]: F_p arithmetic, polynomials, dense matrices.
//! * [`localfield`]: truncated Laurent series and local expansions at places.
//! * [`curve`]: rational, hyperelliptic and Artin–Schreier models.
//! * [`differentials`]: Cartier operator, Cartier–Manin matrices, p-rank, a-number.
//! * [`morphisms`]: covers, pullbacks and the space of f-exact homomorphisms.
//! * [`criteria`]: necessary conditions, verdicts and certificates.
//! * [`construct`]: p-rank-0 base search and the Artin–Schreier example factory.
//! * [`cli`]: job descriptions, report documents and the command runner.

pub mod cli;
pub mod construct;
pub mod criteria;
pub mod curve;
pub mod differentials;
mod error;
pub mod field_linalg;
pub mod localfield;
pub mod morphisms;

pub use error::{Error, Result};
