//! Exact construction, classification and verification of filiform Lie
//! algebras.
//!
//! The crate covers the parametric filiform laws described by the invariant
//! triple `(z1, z2, n)`, their lower central and derived series, symbolic
//! Jacobi constraints, closed-form coefficient identities and the replayed
//! emptiness and derived-length arguments.

pub mod error;
pub mod exactmath;
pub mod family;
pub mod format;
pub mod lemmas;
pub mod liealg;
pub mod linalg;
mod parallel;
pub mod prover;
pub mod series;

pub use error::{Error, Result};
pub use exactmath::{binomial, Polynomial, Rational, Var};
pub use liealg::{BasisChange, LieAlgebra, Vector};
pub use series::Triple;
