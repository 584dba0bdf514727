//! Lattice-theoretic invariants of the birational involution of `S^[n]`,
//! for `S` a very general K3 surface of degree `2t = 8n - 6`.
//!
//! - [`pell`]: ordinary, negative and congruence-restricted Pell equations.
//! - [`mukai`]: the algebraic Mukai lattice, distinguished classes and the
//!   brute-force class searches.
//! - [`hilbcone`]: `NS(S^[n])` with its Beauville–Bogomolov form, the
//!   involution, wall enumeration and chamber counts.
//! - [`sigma`]: Néron–Severi data and `Bir` finiteness for the moduli space
//!   `Σ = M(3, -H, n)`.
//! - [`lattice`]: even lattices, Eichler transvections and the period-lattice
//!   isometry.
//! - [`formulas`]: closed-form dimension and degree counts.

pub mod error;
pub mod formulas;
pub mod hilbcone;
pub mod lattice;
pub mod mukai;
pub mod pell;
pub mod sigma;

pub use error::{Error, Result};

/// Upper end of the range in which `C_n = 1` was originally established by
/// computer search. Results past it are reported as an extension.
pub const VERIFIED_N_MAX: i64 = 200;
