//! Mechanical verification of the constructive content behind the statement
//! that totally real fields ramified at `p >= 5` are not Hilbert-Speiser of
//! type `C_p`.
//!
//! The crate is layered bottom-up:
//!
//! * [`arith`]: p-adic integers, finite fields, truncated rings, polynomial
//!   factorization and Sturm sequences.
//! * [`cyclo`]: numeric model of `Z_p[ζ_p]` and the eigenvector uniformizer λ.
//! * [`localorders`]: the formal λ/π calculus, the local orders and their
//!   finite quotient algebras, truncated exponential witnesses.
//! * [`deltamod`]: group ring of `(Z/p)^×`, Stickelberger element and ideal,
//!   induced modules and eigenspace projectors.
//! * [`numfield`]: global analysis of a number field at `p`.
//! * [`checker`]: the end-to-end pipeline, verdicts and JSON reports.

pub mod arith;
pub mod checker;
pub mod cyclo;
pub mod deltamod;
pub mod error;
pub mod localorders;
pub mod numfield;

pub use error::{Error, Result};
