//! Exact arithmetic substrate: p-adic integers, finite fields, truncated
//! rings and the univariate integer polynomial toolkit.

pub mod factor;
pub mod gf;
pub mod hensel;
pub mod linalg;
pub mod modpoly;
pub mod padic;
pub mod poly;
pub mod sturm;

pub use factor::{factor_over_q, factor_over_q_bounded, Factorization, MAX_FACTOR_DEGREE};
pub use gf::{FieldElement, FiniteField, TruncatedRing, TruncatedRingElement};
pub use hensel::hensel_lift_factorization;
pub use modpoly::{factor_mod_p, ModPoly};
pub use padic::{teichmuller, PadicInt, DEFAULT_PRECISION};
pub use poly::{IntPolynomial, RatPoly};
pub use sturm::sturm_real_root_count;
