//! Local orders over `O_{K_p}`: the formal λ/π calculus, the orders built
//! from `Γ_p`, the finite quotients `T/π^m T` and the truncated exponential.

pub mod cross;
pub mod formal;
pub mod order;
pub mod quotient;

pub use formal::{
    character_exponent, formal_mul, gamma_membership, in_gamma, CharacterExponent, FormalElement, LocalContext,
    Membership, PiCoefficient,
};
pub use order::{
    algebra_closed, basic_membership_table, deep_membership_table, generator_exponents, in_order, order_membership,
    scaled_inclusion, ClosureOutcome, Counterexample, LocalCase, MembershipRow, OrderSpec, ScaledInclusion,
};
pub use quotient::{
    build_quotient, exp_witness, independence_check, ExpWitness, IndependenceOutcome, QuotientAlgebra, SBarElement,
};
