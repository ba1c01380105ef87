//! Finite Δ-module machinery for `Δ = (Z/p)^×`: the group ring, the
//! Stickelberger ideal, `B_{1,ω}`, and induced modules with eigenspace
//! projectors.

pub mod group_ring;
pub mod induced;
pub mod stickelberger;

pub use group_ring::GroupRingElement;
pub use induced::{
    eigenspace, eigenspace_sweep, omega_inverse_part_nontrivial, subgroup_orders, subgroups_containing_minus_one,
    Eigenspace, EigenspaceRecord, InducedModule,
};
pub use stickelberger::{
    bernoulli_b1_omega, omega_inverse_ideal_valuation, stickelberger_element, stickelberger_ideal_basis,
    stickelberger_ideal_generators, verify_bernoulli_congruence, IdealValuation, ThetaVariant,
};
