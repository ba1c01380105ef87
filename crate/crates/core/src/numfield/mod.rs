//! Global number-field analysis: validation, total reality, the splitting
//! of `p`, subfield embeddings and the choice of local construction.

pub mod branch;
pub mod embedding;
pub mod field;
pub mod ramification;

pub use branch::{case_branch, CaseBranch, CaseDecision};
pub use embedding::{embeds_subfield, real_cyclotomic_polynomial, Embedding, NoCertificate};
pub use field::{is_totally_real, NumberFieldDescription};
pub use ramification::{ramification_data, Provenance, RamificationDatum, RamificationOutcome};
