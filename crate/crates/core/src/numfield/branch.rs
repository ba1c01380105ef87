use serde::Serialize;

use super::embedding::{embeds_subfield, real_cyclotomic_polynomial, Embedding};
use super::field::NumberFieldDescription;
use super::ramification::RamificationDatum;
use crate::error::{Error, Result};
use crate::localorders::LocalCase;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum CaseBranch {
    Construction {
        case: LocalCase,
    },
    /// `p = 5`, `e = 2`, `√5 ∈ K`: no local construction applies.
    ExcludedSqrt5,
    HypothesesNotMet {
        reason: String,
    },
    Undecided {
        reason: String,
    },
}

impl CaseBranch {
    pub fn local_case(&self) -> Option<LocalCase> {
        match self {
            CaseBranch::Construction { case } => Some(*case),
            _ => None,
        }
    }
}

/// The branch together with the prime it was chosen for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseDecision {
    pub branch: CaseBranch,
    /// `(e, f)` of the chosen prime above `p`.
    pub prime_data: (u32, u32),
    /// Embedding test of `Q(ζ_p)^+` into `K`, when it was needed.
    pub embedding: Option<Embedding>,
}

/// Selects the local construction for the prime above `p` with maximal `e`.
pub fn case_branch(field: &NumberFieldDescription, p: u64, ram: &RamificationDatum) -> Result<CaseDecision> {
    ram.validate(field.degree())
        .map_err(|e| Error::InvalidInput(format!("incomplete ramification data: {e}")))?;
    let (e, f) = ram.chosen_prime().expect("validated");
    let decide = |branch, embedding| {
        Ok(CaseDecision {
            branch,
            prime_data: (e, f),
            embedding,
        })
    };
    let construct = |case| CaseBranch::Construction { case };
    if e == 1 {
        return decide(
            CaseBranch::HypothesesNotMet {
                reason: format!("{p} is unramified in K"),
            },
            None,
        );
    }
    if e >= 4 {
        return decide(construct(LocalCase::DeepRamification), None);
    }
    // e ∈ {2, 3}: [K(ζ_p):K] = 2 forces (p-1)/2 | e.
    if p >= 11 || (p == 7 && e == 2) {
        return decide(construct(LocalCase::LargeDegree), None);
    }
    let emb = embeds_subfield(field, &real_cyclotomic_polynomial(p)?)?;
    match (p, e, &emb) {
        (_, _, Embedding::Undecided { reason }) => {
            let reason = format!("embedding test for the real cyclotomic subfield was inconclusive: {reason}");
            decide(CaseBranch::Undecided { reason }, Some(emb))
        }
        (7, 3, Embedding::Yes { .. }) => decide(construct(LocalCase::SeptimicCubic), Some(emb)),
        (5, 2, Embedding::Yes { .. }) => decide(CaseBranch::ExcludedSqrt5, Some(emb)),
        (5, 3, Embedding::Yes { .. }) => {
            let reason =
                "p = 5, e = 3 with √5 ∈ K: [K(ζ_5):K] = 2 and no explicit local order is available for this case"
                    .into();
            decide(CaseBranch::Undecided { reason }, Some(emb))
        }
        (_, _, Embedding::No { .. }) => decide(construct(LocalCase::LargeDegree), Some(emb)),
        _ => Err(Error::Internal(format!("unreachable branch for p = {p}, e = {e}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::ramification::{ramification_data, RamificationOutcome};

    fn branch(s: &str, p: u64) -> CaseBranch {
        let k = NumberFieldDescription::parse(s).unwrap();
        let RamificationOutcome::Determined(ram) = ramification_data(&k, p).unwrap() else {
            panic!()
        };
        case_branch(&k, p, &ram).unwrap().branch
    }

    #[test]
    fn examples() {
        assert_eq!(branch("x^2-5", 5), CaseBranch::ExcludedSqrt5);
        assert_eq!(
            branch("x^2-7", 7),
            CaseBranch::Construction {
                case: LocalCase::LargeDegree
            }
        );
        assert_eq!(
            branch("x^3+x^2-2*x-1", 7),
            CaseBranch::Construction {
                case: LocalCase::SeptimicCubic
            }
        );
        assert!(matches!(branch("x^2-2", 5), CaseBranch::HypothesesNotMet { .. }));
        assert_eq!(
            branch("x^2-11", 11),
            CaseBranch::Construction {
                case: LocalCase::LargeDegree
            }
        );
        assert_eq!(
            branch("x^4-5", 5),
            CaseBranch::Construction {
                case: LocalCase::DeepRamification
            }
        );
        assert_eq!(
            branch("x^3-5", 5),
            CaseBranch::Construction {
                case: LocalCase::LargeDegree
            }
        );
        assert_eq!(
            branch("x^2-10", 5),
            CaseBranch::Construction {
                case: LocalCase::LargeDegree
            }
        );
    }

    #[test]
    fn cubic_at_seven_without_subfield() {
        // x^3 - 7 is totally ramified at 7 but is not the real cyclotomic field.
        assert_eq!(
            branch("x^3-7", 7),
            CaseBranch::Construction {
                case: LocalCase::LargeDegree
            }
        );
    }

    #[test]
    fn override_must_be_complete() {
        let k = NumberFieldDescription::parse("x^2-7").unwrap();
        let ram: RamificationDatum = "1,1".parse().unwrap();
        assert!(case_branch(&k, 7, &ram).is_err());
    }
}
