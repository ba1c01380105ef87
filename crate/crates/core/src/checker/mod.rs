//! Orchestration: runs every applicable witness computation for a field and
//! a prime, or for a synthetic local datum, and assembles the report.

mod config;
mod report;
mod suite;

pub use config::{parse_unit_params, CheckerConfig, DEFAULT_F_BOUND, DEFAULT_PRECISION, MIN_PRECISION};
pub use report::{emit_report, CheckRecord, Status, Verdict, WitnessReport, SCHEMA};
pub use suite::{global_suite, local_suite};

use rayon::prelude::*;
use serde_json::json;

use crate::arith::padic::is_prime;
use crate::error::{Error, Result};
use crate::localorders::{LocalCase, LocalContext};
use crate::numfield::{
    case_branch, is_totally_real, ramification_data, CaseBranch, NumberFieldDescription, RamificationOutcome,
};

fn log(config: &CheckerConfig, msg: &str) {
    if config.verbose {
        eprintln!("hscheck: {msg}");
    }
}

fn finish(mut report: WitnessReport, verdict: Verdict) -> (Verdict, WitnessReport) {
    report.verdict = Some(verdict.clone());
    (verdict, report)
}

/// Full pipeline for `(K, p)`.
pub fn check(field: &NumberFieldDescription, p: u64, config: &CheckerConfig) -> Result<(Verdict, WitnessReport)> {
    config.validate()?;
    if p < 5 || !is_prime(p) {
        return Err(Error::InvalidInput(format!("p must be a prime >= 5, got {p}")));
    }
    config.validate_units(p)?;
    let mut report = WitnessReport::new(
        serde_json::to_value(config)?,
        json!({ "mode": "field", "field": field, "prime": p }),
    );

    log(config, "testing total reality");
    let real = is_totally_real(field)?;
    report.push(CheckRecord::with_status(
        "totally-real",
        "every embedding of K is real",
        json!({ "field": field }),
        Status::Info,
        json!({ "totally_real": real }),
    ));
    if !real {
        return Ok(finish(
            report,
            Verdict::HypothesesNotMet {
                reason: "K is not totally real".into(),
            },
        ));
    }

    log(config, "computing the splitting of p");
    let ram = match &config.ramification {
        Some(user) => {
            user.validate(field.degree())?;
            user.clone()
        }
        None => match ramification_data(field, p)? {
            RamificationOutcome::Determined(d) => d,
            RamificationOutcome::Undetermined { reason } => {
                report.push(CheckRecord::with_status(
                    "ramification",
                    "splitting type of p in K",
                    json!({ "field": field, "prime": p }),
                    Status::Fail,
                    json!({ "undetermined": reason }),
                ));
                let failing = report.failing();
                return Ok(finish(report, Verdict::Undecided { reason, failing }));
            }
        },
    };
    report.push(CheckRecord::with_status(
        "ramification",
        "splitting type of p in K",
        json!({ "field": field, "prime": p }),
        Status::Info,
        serde_json::to_value(&ram)?,
    ));

    log(config, "selecting the local construction");
    let decision = case_branch(field, p, &ram)?;
    report.push(CheckRecord::with_status(
        "case-selection",
        "choice of local construction from e and [K(zeta_p):K]",
        json!({ "prime": p, "ramification": ram.to_string() }),
        Status::Info,
        serde_json::to_value(&decision)?,
    ));
    let (e, f) = decision.prime_data;
    let case = match &decision.branch {
        CaseBranch::Construction { case } => *case,
        CaseBranch::ExcludedSqrt5 => {
            let reason = "p = 5, e = 2 and Q(sqrt 5) is a subfield of K; no local construction covers this case".into();
            return Ok(finish(report, Verdict::ExcludedCase { reason }));
        }
        CaseBranch::HypothesesNotMet { reason } => {
            return Ok(finish(report, Verdict::HypothesesNotMet { reason: reason.clone() }));
        }
        CaseBranch::Undecided { reason } => {
            return Ok(finish(
                report,
                Verdict::Undecided {
                    reason: reason.clone(),
                    failing: Vec::new(),
                },
            ));
        }
    };

    log(config, &format!("running the {case} local suite"));
    let ctx = LocalContext::new(p, e, f)?;
    for r in local_suite(ctx, case, config)? {
        report.push(r);
    }
    log(config, "running the Delta-module suite");
    for r in global_suite(p, config)? {
        report.push(r);
    }
    let failing = report.failing();
    let verdict = if failing.is_empty() {
        Verdict::NotHilbertSpeiser { case, e, f }
    } else {
        Verdict::Undecided {
            reason: "a witness check failed".into(),
            failing,
        }
    };
    Ok(finish(report, verdict))
}

/// Synthetic local mode: the local witness suite at `(p, e, f)` only.
pub fn check_local(p: u64, e: u32, f: u32, case: LocalCase, config: &CheckerConfig) -> Result<WitnessReport> {
    config.validate()?;
    if case == LocalCase::SeptimicCubic && p != 7 {
        return Err(Error::InvalidInput(format!(
            "the {case} construction needs p = 7, got {p}"
        )));
    }
    let ctx = LocalContext::new(p, e, f).map_err(|err| Error::InvalidInput(err.to_string()))?;
    config.validate_units(p)?;
    let mut report = WitnessReport::new(
        serde_json::to_value(config)?,
        json!({ "mode": "local", "p": p, "e": e, "f": f, "case": case }),
    );
    if !case.admits(p, e) {
        report.push(CheckRecord::with_status(
            "case-consistency",
            "the construction is intended for this (p, e)",
            json!({ "p": p, "e": e, "case": case }),
            Status::Info,
            json!({ "admits": false }),
        ));
    }
    for r in local_suite(ctx, case, config)? {
        report.push(r);
    }
    let all_passed = report.failing().is_empty();
    report.verdict = Some(Verdict::LocalSuite { case, all_passed });
    Ok(report)
}

/// Independent `(field, p)` checks in parallel, in input order.
pub fn check_batch(inputs: &[(String, u64)], config: &CheckerConfig) -> Vec<Result<(Verdict, WitnessReport)>> {
    inputs
        .par_iter()
        .map(|(poly, p)| check(&NumberFieldDescription::parse(poly)?, *p, config))
        .collect()
}
