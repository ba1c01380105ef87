use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use hscheck::checker::{check, check_local, emit_report, parse_unit_params, CheckerConfig, Status, WitnessReport};
use hscheck::localorders::LocalCase;
use hscheck::numfield::{NumberFieldDescription, RamificationDatum};
use hscheck::{Error, Result};

/// Witness checker for local obstructions to normal integral bases of
/// tame C_p-extensions of totally real fields.
#[derive(Parser, Debug)]
#[command(name = "hscheck", version)]
struct Cli {
    /// Monic defining polynomial of K, e.g. "x^3+x^2-2*x-1".
    #[arg(long, required_unless_present = "local")]
    field: Option<String>,
    /// The prime p >= 5.
    #[arg(long, required_unless_present = "local")]
    prime: Option<u64>,
    /// p-adic working precision.
    #[arg(long, default_value_t = hscheck::checker::DEFAULT_PRECISION)]
    precision: u32,
    /// Splitting data "e1,f1;e2,f2" overriding the computed one.
    #[arg(long)]
    ramification: Option<String>,
    /// Largest f in the Z/p^f eigenspace sweep.
    #[arg(long, default_value_t = hscheck::checker::DEFAULT_F_BOUND)]
    f_bound: u32,
    /// Unit parameters in k[t]/(t^m), e.g. "1;2;3+t".
    #[arg(long)]
    unit_params: Option<String>,
    /// Synthetic local run "p,e,f,case" with case one of large-degree, deep, p7-cubic.
    #[arg(long, conflicts_with_all = ["field", "prime", "ramification"])]
    local: Option<String>,
    /// Write the JSON report here ("-" for stdout).
    #[arg(long)]
    json_out: Option<PathBuf>,
    #[arg(long)]
    verbose: bool,
}

fn parse_local(s: &str) -> Result<(u64, u32, u32, LocalCase)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [p, e, f, case] = parts.as_slice() else {
        return Err(Error::Parse(format!("expected p,e,f,case in {s:?}")));
    };
    let num = |x: &str| x.parse::<u64>().map_err(|_| Error::Parse(format!("bad integer {x:?}")));
    let small = |x: &str| x.parse::<u32>().map_err(|_| Error::Parse(format!("bad integer {x:?}")));
    Ok((num(p)?, small(e)?, small(f)?, case.parse()?))
}

fn config(cli: &Cli) -> Result<CheckerConfig> {
    let mut c = CheckerConfig {
        precision: cli.precision,
        f_bound: cli.f_bound,
        output: cli.json_out.clone(),
        verbose: cli.verbose,
        ..Default::default()
    };
    if let Some(u) = &cli.unit_params {
        c.unit_params = parse_unit_params(u)?;
    }
    if let Some(r) = &cli.ramification {
        c.ramification = Some(r.parse::<RamificationDatum>()?);
    }
    c.validate()?;
    Ok(c)
}

fn print_summary(report: &WitnessReport) {
    for r in &report.checks {
        let tag = match r.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Assumed => "assumed",
            Status::Info => "info",
        };
        println!("{tag:>8}  {}", r.name);
    }
    if let Some(v) = &report.verdict {
        println!("verdict: {}", serde_json::to_string(v).expect("verdict serializes"));
    }
}

fn run(cli: &Cli) -> Result<i32> {
    let cfg = config(cli)?;
    let report = if let Some(local) = &cli.local {
        let (p, e, f, case) = parse_local(local)?;
        check_local(p, e, f, case, &cfg)?
    } else {
        let field = NumberFieldDescription::parse(cli.field.as_deref().expect("required by clap"))?;
        check(&field, cli.prime.expect("required by clap"), &cfg)?.1
    };
    match cli.json_out.as_deref() {
        Some(path) if path.as_os_str() == "-" => print!("{}", report.to_canonical_json()),
        Some(path) => {
            emit_report(&report, path)?;
            print_summary(&report);
        }
        None => print_summary(&report),
    }
    Ok(report.verdict.as_ref().map_or(3, |v| v.exit_code()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("hscheck: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
