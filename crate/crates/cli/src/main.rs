//! Command-line front end: scenario verification plus small calculators
//! for the value group, the truncated Witt rings, and Hahn series.
//!
//! `verify` runs one named scenario, prints one line per claim, and exits
//! 0 exactly when every check ran to completion (assumed hypotheses and
//! explicitly bounded searches count as completed; a failed check does
//! not). With `--json <path>` the full report is also written as stable
//! pretty-printed JSON, byte-identical across runs with the same
//! parameters. The calculators (`oag`, `witt`, `hahn`) evaluate one-off
//! expressions in the textual syntaxes of the core crate and print the
//! canonical rendering of the result.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use valcomp::witt::galois::{witt_to_galois, GaloisRing};
use valcomp::{
    parse_hahn, parse_oag, run_scenario, witt_polys, ClaimStatus, ConvexSubgroup, FFElt,
    FieldElement, FiniteField, HahnSeries, Int, OagElement, ScenarioParams, SquareTest, WittVec,
    SCENARIO_IDS,
};

#[derive(Parser)]
#[command(
    name = "valcomp",
    version,
    about = "Exact verification of composed-valuation counterexamples",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named scenario and print its verification report.
    Verify(VerifyArgs),
    /// Evaluate an expression in the value group: `oag "e1 - e2" divisible-by 2`.
    Oag(OagArgs),
    /// Witt vector arithmetic over the prime field: `witt add 1,2 2,2 --p 3 --len 2`.
    Witt(WittArgs),
    /// Hahn series arithmetic: `hahn mul "1*t^[e1]" "2*t^[e2]"`.
    Hahn(HahnArgs),
    /// List the scenario identifiers `verify` accepts.
    ListScenarios,
}

#[derive(Args)]
struct VerifyArgs {
    /// Scenario identifier (see `list-scenarios`).
    scenario: String,
    /// Residue characteristic.
    #[arg(long, default_value_t = 5)]
    p: u64,
    /// Witt vector length n.
    #[arg(long, default_value_t = 3)]
    witt_len: usize,
    /// Ramification depth m for the tame constructions.
    #[arg(long, default_value_t = 2)]
    ram_depth: u32,
    /// Series expansion budget for Hahn/Witt spot checks.
    #[arg(long, default_value_t = 16)]
    prec: usize,
    /// Height bound for the appendix curve search.
    #[arg(long, default_value_t = 2)]
    search_bound: usize,
    /// Also write the report as pretty-printed JSON to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct OagArgs {
    /// Group element, e.g. `e1 - e2` or `3/p^2 * e0 + e4`.
    expr: String,
    /// One of: divisible-by, divide, add, sub, scale, compare,
    /// archimedean-equiv, quotient.
    op: String,
    /// Operand: an integer for divisible-by/divide/scale/quotient, a second
    /// element for the rest.
    arg: Option<String>,
    /// Residue characteristic (denominators are powers of p).
    #[arg(long, default_value_t = 5)]
    p: u64,
}

#[derive(Args)]
struct WittArgs {
    /// One of: add, mul, sub, neg, times-p, teichmuller, lift.
    op: String,
    /// Vectors as comma-separated components mod p, e.g. `1,2,0`;
    /// `teichmuller` takes a single residue instead.
    args: Vec<String>,
    /// Residue characteristic.
    #[arg(long, default_value_t = 5)]
    p: u64,
    /// Witt vector length n.
    #[arg(long, default_value_t = 3)]
    len: usize,
}

#[derive(Args)]
struct HahnArgs {
    /// One of: add, mul, valuation, leading, is-square, sqrt, inv.
    op: String,
    /// Series in the syntax `3*t^[e1] + 1*t^[2*e2]`, exponents in the
    /// group-element grammar.
    args: Vec<String>,
    /// Residue characteristic.
    #[arg(long, default_value_t = 5)]
    p: u64,
    /// Number of expansion terms for sqrt and inv.
    #[arg(long, default_value_t = 8)]
    terms: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(args) => return run_verify(&args),
        Command::Oag(args) => run_oag(&args),
        Command::Witt(args) => run_witt(&args),
        Command::Hahn(args) => run_hahn(&args),
        Command::ListScenarios => {
            for id in SCENARIO_IDS {
                println!("{id}");
            }
            Ok(())
        }
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run_verify(args: &VerifyArgs) -> ExitCode {
    let params = ScenarioParams {
        p: args.p,
        witt_len: args.witt_len,
        ram_depth: args.ram_depth,
        prec: args.prec,
        search_bound: args.search_bound,
    };
    let report = match run_scenario(&args.scenario, &params) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };

    println!(
        "{}  (p={} witt_len={} ram_depth={} prec={} search_bound={})",
        report.scenario, params.p, params.witt_len, params.ram_depth, params.prec,
        params.search_bound
    );
    let id_width = report.claims.iter().map(|c| c.id.len()).max().unwrap_or(0);
    let mut counts = [0usize; 4];
    for claim in &report.claims {
        let (slot, label) = match claim.status {
            ClaimStatus::Verified => (0, "verified"),
            ClaimStatus::Assumed => (1, "assumed "),
            ClaimStatus::Bounded => (2, "bounded "),
            ClaimStatus::Failed => (3, "FAILED  "),
        };
        counts[slot] += 1;
        println!("  {label}  {:<id_width$}  {}", claim.id, claim.description);
        if claim.status == ClaimStatus::Failed {
            println!("            {}", claim.certificate);
        }
    }
    println!(
        "{} verified, {} assumed, {} bounded, {} failed",
        counts[0], counts[1], counts[2], counts[3]
    );

    if let Some(path) = &args.json {
        if let Err(e) = fs::write(path, report.to_json())
            .with_context(|| format!("writing report to {}", path.display()))
        {
            eprintln!("error: {e:#}");
            return ExitCode::FAILURE;
        }
        println!("report written to {}", path.display());
    }

    if report.all_checks_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn run_oag(args: &OagArgs) -> Result<()> {
    let g = parse_oag(args.p, &args.expr)?;
    let operand = || -> Result<OagElement> {
        let raw = args
            .arg
            .as_deref()
            .with_context(|| format!("`{}` needs a second element", args.op))?;
        Ok(parse_oag(args.p, raw)?)
    };
    let integer = || -> Result<i64> {
        let raw = args
            .arg
            .as_deref()
            .with_context(|| format!("`{}` needs an integer operand", args.op))?;
        raw.parse().with_context(|| format!("bad integer {raw}"))
    };
    match args.op.as_str() {
        "divisible-by" => {
            let n = u64::try_from(integer()?).context("divisor must be positive")?;
            println!("{}", g.divisible_by(n));
        }
        "divide" => {
            let n = u64::try_from(integer()?).context("divisor must be positive")?;
            match g.divide_witness(n) {
                Some(w) => println!("{w}"),
                None => bail!("{g} is not divisible by {n}"),
            }
        }
        "add" => println!("{}", g.add(&operand()?)),
        "sub" => println!("{}", g.sub(&operand()?)),
        "scale" => println!("{}", g.scale(&Int::from(integer()?))),
        "compare" => {
            let sign = match g.lex_cmp(&operand()?) {
                std::cmp::Ordering::Less => "<",
                std::cmp::Ordering::Equal => "=",
                std::cmp::Ordering::Greater => ">",
            };
            println!("{sign}");
        }
        "archimedean-equiv" => println!("{}", g.archimedean_equiv(&operand()?)?),
        "quotient" => {
            let delta = ConvexSubgroup::new(integer()?);
            println!("{}", delta.quotient_map(&g));
        }
        other => bail!("unknown oag operation `{other}`"),
    }
    Ok(())
}

fn run_witt(args: &WittArgs) -> Result<()> {
    let field = Arc::new(FiniteField::prime(args.p)?);
    let polys = witt_polys(args.p, args.len)?;
    let parse_vec = |raw: &str| -> Result<WittVec<FFElt>> {
        let comps: Vec<FFElt> = raw
            .split(',')
            .map(|c| {
                let n: i64 = c
                    .trim()
                    .parse()
                    .with_context(|| format!("bad component {c}"))?;
                Ok(FFElt::from_i64(&field, n))
            })
            .collect::<Result<_>>()?;
        Ok(WittVec::from_components(&polys, comps)?)
    };
    let nth = |i: usize| -> Result<&String> {
        args.args
            .get(i)
            .with_context(|| format!("`{}` needs {} argument(s)", args.op, i + 1))
    };
    let render = |w: &WittVec<FFElt>| {
        let comps: Vec<String> = w.components().iter().map(|c| c.to_string()).collect();
        format!("({})", comps.join(", "))
    };
    match args.op.as_str() {
        "add" => println!("{}", render(&parse_vec(nth(0)?)?.add(&parse_vec(nth(1)?)?))),
        "mul" => println!("{}", render(&parse_vec(nth(0)?)?.mul(&parse_vec(nth(1)?)?))),
        "sub" => println!("{}", render(&parse_vec(nth(0)?)?.sub(&parse_vec(nth(1)?)?))),
        "neg" => println!("{}", render(&parse_vec(nth(0)?)?.neg())),
        "times-p" => println!("{}", render(&parse_vec(nth(0)?)?.times_p_pow(1))),
        "teichmuller" => {
            let n: i64 = nth(0)?.parse().context("teichmuller takes one residue")?;
            let lift = WittVec::teichmuller(&polys, &FFElt::from_i64(&field, n));
            println!("{}", render(&lift));
        }
        "lift" => {
            let ring = GaloisRing::new(&field, args.len)?;
            println!("{}", witt_to_galois(&parse_vec(nth(0)?)?, &ring));
        }
        other => bail!("unknown witt operation `{other}`"),
    }
    Ok(())
}

fn run_hahn(args: &HahnArgs) -> Result<()> {
    let field = Arc::new(FiniteField::prime(args.p)?);
    let nth = |i: usize| -> Result<HahnSeries> {
        let raw = args
            .args
            .get(i)
            .with_context(|| format!("`{}` needs {} series argument(s)", args.op, i + 1))?;
        Ok(parse_hahn(&field, raw)?)
    };
    match args.op.as_str() {
        "add" => println!("{}", nth(0)?.add(&nth(1)?)),
        "mul" => println!("{}", nth(0)?.mul(&nth(1)?)),
        "valuation" => println!("{}", nth(0)?.valuation()?),
        "leading" => {
            let (exp, coeff) = nth(0)?.leading_term()?;
            println!("{coeff}*t^[{exp}]");
        }
        "is-square" => println!("{}", nth(0)?.is_square()?),
        "sqrt" => println!("{}", nth(0)?.sqrt(args.terms)?),
        "inv" => println!("{}", nth(0)?.inv_terms(args.terms)?),
        other => bail!("unknown hahn operation `{other}`"),
    }
    Ok(())
}
