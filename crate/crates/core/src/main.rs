use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::ToPrimitive;

use padic_trunk::analysis::{classify_quadratic, poincare_series};
use padic_trunk::config::Limits;
use padic_trunk::error::{Error, Result};
use padic_trunk::parser::{parse, print};
use padic_trunk::poly::Polynomial;
use padic_trunk::report::{self, CommandEcho, CountPayload, OutputDocument, Payload};
use padic_trunk::solver::{ball_decomposition, crt_count, crt_decompose, crt_solve_with};
use padic_trunk::trunk::{build_trunk_with, level_for_exponent};
use padic_trunk::{bench, Trunk};

/// Solve polynomial congruences modulo prime powers and composite moduli
/// through the trunk of the polynomial.
#[derive(Parser)]
#[command(name = "padic-trunk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and print the trunk of P at p.
    Trunk(TrunkArgs),
    /// Solve P(x) = 0 modulo p^e or n.
    Solve(SolveArgs),
    /// Classify the trunk of a quadratic over an odd prime.
    Classify(ClassifyArgs),
    /// Poincare series S(u) = sum N_e u^e / p^e.
    Poincare(PoincareArgs),
    /// Time trunk counting against brute force.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args)]
struct PolyArg {
    /// Polynomial in X, e.g. "(X^2+3)*(X^2+3X+9)".
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
}

#[derive(Args)]
struct TrunkArgs {
    #[command(flatten)]
    poly: PolyArg,
    #[arg(long)]
    prime: String,
    #[arg(long, default_value_t = 10)]
    max_level: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// With --format dot, draw the whole solution tree up to this level.
    #[arg(long, value_name = "E")]
    with_fans: Option<u32>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    poly: PolyArg,
    #[arg(long, requires = "exp", conflicts_with = "modulus")]
    prime: Option<String>,
    #[arg(long, requires = "prime")]
    exp: Option<u32>,
    #[arg(long, required_unless_present = "prime")]
    modulus: Option<String>,
    /// Print only the number of solutions.
    #[arg(long)]
    count_only: bool,
    /// Print the disjoint-ball decomposition.
    #[arg(long)]
    balls: bool,
    /// Trunk depth; defaults to the exponent.
    #[arg(long)]
    max_level: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    poly: PolyArg,
    #[arg(long)]
    prime: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct PoincareArgs {
    #[command(flatten)]
    poly: PolyArg,
    #[arg(long)]
    prime: String,
    /// Number of series coefficients to list.
    #[arg(long, default_value_t = 10)]
    horizon: u32,
    #[arg(long, default_value_t = 12)]
    max_level: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value = "default")]
    suite: String,
    #[arg(long, default_value_t = 10)]
    max_exp: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn parse_prime(raw: &str, limits: &Limits) -> Result<u64> {
    let p: BigUint = raw.trim().parse().map_err(|_| {
        Error::InvalidArgument(format!("prime must be a positive integer, got '{raw}'"))
    })?;
    p.to_u64()
        .filter(|&q| q <= limits.max_prime)
        .ok_or_else(|| Error::PrimeTooLarge {
            p: p.to_string(),
            limit: limits.max_prime,
        })
}

fn parse_poly(arg: &PolyArg) -> Result<Polynomial> {
    Ok(parse(&arg.poly)?)
}

fn echo(name: &str, poly_text: &str, poly: &Polynomial) -> CommandEcho {
    CommandEcho {
        name: name.to_string(),
        poly: Some(poly_text.to_string()),
        canonical: Some(print(poly)),
        ..CommandEcho::default()
    }
}

fn no_dot(format: Format) -> Result<()> {
    if format == Format::Dot {
        return Err(Error::InvalidArgument(
            "--format dot is only available for trunk".into(),
        ));
    }
    Ok(())
}

fn render(doc: &OutputDocument, format: Format) -> String {
    match format {
        Format::Json => doc.to_json(),
        _ => doc.to_text(),
    }
}

fn cmd_trunk(args: &TrunkArgs, limits: &Limits) -> Result<String> {
    let poly = parse_poly(&args.poly)?;
    let p = parse_prime(&args.prime, limits)?;
    let trunk: Trunk = build_trunk_with(&poly, p, args.max_level, limits)?;
    if args.with_fans.is_some() && args.format != Format::Dot {
        return Err(Error::InvalidArgument(
            "--with-fans requires --format dot".into(),
        ));
    }
    if args.format == Format::Dot {
        return report::trunk_dot(&trunk, args.with_fans, limits);
    }
    let mut command = echo("trunk", &args.poly.poly, &poly);
    command.p = Some(p.to_string());
    command.max_level = Some(args.max_level);
    let doc = OutputDocument::new(command, Payload::Trunk(report::trunk_payload(&trunk)));
    Ok(render(&doc, args.format))
}

fn cmd_solve(args: &SolveArgs, limits: &Limits) -> Result<String> {
    no_dot(args.format)?;
    let poly = parse_poly(&args.poly)?;
    let mut command = echo("solve", &args.poly.poly, &poly);
    let payload = match (&args.prime, &args.modulus) {
        (Some(prime), _) => {
            let p = parse_prime(prime, limits)?;
            let e = args.exp.expect("clap requires --exp with --prime");
            let max_level = args.max_level.unwrap_or(level_for_exponent(e));
            command.p = Some(p.to_string());
            command.e = Some(e);
            command.max_level = Some(max_level);
            let trunk = build_trunk_with(&poly, p, max_level, limits)?;
            let set = ball_decomposition(&trunk, e)?;
            if args.count_only {
                Payload::Count(CountPayload {
                    modulus: set.modulus().to_string(),
                    count: set.count.to_string(),
                })
            } else {
                let listing = if args.balls {
                    None
                } else {
                    Some(set.enumerate(limits.enumeration_budget)?)
                };
                Payload::Solutions(report::prime_power_payload(
                    &set,
                    listing.as_deref(),
                    args.balls,
                ))
            }
        }
        (None, Some(raw)) => {
            let n: BigUint = raw.trim().parse().map_err(|_| {
                Error::InvalidArgument(format!("modulus must be a positive integer, got '{raw}'"))
            })?;
            command.n = Some(n.to_string());
            if args.count_only {
                Payload::Count(CountPayload {
                    modulus: n.to_string(),
                    count: crt_count(&poly, &n, limits)?.to_string(),
                })
            } else if args.balls {
                let components = crt_decompose(&poly, &n, limits)?;
                Payload::Solutions(report::composite_payload(&n, &components, None, true))
            } else {
                let crt = crt_solve_with(&poly, &n, limits)?;
                Payload::Solutions(report::composite_payload(
                    &n,
                    &crt.components,
                    Some(&crt.solutions),
                    false,
                ))
            }
        }
        (None, None) => unreachable!("clap requires --prime or --modulus"),
    };
    Ok(render(&OutputDocument::new(command, payload), args.format))
}

fn cmd_classify(args: &ClassifyArgs, limits: &Limits) -> Result<String> {
    no_dot(args.format)?;
    let poly = parse_poly(&args.poly)?;
    let p = parse_prime(&args.prime, limits)?;
    let class = classify_quadratic(&poly, p)?;
    let mut command = echo("classify", &args.poly.poly, &poly);
    command.p = Some(p.to_string());
    let doc = OutputDocument::new(
        command,
        Payload::Classification(report::classification_payload(&class)),
    );
    Ok(render(&doc, args.format))
}

fn cmd_poincare(args: &PoincareArgs, limits: &Limits) -> Result<String> {
    no_dot(args.format)?;
    let poly = parse_poly(&args.poly)?;
    let p = parse_prime(&args.prime, limits)?;
    let trunk = build_trunk_with(&poly, p, args.max_level, limits)?;
    let series = poincare_series(&trunk);
    let mut command = echo("poincare", &args.poly.poly, &poly);
    command.p = Some(p.to_string());
    command.max_level = Some(args.max_level);
    command.horizon = Some(args.horizon);
    let payload = report::series_payload(&series, args.horizon as usize);
    Ok(render(
        &OutputDocument::new(command, Payload::Series(payload)),
        args.format,
    ))
}

fn cmd_bench(args: &BenchArgs, limits: &Limits) -> Result<String> {
    no_dot(args.format)?;
    let payload = bench::run(&args.suite, args.max_exp, limits)?;
    let command = CommandEcho {
        name: "bench".into(),
        suite: Some(args.suite.clone()),
        e: Some(args.max_exp),
        ..CommandEcho::default()
    };
    Ok(render(
        &OutputDocument::new(command, Payload::Benchmark(payload)),
        args.format,
    ))
}

fn run(cli: &Cli) -> Result<String> {
    let limits = Limits::from_env().map_err(Error::InvalidArgument)?;
    match &cli.command {
        Command::Trunk(a) => cmd_trunk(a, &limits),
        Command::Solve(a) => cmd_solve(a, &limits),
        Command::Classify(a) => cmd_classify(a, &limits),
        Command::Poincare(a) => cmd_poincare(a, &limits),
        Command::Bench(a) => cmd_bench(a, &limits),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
