use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use irredcert::certificate::{auto_check, CheckOptions, DEFAULT_DISCOVERY_BOUND};
use irredcert::criteria::Verdict;
use irredcert::families;
use irredcert::oracle::{kronecker_factorize, Factorization, Limits};
use irredcert::poly::{parse_poly, IntPoly};
use irredcert::polygon::build_polygon;
use irredcert::selftest::{run_all, DEFAULT_SEED};
use irredcert::svg::render_polygon;
use irredcert::valuation::{candidate_primes, DiscoveryMode, Prime};

#[derive(Parser)]
#[command(
    name = "irredcert",
    version,
    about = "Newton-polygon irreducibility certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify irreducibility from Newton polygons at several primes.
    Check(PolyArgs),
    /// Print or draw the Newton polygon at each prime.
    Polygon(PolyArgs),
    /// Factor with Kronecker's method (exit 0 factored, 1 irreducible, 3 over budget).
    Oracle(PolyArgs),
    /// Print the coefficient list of an example family.
    Generate(GenerateArgs),
    /// Run the acceptance checks.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args)]
struct PolyArgs {
    /// Polynomial as "a0,a1,..." or an expression like "x^2+2x+2".
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    poly: Option<String>,
    /// Read the polynomial from a file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Comma-separated primes.
    #[arg(long, value_delimiter = ',')]
    primes: Vec<u64>,
    /// Add primes dividing the coefficients up to --bound.
    #[arg(long)]
    auto_primes: bool,
    #[arg(long, default_value_t = DEFAULT_DISCOVERY_BOUND)]
    bound: u64,
    #[arg(long, value_enum, default_value_t = Mode::Endpoints)]
    mode: Mode,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=8))]
    family: u8,
    #[arg(short, long)]
    p: u64,
    #[arg(short, long)]
    q: u64,
    /// Exponent for families 3 and 4.
    #[arg(short, long)]
    m: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Endpoints,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Svg,
}

const EXIT_USAGE: u8 = 2;

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check(args) => check(&args),
        Command::Polygon(args) => polygon(&args),
        Command::Oracle(args) => oracle(&args),
        Command::Generate(args) => generate(&args),
        Command::Selftest { seed } => Ok(selftest(seed)),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn read_poly(args: &PolyArgs) -> Result<IntPoly, Failure> {
    let text = match (&args.poly, &args.file) {
        (Some(text), _) => text.clone(),
        (None, Some(path)) => fs::read_to_string(path)
            .map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))?,
        (None, None) => return Err(Failure("one of --poly or --file is required".into())),
    };
    Ok(parse_poly(text.trim())?)
}

fn explicit_primes(args: &PolyArgs) -> Result<Vec<Prime>, Failure> {
    Ok(args
        .primes
        .iter()
        .map(|&p| Prime::new(p))
        .collect::<Result<Vec<_>, _>>()?)
}

fn discovery_mode(args: &PolyArgs) -> DiscoveryMode {
    match args.mode {
        Mode::Endpoints => DiscoveryMode::Endpoints,
        Mode::All => DiscoveryMode::AllCoeffs,
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn check(args: &PolyArgs) -> Result<u8, Failure> {
    if args.format == Format::Svg {
        return Err(Failure("check supports --format text or json".into()));
    }
    let f = read_poly(args)?;
    let opts = CheckOptions {
        primes: explicit_primes(args)?,
        discover: args.auto_primes,
        bound: args.bound,
        mode: discovery_mode(args),
    };
    let cert = auto_check(&f, &opts);
    let text = match args.format {
        Format::Json => cert.to_json() + "\n",
        _ => cert.to_text(),
    };
    emit(args.out.as_deref(), &text)?;
    Ok(match cert.verdict {
        Verdict::Irreducible => 0,
        Verdict::Inconclusive => 1,
    })
}

fn polygon(args: &PolyArgs) -> Result<u8, Failure> {
    let f = read_poly(args)?;
    let mut primes = explicit_primes(args)?;
    if args.auto_primes {
        primes.extend(candidate_primes(&f, args.bound, discovery_mode(args))?);
    }
    primes.sort();
    primes.dedup();
    if primes.is_empty() {
        return Err(Failure("no primes: pass --primes or --auto-primes".into()));
    }
    let polygons = primes
        .iter()
        .map(|&p| build_polygon(&f, p))
        .collect::<Result<Vec<_>, _>>()?;
    match args.format {
        Format::Text => {
            let text: Vec<String> = polygons.iter().map(|poly| poly.to_text()).collect();
            emit(args.out.as_deref(), &text.join("\n"))?;
        }
        Format::Json => {
            let json = serde_json::to_string_pretty(&polygons)?;
            emit(args.out.as_deref(), &(json + "\n"))?;
        }
        Format::Svg => match &args.out {
            Some(path) if polygons.len() > 1 => {
                for poly in &polygons {
                    let target = per_prime_path(path, poly.prime());
                    emit(Some(&target), &render_polygon(&f, poly))?;
                }
            }
            out => {
                let svgs: Vec<String> = polygons
                    .iter()
                    .map(|poly| render_polygon(&f, poly))
                    .collect();
                emit(out.as_deref(), &svgs.join(""))?;
            }
        },
    }
    Ok(0)
}

/// `plot.svg` at p = 3 becomes `plot-p3.svg`.
fn per_prime_path(path: &Path, p: Prime) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}-p{p}.{}", ext.to_string_lossy()),
        None => format!("{stem}-p{p}"),
    };
    path.with_file_name(name)
}

fn oracle(args: &PolyArgs) -> Result<u8, Failure> {
    let f = read_poly(args)?;
    let result = kronecker_factorize(&f, &Limits::default());
    emit(args.out.as_deref(), &format!("{result}\n"))?;
    Ok(match result {
        Factorization::Factored { .. } => 0,
        Factorization::Irreducible => 1,
        Factorization::LimitExceeded(_) => 3,
    })
}

fn generate(args: &GenerateArgs) -> Result<u8, Failure> {
    let f = families::generate(
        args.family,
        Prime::new(args.p)?,
        Prime::new(args.q)?,
        args.m,
    )?;
    println!("{}", f.to_coeff_list());
    Ok(0)
}

fn selftest(seed: u64) -> u8 {
    let outcomes = run_all(seed);
    for o in &outcomes {
        println!("{o}");
        eprintln!("criterion {} took {:.3}s", o.id, o.elapsed.as_secs_f64());
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} passed, {failed} failed", outcomes.len() - failed);
    u8::from(failed > 0)
}
