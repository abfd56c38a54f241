//! `tansec`: secant defect tables, Hilbert functions of schemes, and the
//! verification suites.

mod output;
mod scheme_json;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tansec_core::hilbert::linsys_dim;
use tansec_core::secant::defect_table;
use tansec_core::suite::{run_suite, SuiteConfig, SUITES};
use tansec_core::{Degree, MonteCarlo, PrimeField, DEFAULT_PRIME};

use output::Sink;

#[derive(Debug, Parser)]
#[command(name = "tansec", version, about = "Secant dimensions of tangential Segre-Veronese surfaces over prime fields")]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Prime modulus of the coefficient field.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME)]
    prime: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random samples per Monte Carlo cell.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    /// Largest degree used by the ideal computations.
    #[arg(long, global = true, default_value_t = 12)]
    degree_bound: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Terracini ranks for every cell b <= a <= amax, b <= bmax, s <= s2.
    SecantTable {
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        amax: u32,
        /// Defaults to amax.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        bmax: Option<u32>,
    },
    /// Dimension of the linear system through a scheme read from JSON.
    Hf {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long, conflicts_with = "bidegree", required_unless_present = "bidegree")]
        degree: Option<u32>,
        /// Bidegree as `a,b`.
        #[arg(long, value_parser = parse_bidegree)]
        bidegree: Option<(u32, u32)>,
    },
    /// Run a verification suite; exits 0 iff every check passes.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        target: String,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        amax: Option<u32>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        bmax: Option<u32>,
        /// Random instances for the sampled suites.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        samples: Option<u64>,
    },
}

fn parse_bidegree(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected a,b but got {s:?}"))?;
    let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

/// Validated global settings.
struct RunConfig {
    mc: MonteCarlo,
    degree_bound: u32,
    format: Format,
    out: Option<PathBuf>,
}

impl RunConfig {
    fn new(args: RunArgs) -> Result<Self, String> {
        let field = PrimeField::new(args.prime).map_err(|e| e.to_string())?;
        if args.prime <= 2 * args.degree_bound as u64 {
            return Err(format!("the prime {} must exceed twice the degree bound {}", args.prime, args.degree_bound));
        }
        Ok(RunConfig {
            mc: MonteCarlo::new(field, args.seed, args.trials as usize),
            degree_bound: args.degree_bound,
            format: args.format,
            out: args.out,
        })
    }
}

const EXIT_OK: u8 = 0;
const EXIT_FAILURE: u8 = 1;
const EXIT_ANOMALY: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_FAILURE } else { EXIT_OK });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    let cfg = RunConfig::new(cli.run)?;
    let mut sink = Sink::open(cfg.out.as_deref(), cfg.format)?;
    let code = match cli.command {
        Command::SecantTable { amax, bmax } => {
            let rows = defect_table(&cfg.mc, amax, bmax.unwrap_or(amax));
            sink.defect_rows(&rows, cfg.mc.field.modulus())?;
            if rows.iter().all(|r| r.defect == 0) {
                EXIT_OK
            } else {
                EXIT_ANOMALY
            }
        }
        Command::Hf { scheme, degree, bidegree } => {
            let text = std::fs::read_to_string(&scheme).map_err(|e| format!("{}: {e}", scheme.display()))?;
            let x = scheme_json::parse_scheme(&text, &cfg.mc.field, cfg.mc.seed)?;
            let degree = match (degree, bidegree) {
                (Some(d), _) => Degree::Plane(d),
                (None, Some((a, b))) => Degree::Biprojective(a, b),
                (None, None) => unreachable!("clap requires one of them"),
            };
            let report = linsys_dim(&cfg.mc.field, &x, degree).map_err(|e| e.to_string())?;
            sink.linsys(&report, &cfg.mc)?;
            EXIT_OK
        }
        Command::Verify { target, amax, bmax, samples } => {
            let suite_cfg = SuiteConfig {
                mc: cfg.mc,
                degree_bound: cfg.degree_bound,
                amax,
                bmax,
                samples: samples.map(|n| n as usize),
            };
            let report = run_suite(&target, &suite_cfg).map_err(|e| e.to_string())?;
            sink.suite(&report)?;
            if report.passed {
                EXIT_OK
            } else {
                EXIT_ANOMALY
            }
        }
    };
    sink.finish()?;
    Ok(code)
}
