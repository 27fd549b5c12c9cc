use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tck_cli::commands::{self, parse_monomial, BettiSource};
use tck_cli::error::{CliError, EXIT_OK, EXIT_VERIFICATION};
use tck_cli::sweep::{default_workers, range_jobs, read_triples, run_sweep, Filters, Format, Job, SweepSpec};
use tck_core::oracle::{OracleConfig, DEFAULT_COEFF_BOUND};
use tck_core::semigroup::CaseTag;

#[derive(Parser)]
#[command(name = "tck", version, about = "Tangent cones of 3-generated numerical semigroup rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal generators of I* for one semigroup.
    Compute {
        #[arg(num_args = 3, value_names = ["N1", "N2", "N3"], allow_negative_numbers = true)]
        triple: Vec<i64>,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// One CSV or JSONL row per semigroup.
    Sweep {
        /// Every valid triple with n3 up to this bound.
        #[arg(long, conflicts_with = "triples", required_unless_present = "triples")]
        n3_max: Option<i64>,
        /// File with one triple per line.
        #[arg(long)]
        triples: Option<String>,
        #[arg(long = "case")]
        case: Option<CaseTag>,
        #[arg(long)]
        width_min: Option<i64>,
        #[arg(long)]
        width_max: Option<i64>,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        #[arg(long)]
        out: Option<String>,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Buchberger's criterion on the predicted generators.
    VerifyGb {
        #[arg(num_args = 3, value_names = ["N1", "N2", "N3"], allow_negative_numbers = true)]
        triple: Vec<i64>,
        #[arg(long, env = "TCK_DEGREE_CAP")]
        degree_cap: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Betti numbers of in(I*), or of a monomial ideal given as exponent triples.
    Betti {
        #[arg(num_args = 3, value_names = ["N1", "N2", "N3"], required_unless_present = "ideal", allow_negative_numbers = true)]
        triple: Vec<i64>,
        /// Generators as `a,b,c` for x^a y^b z^c.
        #[arg(long, num_args = 1.., conflicts_with = "triple")]
        ideal: Vec<String>,
        /// Cross-check against the Taylor complex.
        #[arg(long)]
        taylor: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct OracleArgs {
    /// Run the lattice oracle and every check.
    #[arg(long)]
    verify: bool,
    /// Starting enumeration bound N.
    #[arg(long, default_value_t = DEFAULT_COEFF_BOUND)]
    oracle_bound: i64,
    /// Keep N fixed instead of raising it to the completeness bound.
    #[arg(long)]
    fixed_bound: bool,
    /// Degree cap D for the oracle comparison; default twice the largest generator degree.
    #[arg(long, env = "TCK_DEGREE_CAP")]
    degree_cap: Option<u64>,
}

impl OracleArgs {
    fn config(&self) -> Option<OracleConfig> {
        self.verify.then(|| OracleConfig {
            coeff_bound: self.oracle_bound,
            degree_cap: self.degree_cap,
            auto_raise: !self.fixed_bound,
            ..OracleConfig::default()
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Jsonl,
}

fn triple(v: &[i64]) -> [i64; 3] {
    [v[0], v[1], v[2]]
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let stdout = io::stdout();
    match cli.command {
        Command::Compute { triple: t, json, oracle } => {
            commands::compute(&mut stdout.lock(), triple(&t), json, oracle.config().as_ref())
        }
        Command::VerifyGb { triple: t, degree_cap, json } => {
            commands::verify_gb(&mut stdout.lock(), triple(&t), degree_cap, json)
        }
        Command::Betti { triple: t, ideal, taylor, json } => {
            let source = if ideal.is_empty() {
                BettiSource::Triple(triple(&t))
            } else {
                BettiSource::Monomials(ideal.iter().map(|m| parse_monomial(m)).collect::<Result<_, _>>()?)
            };
            commands::betti(&mut stdout.lock(), source, taylor, json)
        }
        Command::Sweep {
            n3_max,
            triples,
            case,
            width_min,
            width_max,
            jobs,
            format,
            out,
            oracle,
        } => {
            let all = match (&triples, n3_max) {
                (Some(path), _) => read_triples(path)?,
                (None, Some(n)) => range_jobs(n),
                (None, None) => unreachable!("clap requires one source"),
            };
            let filters = Filters {
                case,
                width_min,
                width_max,
            };
            let mut kept: Vec<Job> = Vec::with_capacity(all.len());
            for job in all {
                if filters.accepts(&job)? {
                    kept.push(job);
                }
            }
            let spec = SweepSpec {
                jobs: kept,
                oracle: oracle.config(),
                workers: jobs.unwrap_or_else(default_workers),
                format: match format {
                    FormatArg::Csv => Format::Csv,
                    FormatArg::Jsonl => Format::Jsonl,
                },
            };
            let summary = match out {
                Some(path) => run_sweep(&spec, &mut BufWriter::new(File::create(path)?))?,
                None => run_sweep(&spec, &mut BufWriter::new(stdout.lock()))?,
            };
            if summary.failed > 0 {
                eprintln!("{} of {} rows failed a check", summary.failed, summary.rows);
                return Ok(EXIT_VERIFICATION);
            }
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let code = match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            let _ = io::stdout().flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
