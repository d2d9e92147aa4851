//! `knotforge`: knot invariants, family verification and 4-manifold checks
//! from the command line.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use knotforge::skein::DEFAULT_BUDGET;

use commands::{CliError, Context};

#[derive(Parser, Debug)]
#[command(name = "knotforge", version, about = "Exact knot invariants and 4-manifold arithmetic")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Omit the timestamp line.
    #[arg(long, global = true)]
    no_timestamp: bool,
    /// Largest crossing number the skein engine will accept.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Knot table file (defaults to the data directory's knot_table.pd).
    #[arg(long, global = true)]
    table: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Polynomials and surgery invariants of a knot.
    Invariants {
        #[arg(long, conflicts_with = "name", required_unless_present = "name")]
        pd: Option<PathBuf>,
        #[arg(long)]
        name: Option<String>,
    },
    /// Check the knot family identities and distinguish its members.
    VerifyPaper {
        #[arg(long, default_value_t = 10)]
        nmax: i64,
    },
    /// Compare the surgery invariants of two table knots.
    Distinguish { first: String, second: String },
    /// Fold-map existence conditions for a closed 4-manifold.
    Saeki {
        #[arg(long)]
        config: PathBuf,
    },
    /// Total defect of the stable framing induced on the boundary.
    Defect {
        #[arg(long)]
        config: PathBuf,
    },
    /// sg^k genus invariants of map catalogs.
    Sg {
        #[arg(long)]
        catalog: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Thurston-Bennequin number of a front.
    Tb {
        #[arg(long, allow_negative_numbers = true)]
        writhe: i64,
        #[arg(long)]
        cusps: u32,
    },
}

fn run(cli: Cli) -> Result<knotforge::RunReport, CliError> {
    let ctx = Context::new(cli.global.budget, cli.global.table);
    match cli.command {
        Command::Invariants { pd, name } => ctx.invariants(pd.as_deref(), name.as_deref()),
        Command::VerifyPaper { nmax } => ctx.verify_paper(nmax),
        Command::Distinguish { first, second } => ctx.distinguish(&first, &second),
        Command::Saeki { config } => ctx.saeki(&config),
        Command::Defect { config } => ctx.defect(&config),
        Command::Sg { catalog, k } => ctx.sg(&catalog, k),
        Command::Tb { writhe, cusps } => ctx.tb(writhe, cusps),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (json, stamp) = (cli.global.json, !cli.global.no_timestamp);
    match run(cli) {
        Ok(mut report) => {
            if stamp {
                report.timestamp = Some(chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
            }
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                for c in report.failed_checks() {
                    eprintln!("failed: {}", c.name);
                }
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
