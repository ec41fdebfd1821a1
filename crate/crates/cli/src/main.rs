//! Exact verification of CSM/SSM class computations from the command line.
//!
//! Exit status: 0 when every check passes, 1 when a mathematical check fails
//! (the report carries a witness), 2 on malformed input or bad flags.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

mod cmds;
mod render;
mod report;

use cmds::{cmd_arrangement, cmd_cells_pn, cmd_constructible, cmd_grassmannian, CommandOutput};

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Table,
    Json,
}

#[derive(Parser)]
#[command(name = "csm", version, about = "exact CSM/SSM class checks at desk scale")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "table")]
    output: OutputMode,

    /// Suppress everything except failures (table mode) or all output (json mode).
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an SSM table on a Grassmannian: builtin fixtures, a file, or the
    /// generative rank-one model.
    Grassmannian {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
        /// Builtin table id: `builtin` (k=2, n=5) or `builtin-31` (k=2, n=6).
        #[arg(long)]
        fixture: Option<String>,
        /// JSON file holding a csm table to convert and check.
        #[arg(long)]
        csm_file: Option<PathBuf>,
        /// JSON file holding an ssm table to check directly.
        #[arg(long)]
        ssm_file: Option<PathBuf>,
    },
    /// Compute and check the cell-class tables of projective space.
    CellsPn {
        #[arg(long)]
        n: u32,
    },
    /// Check a central hyperplane arrangement complement: lattice invariants
    /// and effectivity of the signed SSM class.
    Arrangement {
        /// JSON file describing the arrangement.
        input: PathBuf,
    },
    /// Solve for characteristic-cycle coefficients over a stratified poset.
    Constructible {
        /// JSON file describing the poset (and optionally local Euler data).
        poset: PathBuf,
        /// Constructible function as `name=value,...`, or the literal `zero`.
        #[arg(long)]
        function: Option<String>,
        /// Negate the function on odd-dimensional strata before solving.
        #[arg(long)]
        signed: bool,
        /// Multiplicity assignment `name=mult,...` for a Behrend-style function.
        #[arg(long)]
        behrend: Option<String>,
    },
}

fn print_output(out: &CommandOutput, mode: OutputMode, quiet: bool) {
    match mode {
        OutputMode::Json => {
            if !quiet {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.report).expect("report serializes")
                );
            }
        }
        OutputMode::Table => {
            if !quiet {
                for s in &out.sections {
                    println!("{}", s.trim_end());
                    println!();
                }
            }
            let mut failures = 0usize;
            for c in &out.report.checks {
                if c.pass {
                    if !quiet {
                        println!("check {}: ok", c.name);
                    }
                } else {
                    failures += 1;
                    let witness = c.witness.as_deref().unwrap_or("no witness");
                    println!("check {}: FAIL — {}", c.name, witness);
                }
            }
            if !quiet {
                if failures == 0 {
                    println!("all {} checks passed", out.report.checks.len());
                } else {
                    println!("{failures} of {} checks failed", out.report.checks.len());
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Grassmannian { k, n, fixture, csm_file, ssm_file } => {
            cmd_grassmannian(k, n, fixture, csm_file, ssm_file)
        }
        Command::CellsPn { n } => cmd_cells_pn(n),
        Command::Arrangement { input } => cmd_arrangement(&input),
        Command::Constructible { poset, function, signed, behrend } => {
            cmd_constructible(&poset, function, signed, behrend)
        }
    };
    match result {
        Ok(out) => {
            print_output(&out, cli.output, cli.quiet);
            ExitCode::from(out.report.exit_status)
        }
        Err(cmds::InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
