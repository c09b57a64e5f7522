use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use symnorm_cli::{emit, run, ClassSpec, CliError, Command, JobConfig};

#[derive(Parser)]
#[command(
    name = "symnorm",
    version,
    about = "Symmetrisation and exact l1 semi-norms of homology classes"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Run the invariant suite and the semi-norm comparison.
    Verify(JobArgs),
    /// Print both semi-norms and their optimal cycles.
    Norm(JobArgs),
    /// Print the symmetrisation of an explicit chain.
    Symmetrise(JobArgs),
}

#[derive(Args)]
struct JobArgs {
    /// Complex JSON file, or corpus:<name> for a bundled one.
    #[arg(long)]
    complex: String,
    #[arg(long)]
    dim: usize,
    /// Chain JSON file.
    #[arg(long, conflicts_with = "generator")]
    class: Option<PathBuf>,
    /// Index of a homology generator; all generators if neither is given.
    #[arg(long)]
    generator: Option<usize>,
    #[arg(long, default_value_t = symnorm::DEFAULT_DIM_CAP)]
    cap: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn config(cli: Cli) -> JobConfig {
    let (command, args) = match cli.command {
        Sub::Verify(a) => (Command::Verify, a),
        Sub::Norm(a) => (Command::Norm, a),
        Sub::Symmetrise(a) => (Command::Symmetrise, a),
    };
    let class = match (args.class, args.generator) {
        (Some(p), _) => ClassSpec::Chain(p),
        (None, Some(k)) => ClassSpec::Generator(k),
        (None, None) => ClassSpec::AllGenerators,
    };
    let mut cfg = JobConfig::new(command, args.complex, args.dim)
        .with_class(class)
        .with_cap(args.cap);
    cfg.out = args.out;
    cfg
}

fn main() -> ExitCode {
    let cfg = config(Cli::parse());
    let result = run(&cfg).and_then(|text| emit(&cfg, &text));
    match result {
        Ok(stdout) => {
            if let Some(text) = stdout {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let CliError::Verification { report, .. } = &e {
                if let Ok(Some(text)) = emit(&cfg, report) {
                    print!("{text}");
                }
            }
            eprintln!("symnorm: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
