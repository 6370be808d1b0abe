use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use equirr::{execute, parse_schur_flags, Command, Flags};

/// Decomposes group representations on Riemann-Roch spaces of G-curves.
#[derive(Parser, Debug)]
#[command(name = "equirr", version)]
struct Cli {
    command: Command,
    /// Job file (JSON); for `examples`, the directory to write into.
    job: PathBuf,
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
    /// Schur index override for a rational orbit, as `j=m` (orbits numbered from 1).
    #[arg(long, value_name = "J=M")]
    schur: Vec<String>,
    /// Treat the divisor as nonspecial even when the degree bound does not guarantee it.
    #[arg(long)]
    assume_nonspecial: bool,
    /// Seed for the randomized checks of `verify`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest group order accepted.
    #[arg(long, default_value_t = equirr_core::group::DEFAULT_MAX_ORDER)]
    max_order: usize,
    /// Skip the generating-vector search in `verify`.
    #[arg(long)]
    skip_realizability: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    let result = parse_schur_flags(&cli.schur).and_then(|schur| {
        let flags = Flags {
            json: cli.json,
            schur,
            assume_nonspecial: cli.assume_nonspecial,
            seed: cli.seed,
            max_order: cli.max_order,
            skip_realizability: cli.skip_realizability,
        };
        execute(cli.command, &cli.job, &flags).map(|out| (out, flags.json))
    });
    match result {
        Ok((out, json)) => {
            print!("{}", out.render(json));
            ExitCode::from(out.status as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
