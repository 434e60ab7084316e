use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ttk::cli::{self, SuiteSel};
use ttk::suite::{with_large_stack, SuiteConfig};

#[derive(Parser)]
#[command(name = "ttk", version, about = "Type theory kernel with explicit substitutions")]
struct Args {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Execute the single directive in FILE.
    Run { file: PathBuf },
    /// Run the generated property suites and print pass tables.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Instances per row.
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Size bound for generated entities.
        #[arg(long = "max-nodes", default_value_t = SuiteConfig::default().max_nodes)]
        max_nodes: usize,
        #[arg(long, default_value = "all")]
        suite: SuiteSel,
    },
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            eprint!("{e}");
            println!("RESULT: error usage");
            return ExitCode::from(2);
        }
    };
    let outcome = match args.cmd {
        Cmd::Run { file } => with_large_stack(move || cli::run_file(&file)),
        Cmd::Selftest {
            seed,
            count,
            max_nodes,
            suite,
        } => cli::selftest(suite, SuiteConfig { seed, count, max_nodes }),
    };
    println!("{outcome}");
    ExitCode::from(outcome.status.exit_code() as u8)
}
