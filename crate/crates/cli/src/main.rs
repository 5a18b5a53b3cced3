mod commands;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::Exit;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "clarith", version, about = "Check proofs, play games and audit boundclass triples")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,

    /// Worker threads for independent checks and matches (0 picks one per core).
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,

    /// Blind quantifiers are searched below this bound.
    #[arg(long, global = true, default_value_t = 4096)]
    pub blind_bound: u64,

    /// Closure nodes per boundclass membership query (default 500).
    #[arg(long, global = true)]
    pub budget: Option<usize>,

    /// Accept unproved stability as an obligation instead of rejecting.
    #[arg(long, global = true)]
    pub permissive: bool,

    /// Seed for random environments without an explicit seed.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check `.cl12` proofs, or `.cla11` proofs against a theory file.
    Check {
        #[arg(required = true)]
        files: Vec<String>,
        /// Theory parameters (`.cfg`) for `.cla11` proofs.
        #[arg(long)]
        theory: Option<String>,
        /// Require a checked CL12 proof attached to every LC line.
        #[arg(long)]
        extended: bool,
    },
    /// Play an agent against an environment on a sentence (or a file holding one).
    Play {
        game: String,
        #[arg(long)]
        agent: String,
        #[arg(long, default_value = "silent")]
        env: String,
        #[arg(long, default_value_t = 256)]
        max_moves: usize,
        /// Number of random matches, with seeds counting up from the environment's.
        #[arg(long, default_value_t = 1)]
        runs: u64,
    },
    /// Audit a triple (`B3,B1^1,B5`) or the triple and axioms of a theory file.
    Regularity {
        triple: String,
        #[arg(long, value_delimiter = ',')]
        grid: Option<Vec<u64>>,
        /// Truncation index for infinite families.
        #[arg(long, default_value_t = 3)]
        index: usize,
    },
    /// Audit every listed standard triple.
    TableDds {
        #[arg(long, value_delimiter = ',')]
        grid: Option<Vec<u64>>,
        #[arg(long, default_value_t = 3)]
        index: usize,
    },
    /// Evaluate an elementary sentence.
    Eval { formula: String },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(Exit::Usage as u8) } else { ExitCode::SUCCESS };
        }
    };
    if cli.jobs != 1 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    let result = commands::run(&cli);
    match result {
        Ok(r) => {
            print!("{}", r.render(cli.format));
            ExitCode::from(r.exit as u8)
        }
        Err(e) => {
            eprint!("{}", e.render(cli.format));
            ExitCode::from(e.exit as u8)
        }
    }
}
