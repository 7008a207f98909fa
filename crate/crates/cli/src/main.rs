use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use linkform::par::Execution;
use linkform_cli::{
    cmd_counterexample_z8, cmd_distinguish, cmd_union, cmd_units_classify, cmd_units_enum,
    cmd_units_theta, cmd_verify, cmd_words_eval, Budgets, CliError, CliResult, DEFAULT_MAX_Q,
    DEFAULT_SEED,
};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "linkform", version, about = "Verify the linking-form algebra and emit certificates")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Maximum number of candidates an enumeration may examine.
    #[arg(long, global = true, env = "LINKFORM_CANDIDATE_CAP", default_value_t = linkform::units::DEFAULT_CANDIDATE_CAP)]
    cap: u128,
    /// Largest accepted prime q.
    #[arg(long, global = true, env = "LINKFORM_MAX_Q", default_value_t = DEFAULT_MAX_Q)]
    max_q: u64,
    /// Disable rayon even when built with the `parallel` feature.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full verification pipeline for the form (2q).
    Verify {
        #[arg(long)]
        q: u64,
        #[arg(long, env = "LINKFORM_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Exponent span D of the surjectivity enumeration.
        #[arg(long, default_value_t = 2)]
        span: u32,
        /// Randomised cases in the Psi/Theta batch.
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[arg(long)]
        json: bool,
    },
    /// Compare the orbit classes of theta(n1) and theta(n2).
    Distinguish {
        #[arg(long)]
        q: u64,
        #[arg(long, allow_hyphen_values = true)]
        n1: i64,
        #[arg(long, allow_hyphen_values = true)]
        n2: i64,
    },
    /// The union of (2q) with itself along theta(n).
    Union {
        #[arg(long)]
        q: u64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Unitary units of (Z/m)[t, t^-1].
    Units {
        #[command(subcommand)]
        command: UnitsCommand,
    },
    /// Words in Z/m * Z.
    Words {
        #[command(subcommand)]
        command: WordsCommand,
    },
    /// Multiplication by 3 on the boundary of (8).
    #[command(name = "counterexample-z8")]
    CounterexampleZ8,
}

#[derive(Subcommand)]
enum UnitsCommand {
    /// Orbit class of a unit modulo 2q, given as polynomial JSON.
    Classify {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        poly: String,
    },
    /// All unitary units supported on [-span, span].
    Enum {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        span: u32,
    },
    /// theta(n) = (q-1)t^n + q mod 2q.
    Theta {
        #[arg(long)]
        q: u64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
}

#[derive(Subcommand)]
enum WordsCommand {
    /// Evaluate phi and Theta on a word such as "x^2 t^-1 x t".
    Eval {
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        m: u64,
    },
}

fn emit(text: &str) -> CliResult<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Check(e.to_string())),
        _ => Ok(()),
    }
}

fn print_json<T: Serialize>(value: &T) -> CliResult<()> {
    let s = serde_json::to_string_pretty(value).map_err(|e| CliError::Check(e.to_string()))?;
    emit(&format!("{s}\n"))
}

fn run(cli: Cli) -> CliResult<()> {
    let budgets = Budgets {
        cap: cli.global.cap,
        max_q: cli.global.max_q,
        exec: if cli.global.sequential {
            Execution::Sequential
        } else {
            Execution::Auto
        },
        ..Budgets::default()
    };
    match cli.command {
        Command::Verify {
            q,
            seed,
            span,
            cases,
            json,
        } => {
            let budgets = Budgets {
                span,
                random_cases: cases,
                ..budgets
            };
            let report = cmd_verify(q, seed, &budgets)?;
            if json {
                print_json(&report)?;
            } else {
                emit(&report.render())?;
            }
            if !report.passed {
                return Err(CliError::Check(format!("failing checks: {}", report.failing().join(", "))));
            }
            Ok(())
        }
        Command::Distinguish { q, n1, n2 } => print_json(&cmd_distinguish(q, n1, n2, &budgets)?),
        Command::Union { q, n } => print_json(&cmd_union(q, n, &budgets)?),
        Command::Units { command } => match command {
            UnitsCommand::Classify { m, poly } => print_json(&cmd_units_classify(m, &poly)?),
            UnitsCommand::Enum { m, span } => print_json(&cmd_units_enum(m, span, &budgets)?),
            UnitsCommand::Theta { q, n } => print_json(&cmd_units_theta(q, n, &budgets)?),
        },
        Command::Words { command } => match command {
            WordsCommand::Eval { word, m } => print_json(&cmd_words_eval(&word, m)?),
        },
        Command::CounterexampleZ8 => print_json(&cmd_counterexample_z8()?),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
