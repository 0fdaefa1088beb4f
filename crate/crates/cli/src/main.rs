use std::fs;
use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use compenv_cli::experiment::{replay_file, run_experiment, ExperimentArgs};
use compenv_cli::repl::Repl;
use compenv_cli::service::{router, AppState};
use compenv_core::syntax::parse_procedure;
use compenv_core::{open_session, EnvironmentKind, DEFAULT_MAX_STEPS};

#[derive(Debug, Parser)]
#[command(
    name = "compenv",
    version,
    about = "Static and evolving computation environments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a procedure on one input.
    Run {
        #[arg(long, default_value = "et")]
        env: EnvironmentKind,
        #[arg(long = "proc")]
        procedure: PathBuf,
        #[arg(long, default_value = "")]
        input: String,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
        #[arg(long, env = "COMPENV_SEED", default_value_t = 0)]
        seed: u64,
        /// Print every configuration on the path.
        #[arg(long)]
        trace: bool,
    },
    /// Read box queries and runs from stdin against one session.
    Repl {
        #[arg(long, default_value = "ee")]
        env: EnvironmentKind,
        #[arg(long = "proc")]
        procedure: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
        #[arg(long, env = "COMPENV_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Run an experiment and write its artifacts.
    Experiment(ExperimentArgs),
    /// Replay an adversary certificate or a transcript.
    Replay {
        file: PathBuf,
        /// Environment for transcript replay.
        #[arg(long, default_value = "ee")]
        env: EnvironmentKind,
    },
    /// Serve sessions over HTTP.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, env = "COMPENV_SEED", default_value_t = 0)]
        seed: u64,
    },
}

fn read_procedure(path: &PathBuf) -> Result<compenv_core::SyntaxProcedure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_procedure(&text).with_context(|| format!("parsing {}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode> {
    match command {
        Command::Run {
            env,
            procedure,
            input,
            max_steps,
            seed,
            trace,
        } => {
            let m = read_procedure(&procedure)?;
            let mut session = open_session(env, seed);
            let outcome = session.run_procedure(&m, &input, max_steps)?;
            if trace {
                for c in outcome.path().configs() {
                    println!("{c}");
                }
            }
            match outcome.time() {
                Some(t) => println!("{} time={t}", outcome.status()),
                None => println!("{} path={}", outcome.status(), outcome.path().len()),
            }
            Ok(if outcome.is_success() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Repl {
            env,
            procedure,
            max_steps,
            seed,
        } => {
            let procedure = procedure.as_ref().map(read_procedure).transpose()?;
            let mut repl = Repl {
                session: open_session(env, seed),
                procedure,
                max_steps,
            };
            repl.run(io::stdin().lock(), io::stdout().lock())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Experiment(args) => {
            println!("{}", run_experiment(&args)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Replay { file, env } => {
            println!("{}", replay_file(&file, env)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Serve { port, seed } => {
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(async move {
                let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
                eprintln!("listening on http://{}", listener.local_addr()?);
                axum::serve(listener, router(AppState::new(seed))).await?;
                Ok::<_, anyhow::Error>(())
            })?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
