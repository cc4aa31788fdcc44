mod commands;
mod decode;
mod error;
mod simulate;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use error::CliError;

/// Index codes for receivers with erroneous side information.
#[derive(Debug, Parser)]
#[command(name = "icsie", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check an instance file.
    Validate { instance: PathBuf },
    /// Find a shortest valid generator.
    Search {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Brute)]
        method: Method,
        /// Write the generator document here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the broadcast y = xG.
    Encode {
        instance: PathBuf,
        generator: PathBuf,
        /// Message, comma-separated.
        #[arg(long)]
        x: String,
    },
    /// Run syndrome decoding at the receivers.
    Decode(decode::DecodeArgs),
    /// Report cycle sets, independence numbers and length bounds.
    Analyze { instance: PathBuf },
    /// Simulate broadcasts with injected side errors.
    Simulate(simulate::SimulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Minrank,
    Brute,
    Both,
}

/// What a command prints: text for people, JSON for scripts, and an exit code.
pub struct Outcome {
    pub text: String,
    pub json: serde_json::Value,
    pub code: u8,
}

impl Outcome {
    pub fn ok(text: String, json: serde_json::Value) -> Self {
        Outcome { text, json, code: 0 }
    }
}

fn run(cli: &Cli) -> error::Result<Outcome> {
    match &cli.command {
        Command::Validate { instance } => commands::validate(instance),
        Command::Search { instance, method, out } => commands::search(instance, *method, out.as_deref()),
        Command::Encode { instance, generator, x } => commands::encode(instance, generator, x),
        Command::Decode(args) => decode::run(args),
        Command::Analyze { instance } => commands::analyze(instance),
        Command::Simulate(args) => simulate::run(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("json values serialize")
                );
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => report(cli.json, &e),
    }
}

fn report(as_json: bool, e: &CliError) -> ExitCode {
    let code = e.exit_code();
    if as_json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({ "error": e.to_string(), "exit_code": code })).unwrap()
        );
    } else {
        eprintln!("error: {e}");
    }
    ExitCode::from(code)
}
