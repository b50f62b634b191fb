use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use gck_cli::{parse_scenario, run, Command};
use serde_json::json;

#[derive(Parser)]
#[command(name = "gck", version, about = "Exact checks for generalized complex structures and their submanifolds")]
struct Cli {
    #[arg(value_enum)]
    command: Command,

    /// Scenario file (JSON)
    #[arg(long)]
    scenario: PathBuf,

    /// Seed for sampled test data
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// JSON report (default)
    #[arg(long, conflicts_with = "text")]
    json: bool,

    /// Human-readable report
    #[arg(long)]
    text: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = match std::fs::read_to_string(&cli.scenario) {
        Ok(t) => t,
        Err(e) => return input_error(&cli, "$", &format!("cannot read {}: {e}", cli.scenario.display()), "io"),
    };
    let outcome = parse_scenario(&text).and_then(|sc| run(cli.command, &sc, cli.seed));
    match outcome {
        Ok(report) => {
            if cli.text {
                print!("{}", report.to_text());
            } else {
                println!("{}", report.to_json());
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            let kind = match e {
                gck_cli::ScenarioError::Syntax { .. } => "syntax",
                gck_cli::ScenarioError::DimensionMismatch { .. } => "dimension_mismatch",
                gck_cli::ScenarioError::InvariantViolation { .. } => "invariant_violation",
            };
            input_error(&cli, e.path(), &e.to_string(), kind)
        }
    }
}

fn input_error(cli: &Cli, path: &str, message: &str, kind: &str) -> ExitCode {
    if cli.text {
        eprintln!("error: {message}");
    } else {
        let body = json!({ "command": cli.command.name(), "status": "error", "error": { "kind": kind, "path": path, "message": message } });
        println!("{}", serde_json::to_string_pretty(&body).unwrap());
    }
    ExitCode::from(2)
}
