use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mixkin_cli::config::{schema_text, ScenarioConfig};
use mixkin_cli::{execute, load, scenarios};

/// Two-species BGK / ES-BGK gas mixture relaxation.
#[derive(Parser)]
#[command(name = "mixkin", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file or a built-in scenario.
    Run {
        /// Path to a scenario file, or a built-in scenario name.
        config: String,
        /// Directory for diagnostics.csv, summary.txt and dumps.
        #[arg(long)]
        output_dir: Option<PathBuf>,
        /// Fixed-order reductions (always in effect).
        #[arg(long)]
        deterministic: bool,
        /// Write a distribution dump every K steps.
        #[arg(long, value_name = "K")]
        dump_every: Option<usize>,
    },
    /// List built-in scenarios.
    Scenarios,
    /// Print every scenario key with its default.
    Schema,
}

fn run(source: &str, output_dir: Option<PathBuf>, dump_every: Option<usize>) -> ExitCode {
    let (text, name) = match load(source) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let cfg = match ScenarioConfig::parse(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("parse error: {e}");
            return ExitCode::from(2);
        }
    };
    let out_dir = output_dir
        .or_else(|| cfg.output.directory.clone())
        .unwrap_or_else(|| PathBuf::from("out").join(&name));
    let dump_every = match dump_every {
        Some(0) => {
            eprintln!("--dump-every = 0 violates dump_every >= 1");
            return ExitCode::from(3);
        }
        Some(k) => Some(k),
        None => cfg.output.dump.then_some(cfg.output.dump_every),
    };
    match execute(&cfg, &name, &out_dir, dump_every) {
        Ok(outcome) => {
            let s = &outcome.summary;
            println!(
                "{name}: {} rows to t = {}, gapU {:.3e}, gapT {:.3e}, max drift {:.3e}, output in {}",
                s.rows,
                s.final_time,
                s.final_gap_u,
                s.final_gap_t,
                s.max_drift(),
                out_dir.display()
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            config,
            output_dir,
            deterministic: _,
            dump_every,
        } => run(&config, output_dir, dump_every),
        Command::Scenarios => {
            print!("{}", scenarios::listing());
            ExitCode::SUCCESS
        }
        Command::Schema => {
            print!("{}", schema_text());
            ExitCode::SUCCESS
        }
    }
}
