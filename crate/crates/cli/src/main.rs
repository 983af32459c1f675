//! Command-line front end: anomaly pipelines, pairing checks, crossed
//! structure tools. Exit codes: 0 success, 1 assertion failure, 2 bad input.

mod anomaly;
mod report;
mod tables;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use anomaly::{AnomalyArgs, ReproduceArgs, SptArgs};
use report::ConfigError;
use tables::{CrossedCommand, EtaArgs};

#[derive(Parser, Debug)]
#[command(name = "anomalion", version, about = "Anomaly indices of circuit symmetry actions on qubit lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// 4-cocycle index of a 2d action.
    Anomaly2d(AnomalyArgs),
    /// 3-cocycle index of a chain action.
    Anomaly1d(AnomalyArgs),
    /// Commutator pairing identities on random localized circuits.
    EtaCheck(EtaArgs),
    /// Crossed module, crossed square and 2-crossed module tables.
    #[command(subcommand)]
    Crossed(CrossedCommand),
    /// SPT class of an invariant product state.
    Spt(SptArgs),
    /// The CCZ/X action on a square lattice, checked entry by entry.
    ReproduceCcz(ReproduceArgs),
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    match &cli.command {
        Command::Anomaly2d(a) => anomaly::anomaly2d(a),
        Command::Anomaly1d(a) => anomaly::anomaly1d(a),
        Command::EtaCheck(a) => tables::eta_check(a),
        Command::Crossed(c) => tables::crossed(c),
        Command::Spt(a) => anomaly::spt(a),
        Command::ReproduceCcz(a) => anomaly::reproduce_ccz(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<ConfigError>() => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
