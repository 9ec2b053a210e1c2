use std::process::ExitCode;

use clap::Parser;
use disord_core::fuzz::run_campaign;
use disord_core::script::Faults;

/// Check that generated scripts print the same order-free output under
/// every storage order.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    /// Number of programs to generate.
    #[arg(long, default_value_t = 1000)]
    programs: usize,
    /// Runs per program: one in insertion order, the rest shuffled.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(2..))]
    trials: u64,
    /// Seed of the first program.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Allow positional extraction from disords (a deliberately broken build).
    #[arg(long, hide = true)]
    inject_positional_extract: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let faults = Faults {
        positional_extract: cli.inject_positional_extract,
    };
    let summary = run_campaign(cli.programs, cli.trials as usize, cli.seed, faults);
    println!("{}", summary.line());
    if summary.failure.is_none() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
