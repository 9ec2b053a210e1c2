use std::io::{self, BufRead, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use disord_core::script::{run_script, Options, Session, Stream, Transcript};
use disord_core::StorageOrder;

/// Run disord/mvp session scripts.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a script file.
    Run {
        file: PathBuf,
        /// `insertion` or `shuffle:<seed>`.
        #[arg(long, default_value = "insertion")]
        storage_order: StorageOrder,
    },
    /// Read statements from standard input, one per line.
    Repl {
        #[arg(long, default_value = "insertion")]
        storage_order: StorageOrder,
    },
}

fn emit(transcript: &Transcript) -> io::Result<()> {
    let (mut out, mut err) = (io::stdout().lock(), io::stderr().lock());
    for entry in &transcript.entries {
        match entry.stream {
            Stream::Out => writeln!(out, "{}", entry.text)?,
            Stream::Err => {
                out.flush()?;
                writeln!(err, "{}", entry.text)?;
            }
        }
    }
    out.flush()
}

fn run(file: PathBuf, storage_order: StorageOrder) -> io::Result<u8> {
    let source = match std::fs::read_to_string(&file) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("cannot read {}: {e}", file.display());
            return Ok(1);
        }
    };
    let outcome = run_script(&source, Options::with_order(storage_order));
    emit(&outcome.transcript)?;
    Ok(outcome.status as u8)
}

fn repl(storage_order: StorageOrder) -> io::Result<u8> {
    let mut session = Session::new(Options::with_order(storage_order));
    let stdin = io::stdin();
    let interactive = stdin.is_terminal();
    let mut lines = stdin.lock().lines();
    for number in 1.. {
        if interactive {
            print!("> ");
            io::stdout().flush()?;
        }
        let Some(line) = lines.next().transpose()? else { break };
        let result = session.run_line(&line, number);
        emit(&result.transcript)?;
        if result.quit {
            break;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = match cli.command {
        Command::Run { file, storage_order } => run(file, storage_order),
        Command::Repl { storage_order } => repl(storage_order),
    };
    match status {
        Ok(code) => ExitCode::from(code),
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::FAILURE
        }
    }
}
