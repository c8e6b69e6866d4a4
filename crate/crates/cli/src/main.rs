mod args;
mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use symdyn::{Error, Limits};

use args::Cli;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceCap { .. } => 3,
        Error::Consistency(_)
        | Error::NoSpecialHit { .. }
        | Error::PieceNotDeterministic { .. }
        | Error::RankDeficiency { .. }
        | Error::CertificateFailed(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits {
        max_level: cli.limits.max_level,
        max_words: cli.limits.max_words,
        max_ambient: cli.limits.max_ambient,
        max_generated: cli.limits.max_generated,
    };
    let report = match commands::run(&cli.command, limits, cli.output.full) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("symdyn: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let mut out = std::io::stdout().lock();
    let written = if cli.output.csv {
        report.write_csv(&mut out)
    } else {
        report.write_json(&mut out)
    };
    if let Err(e) = written.and_then(|_| out.flush()) {
        eprintln!("symdyn: cannot write report: {e}");
        return ExitCode::from(2);
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        eprintln!("symdyn: certificate failed; see report");
        ExitCode::from(1)
    }
}
