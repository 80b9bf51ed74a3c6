//! Command-line front end for the `cosecnum` crate: regenerates the four
//! published tables, runs the identity suites, evaluates single values and
//! benchmarks the partition method against the power-series oracle.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or configuration
//! error.

pub mod args;
pub mod commands;
pub mod fixtures;
pub mod render;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use cosecnum::genseries::SeriesKind;

use crate::args::{Cli, Command, Format};
use crate::render::Output;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

fn dispatch(cli: &Cli) -> cosecnum::Result<Output> {
    let parallel = cli.global.threads > 1;
    match &cli.command {
        Command::Table1 { k } => Ok(commands::table1(*k)),
        Command::Table2 { k_max, verify } => Ok(if cli.global.format == Format::Text {
            commands::table2_text(*k_max, *verify, parallel)
        } else {
            commands::table2(*k_max, *verify, parallel)
        }),
        Command::Table3 { rhos, ks, verify } => commands::table3(rhos, ks, *verify, parallel),
        Command::Table4 { ell_max, verify } => commands::table4(*ell_max, *verify),
        Command::CoeffClosed { k_max } => commands::coeff_closed(*k_max),
        Command::Cosec(a) => commands::series(SeriesKind::Cosecant, a),
        Command::Secant(a) => commands::series(SeriesKind::Secant, a),
        Command::Verify(a) => commands::verify(a),
        Command::Zeta { m, v, precision } => commands::zeta(*m, *v, *precision),
        Command::Bench { k_max, method, repetitions } => commands::bench(*k_max, *method, *repetitions, parallel),
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_USAGE
                }
            };
            return code;
        }
    };
    if cli.global.threads == 0 {
        let _ = writeln!(stderr, "error: --threads must be at least 1");
        return EXIT_USAGE;
    }
    if cli.global.verbose {
        let _ = writeln!(stderr, "running {:?} with {} thread(s)", cli.command, cli.global.threads);
    }

    let result = if cli.global.threads > 1 {
        match rayon::ThreadPoolBuilder::new().num_threads(cli.global.threads).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(cosecnum::Error::Config(format!("cannot start thread pool: {e}"))),
        }
    } else {
        dispatch(&cli)
    };
    let output = match result {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };

    let body = output.render(cli.global.format);
    if cli.global.format == Format::Csv {
        for n in &output.notes {
            let _ = writeln!(stderr, "{n}");
        }
    }
    let written = match &cli.global.out {
        Some(path) => std::fs::write(path, body.as_bytes()),
        None => stdout.write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    if output.failed {
        EXIT_VERIFY
    } else {
        EXIT_OK
    }
}

/// Convenience for tests: runs with captured stdout and stderr.
pub fn run_captured(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cosecnum").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&err).into_owned())
}
