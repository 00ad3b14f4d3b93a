//! Command-line driver for `kkg-core`: matrix literals, the class-partition cache, reports
//! and the verification suite.

pub mod cache;
pub mod cli;
pub mod context;
pub mod literal;
pub mod report;
pub mod verify;

use std::io::Write;

use clap::Parser;

/// Parses `args`, runs the command, prints the report to stdout and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match cli::Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let (result, warnings) = cli::execute(&cli);
    for w in warnings {
        eprintln!("warning: {w}");
    }
    match result {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(report.render(cli.format).as_bytes());
            if report.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
