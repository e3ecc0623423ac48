//! Command-line front end for `carnot-core`.
//!
//! [`run`] does all the work and returns the exit code and output, so the
//! binary is a thin wrapper and the tests drive the same code path.

mod args;
mod commands;
pub mod report;

use std::io::Read;

use clap::Parser;

pub use args::Format;
pub use report::Report;

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(code: i32, message: String) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr: message,
        }
    }
}

/// A failure that ends the command before an answer is computed.
#[derive(Debug)]
pub(crate) enum Failure {
    Usage(String),
    Data(String),
}

/// Parses `argv` (program name first) and runs the command. `stdin` is read
/// only when the algebra source is `-`.
pub fn run<I, S>(argv: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::error(EXIT_USAGE, text)
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match commands::dispatch(cli.command, stdin) {
        Ok(out) => out,
        Err(Failure::Usage(m)) => Outcome::error(EXIT_USAGE, format!("error: {m}\n")),
        Err(Failure::Data(m)) => Outcome::error(EXIT_DATA, format!("error: {m}\n")),
    }
}
