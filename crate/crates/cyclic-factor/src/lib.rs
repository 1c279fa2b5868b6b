//! Command-line front end for `cyclic-factor-core`.
//!
//! Exit codes: 0 on success, 1 on a domain error (for example a prime `N` or
//! a failed check), 2 on a usage error. Data goes to stdout or `--out`;
//! diagnostics go to stderr.

pub mod args;
pub mod commands;
pub mod format;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use args::{Cli, Command};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    Usage(String),
    Domain(String),
}

impl From<cyclic_factor_core::Error> for Failure {
    fn from(e: cyclic_factor_core::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

/// Parses `argv` and runs one subcommand, returning the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let common = cli.command.common().clone();
    let format = common
        .format
        .unwrap_or_else(|| cli.command.default_format());
    let seed = common.seed;

    let result = match cli.command {
        Command::Factor {
            n,
            a,
            register,
            m,
            max_attempts,
            ..
        } => commands::factor(n, a, register, m, max_attempts, seed, format),
        Command::Order { n, a, .. } => commands::order(n, a, format),
        Command::Crt { n, .. } => commands::crt(n, format),
        Command::Cosets { n, a, .. } => commands::cosets(n, a, format),
        Command::Project { n, j, tol, .. } => commands::project_cmd(n, j, tol, seed, format),
        Command::Salc { n, j, .. } => commands::salc_cmd(n, j, format),
        Command::Ring { n, tol, .. } => commands::ring(n, tol, format),
        Command::Oracle { n, a, len, .. } => commands::oracle(n, a, len, format),
        Command::Spectrum { n, a, len, w, .. } => commands::spectrum(n, a, len, w, format),
        Command::Simulate {
            n,
            a,
            register,
            m,
            w,
            ..
        } => commands::simulate(n, a, register, m, w, seed, format),
        Command::GotCheck { n, tol, .. } => commands::got_check(n, tol, format),
    };

    let rendered = match result {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_DOMAIN;
        }
    };

    let written = match &common.out {
        Some(path) => std::fs::write(path, rendered.body.as_bytes())
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout
            .write_all(rendered.body.as_bytes())
            .and_then(|()| stdout.flush())
            .map_err(|e| format!("cannot write output: {e}")),
    };
    if let Err(msg) = written {
        let _ = writeln!(stderr, "error: {msg}");
        return EXIT_DOMAIN;
    }
    match rendered.failure {
        Some(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_DOMAIN
        }
        None => EXIT_OK,
    }
}
