//! Batch front end for `winding`: simulate ensembles into sample
//! files, validate them against the asymptotic laws into `report.json`,
//! and print analytic densities and oracle values.
//!
//! All outputs are byte-for-byte reproducible from the configuration and
//! seed, independently of `--threads`.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod samples;

pub use args::Cli;
pub use config::RunConfig;
pub use error::{CliError, Result};

use std::io::Write;

use args::Command;

/// Runs one parsed command line, writing anything meant for the user to `out`.
pub fn run(cli: &Cli, out: &mut impl Write) -> Result<()> {
    let say = |out: &mut dyn Write, line: String| {
        writeln!(out, "{line}").map_err(|e| CliError::Runtime(format!("writing output: {e}")))
    };
    match &cli.command {
        Command::Simulate(args) => {
            for path in commands::simulate(args)? {
                say(out, format!("wrote {}", path.display()))?;
            }
            Ok(())
        }
        Command::Validate(args) => {
            let (path, report) = commands::validate_runs(args)?;
            for r in &report.runs {
                say(
                    out,
                    format!(
                        "t={} law={} n={} l2={:.4e} ks={:.4e}{}",
                        r.t,
                        r.law.name(),
                        r.n_samples,
                        r.l2_error,
                        r.ks_distance,
                        r.uncorrected
                            .as_ref()
                            .map(|u| format!(" l2_uncorrected={:.4e}", u.l2_error))
                            .unwrap_or_default()
                    ),
                )?;
            }
            say(out, format!("wrote {}", path.display()))
        }
        Command::Pdf(args) => commands::pdf(args, out),
        Command::Oracle(args) => commands::oracle(&args.kind, out),
    }
}
