//! `wsr`: JSON front end for `wsr-core`.
//!
//! Exit codes: 0 success, 1 internal error, 2 invalid input (the report lists
//! the violations), 3 a check failed (the report carries a witness).

pub mod commands;
pub mod dec;
pub mod document;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use wsr_core::harness::Mode;

use crate::commands::{over_inputs, trial_config, Emission};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CHECK: i32 = 3;

/// Largest accepted `--bound`.
pub const MAX_BOUND: u64 = 1 << 31;

#[derive(Debug, Parser)]
#[command(name = "wsr", version, about = "Integral degree-two equivariant cohomology of 4-dimensional toric orbifolds")]
struct Cli {
    /// Print a human-readable summary to standard error.
    #[arg(long, global = true)]
    verbose: bool,

    /// Also write each report to this directory as <input stem>.json.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that the input is a characteristic pair.
    Validate { input: PathBuf },
    /// Full report: topology, wSR² basis, Picard data and cellular basis.
    Analyze { input: PathBuf },
    /// Integral basis of the degree-two part.
    Basis { input: PathBuf },
    /// Integrality of a polynomial document at every vertex.
    Check { pair: PathBuf, polynomial: PathBuf },
    /// Cellular basis, normalizing to standard position when needed.
    Cellular { input: PathBuf },
    /// Cartier, Picard and class group data.
    Picard { input: PathBuf },
    /// Compare the closed-form basis with the fold intersection, on an input
    /// file or on random pairs.
    Oracle {
        input: Option<PathBuf>,
        #[command(flatten)]
        trials: TrialArgs,
    },
    /// Run every invariant check on random pairs.
    Fuzz {
        #[command(flatten)]
        trials: TrialArgs,
        /// Random non-members tested per pair.
        #[arg(long, default_value_t = 10)]
        non_members: usize,
    },
}

#[derive(Debug, Args)]
struct TrialArgs {
    /// Edge count, as N or an inclusive range LO..HI.
    #[arg(long, default_value = "3..8", value_parser = parse_m)]
    m: (usize, usize),
    /// Entries of random characteristic vectors lie in [-bound, bound].
    #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(u64).range(1..=MAX_BOUND))]
    bound: u64,
    #[arg(long, default_value_t = 500)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run trials on one thread.
    #[arg(long)]
    sequential: bool,
}

fn parse_m(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
        None => (s, s),
    };
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    if lo < 3 {
        return Err(format!("m must be at least 3, got {lo}"));
    }
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

/// Pretty JSON with a trailing newline.
pub fn render(body: &Value) -> String {
    let mut s = serde_json::to_string_pretty(body).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn dispatch(cli: &Cli) -> Emission {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Validate { input } => over_inputs("validate", input, out, commands::validate),
        Command::Analyze { input } => over_inputs("analyze", input, out, commands::analyze),
        Command::Basis { input } => over_inputs("basis", input, out, commands::basis),
        Command::Cellular { input } => over_inputs("cellular", input, out, commands::cellular),
        Command::Picard { input } => over_inputs("picard", input, out, commands::picard),
        Command::Check { pair, polynomial } => {
            over_inputs("check", pair, out, |p| commands::check(p, polynomial))
        }
        Command::Oracle {
            input: Some(input), ..
        } => over_inputs("oracle", input, out, commands::oracle_pair),
        Command::Oracle { input: None, trials } => {
            let config = trial_config(trials.m, trials.bound, trials.trials, trials.seed, Mode::OracleOnly);
            harness_output("oracle", commands::trials("oracle", &config, trials.sequential), out)
        }
        Command::Fuzz {
            trials,
            non_members,
        } => {
            let mut config = trial_config(trials.m, trials.bound, trials.trials, trials.seed, Mode::Full);
            config.non_members_per_pair = *non_members;
            harness_output("fuzz", commands::trials("fuzz", &config, trials.sequential), out)
        }
    }
}

fn harness_output(command: &str, emission: Emission, out: Option<&std::path::Path>) -> Emission {
    let Some(dir) = out else {
        return emission;
    };
    let path = dir.join(format!("{command}.json"));
    match std::fs::create_dir_all(dir).and_then(|_| std::fs::write(&path, render(&emission.body))) {
        Ok(()) => emission,
        Err(e) => Emission::internal(format!("writing {}: {e}", path.display())),
    }
}

/// Parses `args` (program name first), runs the subcommand, writes the JSON
/// report to `out` and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_INVALID
                }
            };
        }
    };

    let emission = panic::catch_unwind(AssertUnwindSafe(|| dispatch(&cli))).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Emission::internal(msg)
    });

    if out.write_all(render(&emission.body).as_bytes()).is_err() {
        return EXIT_INTERNAL;
    }
    if cli.verbose {
        let _ = writeln!(err, "{}", emission.summary);
    }
    emission.code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m_ranges() {
        assert_eq!(parse_m("6"), Ok((6, 6)));
        assert_eq!(parse_m("3..8"), Ok((3, 8)));
        assert_eq!(parse_m("3..=8"), Ok((3, 8)));
        assert!(parse_m("2..5").is_err());
        assert!(parse_m("7..4").is_err());
        assert!(parse_m("x").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        assert_eq!(run(["wsr", "frobnicate"], &mut o, &mut e), EXIT_INVALID);
        assert_eq!(run(["wsr", "oracle", "--bound", "0"], &mut o, &mut e), EXIT_INVALID);
        assert_eq!(run(["wsr", "--help"], &mut o, &mut e), EXIT_OK);
    }
}
