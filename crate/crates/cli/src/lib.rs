//! The `modlab` command line: runs verification claims and writes reports.

pub mod claims;
pub mod config;
pub mod repfile;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use thiserror::Error;

use crate::claims::Job;
use crate::config::{Flags, Settings};
use crate::report::{Report, Verdict};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(String),
    #[error("invalid parameters: {0}")]
    Usage(String),
    #[error(transparent)]
    RepFile(#[from] repfile::RepFileError),
}

#[derive(Debug, Parser)]
#[command(
    name = "modlab",
    version,
    about = "Checks structural claims about mod-p representations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Counting lemma for Jordan-Hölder signatures.
    CountJh,
    /// Cut examples and collision witnesses.
    CutVerify,
    /// The rank-three upper-triangular toy model.
    Toycase,
    /// Admissible primes and the tame groups G_ℓ.
    TameSearch,
    /// Composition and Loewy structure of a module.
    Meataxe {
        /// Representation file; defaults to the exterior square of the
        /// standard representation of B_3(F_q).
        #[arg(long)]
        rep: Option<PathBuf>,
    },
    /// First cohomology checks.
    H1,
    /// Every claim at the given settings.
    AuditAll,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CountJh => "count-jh",
            Command::CutVerify => "cut-verify",
            Command::Toycase => "toycase",
            Command::TameSearch => "tame-search",
            Command::Meataxe { .. } => "meataxe",
            Command::H1 => "h1",
            Command::AuditAll => "audit-all",
        }
    }

    pub fn jobs(&self, s: &Settings) -> Result<Vec<Job>, CliError> {
        Ok(match self {
            Command::CountJh => claims::count_jh(s),
            Command::CutVerify => claims::cut_verify(s),
            Command::Toycase => claims::toycase(s),
            Command::TameSearch => claims::tame_search(s).map_err(CliError::Usage)?,
            Command::Meataxe { rep } => claims::meataxe(s, rep.clone()),
            Command::H1 => claims::h1(s),
            Command::AuditAll => claims::audit_all(s).map_err(CliError::Usage)?,
        })
    }
}

/// Runs every claim of the command and assembles the report.
pub fn execute(command: &Command, s: &Settings) -> Result<Report, CliError> {
    let jobs = command.jobs(s)?;
    let records = jobs.par_iter().map(|j| (j.run)()).collect();
    Ok(Report::new(command.name(), records))
}

/// Entry point; returns the process exit code: 0 when no claim fails, 1 when
/// some claim fails, 2 on usage or I/O errors.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run_cli(&cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn run_cli(cli: &Cli) -> Result<bool, CliError> {
    let s = Settings::resolve(&cli.flags)?;
    let report = execute(&cli.command, &s)?;
    for c in &report.claims {
        let word = match c.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Reported => "REPORTED",
        };
        println!("{word:<9} {:<26} {:>7} ms", c.claim_id, c.runtime_ms);
    }
    for p in report.write(&s.out, s.format)? {
        println!("wrote {}", p.display());
    }
    Ok(report.all_pass())
}
