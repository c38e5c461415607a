//! Run settings: command-line flags over a `key=value` file over defaults.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::ValueEnum;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
    Both,
}

/// Flag values as parsed; `None` means not given on the command line.
#[derive(Clone, Debug, Default, clap::Args)]
pub struct Flags {
    /// Seed for every randomized step.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Field order for the rank-three toy model.
    #[arg(long, global = true)]
    pub q: Option<u64>,
    /// Residue characteristic for the tame search.
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Number of admissible primes.
    #[arg(long, global = true)]
    pub count: Option<usize>,
    /// Largest n for the counting checks.
    #[arg(long = "n-max", global = true)]
    pub n_max: Option<usize>,
    /// Largest group order enumerated.
    #[arg(long = "cap-group-order", global = true)]
    pub cap_group_order: Option<usize>,
    /// Largest #K for which the MeatAxe runs in the tame search.
    #[arg(long = "k-cap", global = true)]
    pub k_cap: Option<u64>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Directory for report.json and report.md.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// `key=value` file with defaults for the flags above.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// Fully resolved settings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Settings {
    pub seed: u64,
    pub q: u64,
    pub p: u64,
    pub count: usize,
    pub n_max: usize,
    pub cap_group_order: usize,
    pub k_cap: u64,
    pub format: Format,
    pub out: PathBuf,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            seed: 0,
            q: 5,
            p: 3,
            count: 3,
            n_max: 7,
            cap_group_order: 2000,
            k_cap: modlab_core::tame::DEFAULT_K_CAP,
            format: Format::Both,
            out: PathBuf::from("."),
        }
    }
}

/// Parses `key=value` lines; blank lines and `#` comments are skipped.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("line {}: expected key=value", no + 1)))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn parse<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.parse()
        .map_err(|_| CliError::Config(format!("invalid value {v:?} for {key}")))
}

impl Settings {
    pub fn resolve(flags: &Flags) -> Result<Settings, CliError> {
        let file = match &flags.config {
            Some(path) => load(path)?,
            None => BTreeMap::new(),
        };
        let mut s = Settings::default();
        for (k, v) in &file {
            match k.as_str() {
                "seed" => s.seed = parse(k, v)?,
                "q" => s.q = parse(k, v)?,
                "p" => s.p = parse(k, v)?,
                "count" => s.count = parse(k, v)?,
                "n-max" => s.n_max = parse(k, v)?,
                "cap-group-order" => s.cap_group_order = parse(k, v)?,
                "k-cap" => s.k_cap = parse(k, v)?,
                "format" => {
                    s.format = Format::from_str(v, true)
                        .map_err(|_| CliError::Config(format!("invalid value {v:?} for format")))?
                }
                "out" => s.out = PathBuf::from(v),
                _ => return Err(CliError::Config(format!("unknown key {k:?}"))),
            }
        }
        s.seed = flags.seed.unwrap_or(s.seed);
        s.q = flags.q.unwrap_or(s.q);
        s.p = flags.p.unwrap_or(s.p);
        s.count = flags.count.unwrap_or(s.count);
        s.n_max = flags.n_max.unwrap_or(s.n_max);
        s.cap_group_order = flags.cap_group_order.unwrap_or(s.cap_group_order);
        s.k_cap = flags.k_cap.unwrap_or(s.k_cap);
        s.format = flags.format.unwrap_or(s.format);
        if let Some(o) = &flags.out {
            s.out = o.clone();
        }
        Ok(s)
    }
}

fn load(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}
