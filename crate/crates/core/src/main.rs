//! congruence-forge: batch verification of partition congruences in
//! arithmetic progressions.
//!
//! Flag precedence is flags > config file > built-in defaults; the config
//! file is flat `key=value` lines with `#` comments. The environment variable
//! `CONGRUENCE_FORGE_THREADS` caps internal parallelism.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use congruence_forge::cli::{self, Command, DissectCheck, Preset, RunConfig, VerifyTarget};
use congruence_forge::congruence::ScanTarget;
use congruence_forge::report::OutputFormat;
use congruence_forge::{Error, Result};

#[derive(Parser)]
#[command(
    name = "congruence-forge",
    version,
    about = "Verify partition, overpartition, and divisor-sum congruences in arithmetic progressions"
)]
struct Args {
    /// Flat key=value config file; explicit flags win over its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Report format: text | csv | lines.
    #[arg(long, global = true)]
    format: Option<String>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Allow the minutes-scale full-depth checks (r36 to the Sturm bound).
    #[arg(long, global = true)]
    long: bool,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify a progression congruence from a preset or custom parameters.
    Verify {
        /// thm-nu2 | thm-nu3 | thm-op16 | thm-16-14 | kim-mod8
        #[arg(long)]
        preset: Option<String>,
        /// Custom progression as A,B (terms A*n + B).
        #[arg(long)]
        progression: Option<String>,
        /// Value backend for --progression: nu2 | nu3 | op.
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        modulus: Option<u64>,
        /// Largest term checked.
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Run series dissection and parity checks.
    Dissect {
        /// lemma-3 | lemma-2 | two-adic | op-chain | t16 | r36 | fg-parity | all
        #[arg(long)]
        check: String,
        #[arg(long)]
        trunc: Option<usize>,
    },
    /// Print the Sturm coefficient-check bound for a weight and level.
    Sturm {
        weight: u64,
        level: u64,
        /// Subgroup-index multiplier applied to the bound.
        #[arg(long, default_value_t = 1)]
        factor: u64,
    },
    /// Scan progressions (a <= amax) on which a target sequence vanishes.
    Scan {
        /// nu2-mod4 | nu3-mod2 | op-mod16 (or nu2 | nu3 | overpartition)
        #[arg(long)]
        target: Option<String>,
        /// Comma-separated moduli overriding the target's default.
        #[arg(long)]
        moduli: Option<String>,
        #[arg(long)]
        amax: Option<u64>,
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Cross-check nu_k and overpartition values across independent methods.
    Oracle {
        /// Largest n fed to exhaustive enumeration.
        #[arg(long)]
        bruteforce_cap: Option<u64>,
        /// Also export the exact nu table as CSV (n,k,value).
        #[arg(long)]
        export_nu: Option<PathBuf>,
    },
    /// Verify the nu_3 parity reduction on 36n + 30 up to a bound.
    Reduction {
        #[arg(long)]
        bound: Option<u64>,
    },
}

/// Flat key=value file; blank lines and #-comments ignored.
fn load_config(path: &PathBuf) -> Result<HashMap<String, String>> {
    let text = fs::read_to_string(path)?;
    let mut map = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            Error::Domain(format!(
                "config {}:{}: expected key=value",
                path.display(),
                lineno + 1
            ))
        })?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

fn parse_from<T: FromStr>(map: &HashMap<String, String>, key: &str) -> Result<Option<T>>
where
    T::Err: std::fmt::Display,
{
    match map.get(key) {
        None => Ok(None),
        Some(raw) => raw
            .parse::<T>()
            .map(Some)
            .map_err(|e| Error::Domain(format!("config key {key}={raw}: {e}"))),
    }
}

fn parse_progression(s: &str) -> Result<(u64, u64)> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::Domain(format!("progression must be A,B: {s}")))?;
    let a = a
        .trim()
        .parse::<u64>()
        .map_err(|e| Error::Domain(format!("progression step: {e}")))?;
    let b = b
        .trim()
        .parse::<u64>()
        .map_err(|e| Error::Domain(format!("progression residue: {e}")))?;
    Ok((a, b))
}

fn parse_moduli(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|e| Error::Domain(format!("moduli list entry {t}: {e}")))
        })
        .collect()
}

fn resolve(args: Args) -> Result<RunConfig> {
    let file = match &args.config {
        Some(p) => load_config(p)?,
        None => HashMap::new(),
    };

    let format: OutputFormat = match args.format.or_else(|| file.get("format").cloned()) {
        Some(s) => s.parse()?,
        None => OutputFormat::default(),
    };
    let output = args
        .output
        .or_else(|| file.get("output").map(PathBuf::from));
    let long = args.long || file.get("long").is_some_and(|v| v == "true" || v == "1");

    let command = match args.command {
        Cmd::Verify {
            preset,
            progression,
            target,
            modulus,
            bound,
        } => {
            let preset = match preset.or_else(|| file.get("preset").cloned()) {
                Some(s) => Some(s.parse::<Preset>()?),
                None => None,
            };
            let progression = match progression.or_else(|| file.get("progression").cloned()) {
                Some(s) => Some(parse_progression(&s)?),
                None => None,
            };
            let target = match target.or_else(|| file.get("target").cloned()) {
                Some(s) => Some(s.parse::<VerifyTarget>()?),
                None => None,
            };
            Command::Verify {
                preset,
                progression,
                target,
                modulus: modulus.or(parse_from(&file, "modulus")?),
                bound: bound.or(parse_from(&file, "bound")?),
            }
        }
        Cmd::Dissect { check, trunc } => Command::Dissect {
            check: check.parse::<DissectCheck>()?,
            trunc: trunc.or(parse_from(&file, "trunc")?),
        },
        Cmd::Sturm {
            weight,
            level,
            factor,
        } => Command::Sturm {
            weight,
            level,
            factor,
        },
        Cmd::Scan {
            target,
            moduli,
            amax,
            bound,
        } => {
            let target = match target.or_else(|| file.get("target").cloned()) {
                Some(s) => s.parse::<ScanTarget>()?,
                None => ScanTarget::Nu2,
            };
            let moduli = match moduli.or_else(|| file.get("moduli").cloned()) {
                Some(s) => parse_moduli(&s)?,
                None => Vec::new(),
            };
            Command::Scan {
                target,
                moduli,
                amax: amax.or(parse_from(&file, "amax")?).unwrap_or(40),
                bound: bound.or(parse_from(&file, "bound")?).unwrap_or(5000),
            }
        }
        Cmd::Oracle {
            bruteforce_cap,
            export_nu,
        } => Command::Oracle {
            bruteforce_cap: bruteforce_cap
                .or(parse_from(&file, "bruteforce-cap")?)
                .unwrap_or(60),
            export_nu,
        },
        Cmd::Reduction { bound } => Command::Reduction {
            bound: bound.or(parse_from(&file, "bound")?).unwrap_or(5000),
        },
    };

    Ok(RunConfig {
        command,
        format,
        output,
        long,
    })
}

fn init_thread_pool() {
    if let Ok(v) = std::env::var("CONGRUENCE_FORGE_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }
}

fn run() -> Result<i32> {
    env_logger::init();
    init_thread_pool();
    let cfg = resolve(Args::parse())?;
    match cfg.output.clone() {
        Some(path) => {
            let mut file = fs::File::create(&path)?;
            let code = cli::execute(&cfg, &mut file)?;
            file.flush()?;
            Ok(code)
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            let code = cli::execute(&cfg, &mut lock)?;
            lock.flush()?;
            Ok(code)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e @ Error::Consistency(_)) => {
            eprintln!("congruence-forge: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("congruence-forge: {e}");
            ExitCode::from(2)
        }
    }
}
