//! Machine-readable check reports.
//!
//! One [`CheckRecord`] per verification, rendered as human text, CSV
//! (`check_id,params,bound,status,counterexample`), or line-delimited
//! `key=value` records. Payload bytes are deterministic for a given
//! configuration: records are emitted in a fixed order and carry no
//! timestamps. Elapsed time goes on a single `#`-prefixed trailer line that
//! golden comparisons strip.

use std::io::{self, Write};
use std::str::FromStr;

use crate::congruence::{
    IdentityCheck, Nu3ReductionReport, ProgressionReport, ProgressionStatus, ScanCandidate,
};
use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Counterexample,
    Candidate,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Counterexample => "counterexample",
            Status::Candidate => "candidate",
        }
    }
}

/// One verification outcome. `params` and `counterexample` are compact
/// `key=value` tokens joined by `;` so every format can carry them unquoted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRecord {
    pub check_id: String,
    pub params: String,
    pub bound: u64,
    pub status: Status,
    pub counterexample: Option<String>,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status != Status::Counterexample
    }

    pub fn from_progression(check_id: impl Into<String>, r: &ProgressionReport) -> Self {
        let (status, counterexample) = match r.status {
            ProgressionStatus::Pass => (Status::Pass, None),
            ProgressionStatus::Counterexample { n, value } => {
                (Status::Counterexample, Some(format!("n={n};value={value}")))
            }
        };
        CheckRecord {
            check_id: check_id.into(),
            params: format!("a={};b={};modulus={}", r.a, r.b, r.modulus),
            bound: r.checked_bound,
            status,
            counterexample,
        }
    }

    pub fn from_identity(prefix: &str, c: &IdentityCheck) -> Self {
        CheckRecord {
            check_id: format!("{prefix}{}", c.id),
            params: String::new(),
            bound: c.checked,
            status: if c.passed() {
                Status::Pass
            } else {
                Status::Counterexample
            },
            counterexample: c
                .first_mismatch
                .map(|m| format!("exponent={};lhs={};rhs={}", m.exponent, m.lhs, m.rhs)),
        }
    }

    pub fn from_scan_candidate(target: &str, c: &ScanCandidate, bound: u64) -> Self {
        CheckRecord {
            check_id: format!("scan/{target}-mod{}", c.modulus),
            params: format!(
                "a={};b={};sigma1_mod8={};d_half_square={};avoids_two_squares={}",
                c.a, c.b, c.sigma1_mod8, c.d_half_square, c.avoids_two_squares
            ),
            bound,
            status: Status::Candidate,
            counterexample: None,
        }
    }

    pub fn from_reduction(r: &Nu3ReductionReport) -> Self {
        CheckRecord {
            check_id: "nu3-reduction".into(),
            params: format!("n={}", r.n),
            bound: r.n,
            status: if r.passed() {
                Status::Pass
            } else {
                Status::Counterexample
            },
            counterexample: (!r.passed()).then(|| {
                format!(
                    "nu3_parity={};rhs_parity={};d_sigma2_ok={}",
                    r.nu3_parity, r.rhs_parity, r.d_sigma2_ok
                )
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Csv,
    Lines,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "csv" => Ok(OutputFormat::Csv),
            "lines" | "structured-lines" => Ok(OutputFormat::Lines),
            other => Err(Error::Domain(format!("unknown output format: {other}"))),
        }
    }
}

/// Render records in the chosen format followed by the elapsed-time trailer.
pub fn render(
    records: &[CheckRecord],
    format: OutputFormat,
    w: &mut dyn Write,
    elapsed_ms: u128,
) -> io::Result<()> {
    match format {
        OutputFormat::Text => {
            for r in records {
                let mut line = format!("{:<14} {}", r.status.as_str(), r.check_id);
                if !r.params.is_empty() {
                    line.push_str(&format!(" [{}]", r.params));
                }
                line.push_str(&format!(" bound={}", r.bound));
                if let Some(cx) = &r.counterexample {
                    line.push_str(&format!(" counterexample: {cx}"));
                }
                writeln!(w, "{line}")?;
            }
            let failures = records.iter().filter(|r| !r.passed()).count();
            writeln!(w, "{} checks, {} failures", records.len(), failures)?;
        }
        OutputFormat::Csv => {
            writeln!(w, "check_id,params,bound,status,counterexample")?;
            for r in records {
                writeln!(
                    w,
                    "{},{},{},{},{}",
                    r.check_id,
                    r.params,
                    r.bound,
                    r.status.as_str(),
                    r.counterexample.as_deref().unwrap_or("")
                )?;
            }
        }
        OutputFormat::Lines => {
            for r in records {
                writeln!(
                    w,
                    "check_id={} bound={} status={} params={} counterexample={}",
                    r.check_id,
                    r.bound,
                    r.status.as_str(),
                    if r.params.is_empty() { "-" } else { &r.params },
                    r.counterexample.as_deref().unwrap_or("-")
                )?;
            }
        }
    }
    writeln!(w, "# elapsed_ms={elapsed_ms}")?;
    Ok(())
}
