//! Subcommand dispatch: every CLI verb resolves to a [`RunConfig`] and runs
//! through [`execute`], which writes a deterministic report and returns the
//! process exit code (0 all pass, 1 a mathematical counterexample or internal
//! consistency failure, 2 usage or resource errors — mapped by the binary).

use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use crate::arith::build_divisor_tables;
use crate::congruence::{
    build_r36, build_t16, check_lemma_2dissection, check_lemma_3dissection,
    check_overpartition_chain, check_two_adic_reduction, d_sigma2_mod12_check,
    fg_theta_parity_check, nu3_reduction_check, scan_progressions, sturm_bound, verify_kim,
    verify_progression, IdentityCheck, ProgressionReport, ScanTarget, SturmInput,
    FOUR_PROGRESSIONS, LEMMA_MODULUS_POW2, LEMMA_MODULUS_PRIME, R36_FULL_TRUNC,
};
use crate::error::{Error, Result};
use crate::partitions::{
    max_feasible_sizes, nu2_formula, nu3_formula, nu_bruteforce_counts, nu_table_dp,
    overpartition_from_nu, overpartition_table, NuTable,
};
use crate::report::{render, CheckRecord, OutputFormat, Status};

/// Named theorem presets: the exact (progressions, modulus, backend, default
/// bound) quadruples, so acceptance runs are one-liners.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// nu_2(An+B) = 0 (mod 4) on the four progressions, via the divisor-sum
    /// formula.
    ThmNu2,
    /// nu_3(An+B) = 0 (mod 2) on the four progressions, via the DP table.
    ThmNu3,
    /// p-bar(An+B) = 0 (mod 16) on the four progressions, via the series.
    ThmOp16,
    /// nu_2(16j+14) = 0 (mod 4).
    Thm1614,
    /// p-bar(n) = 0 (mod 8) for n neither a square nor twice a square.
    KimMod8,
}

impl Preset {
    pub fn default_bound(self) -> u64 {
        match self {
            Preset::ThmNu2 | Preset::ThmOp16 => 50_000,
            Preset::ThmNu3 | Preset::Thm1614 | Preset::KimMod8 => 20_000,
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            Preset::ThmNu2 => "thm-nu2",
            Preset::ThmNu3 => "thm-nu3",
            Preset::ThmOp16 => "thm-op16",
            Preset::Thm1614 => "thm-16-14",
            Preset::KimMod8 => "kim-mod8",
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "thm-nu2" => Ok(Preset::ThmNu2),
            "thm-nu3" => Ok(Preset::ThmNu3),
            "thm-op16" => Ok(Preset::ThmOp16),
            "thm-16-14" => Ok(Preset::Thm1614),
            "kim-mod8" => Ok(Preset::KimMod8),
            other => Err(Error::domain(format!("unknown preset: {other}"))),
        }
    }
}

/// Value backend for custom progression verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyTarget {
    Nu2,
    Nu3,
    Overpartition,
}

impl VerifyTarget {
    fn default_modulus(self) -> u64 {
        match self {
            VerifyTarget::Nu2 => 4,
            VerifyTarget::Nu3 => 2,
            VerifyTarget::Overpartition => 16,
        }
    }

    fn name(self) -> &'static str {
        match self {
            VerifyTarget::Nu2 => "nu2",
            VerifyTarget::Nu3 => "nu3",
            VerifyTarget::Overpartition => "overpartition",
        }
    }
}

impl FromStr for VerifyTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nu2" => Ok(VerifyTarget::Nu2),
            "nu3" => Ok(VerifyTarget::Nu3),
            "op" | "overpartition" | "pbar" => Ok(VerifyTarget::Overpartition),
            other => Err(Error::domain(format!("unknown verify target: {other}"))),
        }
    }
}

/// Named dissection check groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DissectCheck {
    Lemma3,
    Lemma2,
    TwoAdic,
    OpChain,
    T16,
    R36,
    FgParity,
    All,
}

impl DissectCheck {
    /// Smallest truncation at which the check says anything.
    fn min_trunc(self) -> usize {
        match self {
            DissectCheck::Lemma3 | DissectCheck::Lemma2 | DissectCheck::TwoAdic => 64,
            DissectCheck::OpChain => 256,
            DissectCheck::T16 => 33,
            DissectCheck::R36 => 67,
            DissectCheck::FgParity => 64,
            DissectCheck::All => 256,
        }
    }

    fn default_trunc(self, long: bool) -> usize {
        match self {
            DissectCheck::Lemma3 | DissectCheck::Lemma2 => 2000,
            DissectCheck::TwoAdic => 500,
            DissectCheck::OpChain => 2000,
            DissectCheck::T16 | DissectCheck::FgParity => 10_001,
            DissectCheck::R36 => {
                if long {
                    R36_FULL_TRUNC
                } else {
                    10_001
                }
            }
            DissectCheck::All => 2000,
        }
    }
}

impl FromStr for DissectCheck {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lemma-3" => Ok(DissectCheck::Lemma3),
            "lemma-2" => Ok(DissectCheck::Lemma2),
            "two-adic" | "2adic" => Ok(DissectCheck::TwoAdic),
            "op-chain" => Ok(DissectCheck::OpChain),
            "t16" => Ok(DissectCheck::T16),
            "r36" => Ok(DissectCheck::R36),
            "fg-parity" => Ok(DissectCheck::FgParity),
            "all" => Ok(DissectCheck::All),
            other => Err(Error::domain(format!("unknown dissect check: {other}"))),
        }
    }
}

/// A fully resolved run: subcommand plus the output knobs shared by all.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
    pub long: bool,
}

#[derive(Debug, Clone)]
pub enum Command {
    Verify {
        preset: Option<Preset>,
        progression: Option<(u64, u64)>,
        target: Option<VerifyTarget>,
        modulus: Option<u64>,
        bound: Option<u64>,
    },
    Dissect {
        check: DissectCheck,
        trunc: Option<usize>,
    },
    Sturm {
        weight: u64,
        level: u64,
        factor: u64,
    },
    Scan {
        target: ScanTarget,
        moduli: Vec<u64>,
        amax: u64,
        bound: u64,
    },
    Oracle {
        bruteforce_cap: u64,
        export_nu: Option<PathBuf>,
    },
    /// Verify the nu_3 reduction congruence and its mod-12 companion on
    /// 36j + 30 up to the bound.
    Reduction { bound: u64 },
}

/// Run the command, writing the report to `out`. Returns the exit code:
/// 0 when every record passes, 1 when any check found a counterexample.
pub fn execute(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let started = Instant::now();
    let records = match &cfg.command {
        Command::Verify {
            preset,
            progression,
            target,
            modulus,
            bound,
        } => run_verify(*preset, *progression, *target, *modulus, *bound)?,
        Command::Dissect { check, trunc } => run_dissect(*check, *trunc, cfg.long)?,
        Command::Sturm {
            weight,
            level,
            factor,
        } => {
            // prints the bound alone; no report framing
            let b = sturm_bound(&SturmInput {
                weight: *weight,
                level: *level,
                index_factor: *factor,
            })?;
            writeln!(out, "{b}")?;
            return Ok(0);
        }
        Command::Scan {
            target,
            moduli,
            amax,
            bound,
        } => run_scan(*target, moduli, *amax, *bound)?,
        Command::Oracle {
            bruteforce_cap,
            export_nu,
        } => run_oracle(*bruteforce_cap, export_nu.as_deref())?,
        Command::Reduction { bound } => run_reduction(*bound)?,
    };
    render(&records, cfg.format, out, started.elapsed().as_millis())?;
    let failed = records.iter().any(|r| !r.passed());
    Ok(if failed { 1 } else { 0 })
}

fn progression_records(check_id: &str, reports: &[ProgressionReport]) -> Vec<CheckRecord> {
    reports
        .iter()
        .map(|r| CheckRecord::from_progression(check_id, r))
        .collect()
}

fn run_verify(
    preset: Option<Preset>,
    progression: Option<(u64, u64)>,
    target: Option<VerifyTarget>,
    modulus: Option<u64>,
    bound: Option<u64>,
) -> Result<Vec<CheckRecord>> {
    match (preset, progression) {
        (Some(p), None) => {
            let bound = bound.unwrap_or_else(|| p.default_bound());
            let reports = run_preset(p, bound)?;
            Ok(progression_records(&format!("verify/{}", p.id()), &reports))
        }
        (None, Some((a, b))) => {
            let target = target.ok_or_else(|| {
                Error::domain("verify: --progression requires --target (nu2 | nu3 | op)")
            })?;
            let modulus = modulus.unwrap_or_else(|| target.default_modulus());
            let bound = bound.unwrap_or(20_000);
            let report = run_custom_progression(a, b, target, modulus, bound)?;
            Ok(progression_records(
                &format!("verify/{}", target.name()),
                &[report],
            ))
        }
        (Some(_), Some(_)) => Err(Error::domain(
            "verify: --preset and --progression are mutually exclusive",
        )),
        (None, None) => Err(Error::domain(
            "verify: supply --preset or --progression A,B",
        )),
    }
}

/// Run one named preset at the given bound; one report per progression.
pub fn run_preset(preset: Preset, bound: u64) -> Result<Vec<ProgressionReport>> {
    match preset {
        Preset::ThmNu2 => {
            let tables = build_divisor_tables(bound.max(2))?;
            FOUR_PROGRESSIONS
                .iter()
                .map(|&(a, b)| verify_progression(|n| nu2_formula(n, &tables), a, b, 4, bound))
                .collect()
        }
        Preset::Thm1614 => {
            let tables = build_divisor_tables(bound.max(2))?;
            Ok(vec![verify_progression(
                |n| nu2_formula(n, &tables),
                16,
                14,
                4,
                bound,
            )?])
        }
        Preset::ThmNu3 => {
            let table = nu_table_dp(bound.max(6), 3, Some(2))?;
            FOUR_PROGRESSIONS
                .iter()
                .map(|&(a, b)| verify_progression(|n| table.value(n, 3), a, b, 2, bound))
                .collect()
        }
        Preset::ThmOp16 => {
            let series = overpartition_table(bound, 16)?;
            FOUR_PROGRESSIONS
                .iter()
                .map(|&(a, b)| verify_progression(|n| Ok(series[n as usize]), a, b, 16, bound))
                .collect()
        }
        Preset::KimMod8 => {
            let series = overpartition_table(bound, 8)?;
            Ok(vec![verify_kim(|n| Ok(series[n as usize]), bound)?])
        }
    }
}

fn run_custom_progression(
    a: u64,
    b: u64,
    target: VerifyTarget,
    modulus: u64,
    bound: u64,
) -> Result<ProgressionReport> {
    match target {
        VerifyTarget::Nu2 => {
            let tables = build_divisor_tables(bound.max(2))?;
            verify_progression(|n| nu2_formula(n, &tables), a, b, modulus, bound)
        }
        VerifyTarget::Nu3 => {
            let table = nu_table_dp(bound.max(6), 3, Some(modulus))?;
            verify_progression(|n| table.value(n, 3), a, b, modulus, bound)
        }
        VerifyTarget::Overpartition => {
            let series = overpartition_table(bound, modulus)?;
            verify_progression(|n| Ok(series[n as usize]), a, b, modulus, bound)
        }
    }
}

fn run_dissect(check: DissectCheck, trunc: Option<usize>, long: bool) -> Result<Vec<CheckRecord>> {
    if let Some(t) = trunc {
        let min = check.min_trunc();
        if t < min {
            return Err(Error::domain(format!(
                "dissect: truncation {t} is below the minimum {min} for this check"
            )));
        }
    }
    let trunc = trunc.unwrap_or_else(|| check.default_trunc(long));
    if matches!(check, DissectCheck::R36 | DissectCheck::All) && trunc > 20_000 && !long {
        return Err(Error::domain(
            "dissect: full-depth r36 runs take minutes; pass --long to confirm",
        ));
    }

    let mut checks: Vec<IdentityCheck> = Vec::new();
    let wants = |c: DissectCheck| check == c || check == DissectCheck::All;

    if wants(DissectCheck::Lemma3) {
        checks.push(check_lemma_3dissection(trunc, LEMMA_MODULUS_POW2)?);
        checks.push(check_lemma_3dissection(trunc, LEMMA_MODULUS_PRIME)?);
    }
    if wants(DissectCheck::Lemma2) {
        checks.push(check_lemma_2dissection(trunc, LEMMA_MODULUS_POW2)?);
        checks.push(check_lemma_2dissection(trunc, LEMMA_MODULUS_PRIME)?);
    }
    if wants(DissectCheck::TwoAdic) {
        checks.extend(check_two_adic_reduction(trunc.min(500))?);
    }
    if wants(DissectCheck::OpChain) {
        checks.extend(check_overpartition_chain(trunc)?);
    }
    if wants(DissectCheck::T16) {
        let t = build_t16(trunc)?;
        checks.push(IdentityCheck::all_zero("t16-even", &t));
    }
    if wants(DissectCheck::R36) {
        let trunc = if check == DissectCheck::All && long {
            R36_FULL_TRUNC
        } else {
            trunc
        };
        let r = build_r36(trunc)?;
        checks.push(IdentityCheck::all_zero("r36-even", &r));
    }
    if wants(DissectCheck::FgParity) {
        checks.extend(fg_theta_parity_check(
            trunc.saturating_sub(1).max(63) as u64
        )?);
    }

    Ok(checks
        .iter()
        .map(|c| CheckRecord::from_identity("dissect/", c))
        .collect())
}

fn run_scan(target: ScanTarget, moduli: &[u64], amax: u64, bound: u64) -> Result<Vec<CheckRecord>> {
    let candidates = scan_progressions(amax, bound, target, moduli)?;
    let mut records: Vec<CheckRecord> = candidates
        .iter()
        .map(|c| CheckRecord::from_scan_candidate(target.name(), c, bound))
        .collect();
    // keep the bound visible even when nothing is found: absence at a finite
    // bound is evidence, not proof
    if records.is_empty() {
        records.push(CheckRecord {
            check_id: format!("scan/{}", target.name()),
            params: format!("amax={amax};candidates=0"),
            bound,
            status: Status::Pass,
            counterexample: None,
        });
    }
    Ok(records)
}

fn run_oracle(
    bruteforce_cap: u64,
    export_nu: Option<&std::path::Path>,
) -> Result<Vec<CheckRecord>> {
    let mut records = Vec::new();
    let cap = bruteforce_cap;
    let formula_bound_nu2 = 120u64;
    let formula_bound_nu3 = 80u64;
    let tables = build_divisor_tables(formula_bound_nu2)?;
    let dp = nu_table_dp(formula_bound_nu2, 8, None)?;

    let mut nu2_bad = None;
    let mut nu3_bad = None;
    for n in 1..=formula_bound_nu2 {
        let brute = if n <= cap {
            Some(nu_bruteforce_counts(n, cap)?)
        } else {
            None
        };
        let f2 = nu2_formula(n, &tables)?;
        let d2 = dp.value(n, 2)?;
        let b2 = brute.as_ref().map(|c| c.get(2).copied().unwrap_or(0));
        if f2 != d2 || b2.is_some_and(|b| b != f2) {
            nu2_bad.get_or_insert(format!(
                "n={n};formula={f2};dp={d2};brute={}",
                b2.map_or("-".into(), |v| v.to_string())
            ));
        }
        if n <= formula_bound_nu3 {
            let f3 = nu3_formula(n, &tables)?;
            let d3 = dp.value(n, 3)?;
            let b3 = brute.as_ref().map(|c| c.get(3).copied().unwrap_or(0));
            if f3 != d3 || b3.is_some_and(|b| b != f3) {
                nu3_bad.get_or_insert(format!(
                    "n={n};formula={f3};dp={d3};brute={}",
                    b3.map_or("-".into(), |v| v.to_string())
                ));
            }
        }
    }
    records.push(CheckRecord {
        check_id: "oracle/nu2-three-way".into(),
        params: format!("formula_dp_bound={formula_bound_nu2};brute_cap={cap}"),
        bound: formula_bound_nu2,
        status: if nu2_bad.is_none() {
            Status::Pass
        } else {
            Status::Counterexample
        },
        counterexample: nu2_bad,
    });
    records.push(CheckRecord {
        check_id: "oracle/nu3-three-way".into(),
        params: format!("formula_dp_bound={formula_bound_nu3};brute_cap={cap}"),
        bound: formula_bound_nu3,
        status: if nu3_bad.is_none() {
            Status::Pass
        } else {
            Status::Counterexample
        },
        counterexample: nu3_bad,
    });

    // p-bar(n) = sum_k 2^k nu_k(n) at modulus 2^20 to 500
    let identity_bound = 500u64;
    let modulus = 1u64 << 20;
    let kmax = max_feasible_sizes(identity_bound);
    let nu = nu_table_dp(identity_bound, kmax, Some(modulus))?;
    let series = overpartition_table(identity_bound, modulus)?;
    let mut op_bad = None;
    for n in 1..=identity_bound {
        let from_nu = overpartition_from_nu(n, &nu)?;
        let from_series = series[n as usize];
        if from_nu != from_series {
            op_bad.get_or_insert(format!("n={n};from_nu={from_nu};series={from_series}"));
        }
    }
    records.push(CheckRecord {
        check_id: "oracle/overpartition-identity".into(),
        params: format!("modulus=2^20;kmax={kmax}"),
        bound: identity_bound,
        status: if op_bad.is_none() {
            Status::Pass
        } else {
            Status::Counterexample
        },
        counterexample: op_bad,
    });

    if let Some(path) = export_nu {
        let table = nu_table_dp(formula_bound_nu2, 8, None)?;
        let mut file = std::fs::File::create(path)?;
        table.write_csv(&mut file)?;
        records.push(CheckRecord {
            check_id: "oracle/export-nu".into(),
            params: format!("path={}", path.display()),
            bound: formula_bound_nu2,
            status: Status::Pass,
            counterexample: None,
        });
    }

    Ok(records)
}

fn run_reduction(bound: u64) -> Result<Vec<CheckRecord>> {
    let tables = build_divisor_tables(bound.max(36))?;
    let nu = nu_table_dp(bound.max(36), 3, Some(2))?;
    let mut records = Vec::new();
    let mut worst: Option<CheckRecord> = None;
    let mut all_ok = true;
    let mut checked = 0u64;
    for n in (30..=bound).step_by(36) {
        let r = nu3_reduction_check(n, &tables, &nu)?;
        let _ = d_sigma2_mod12_check(n, &tables)?;
        checked += 1;
        if !r.passed() {
            all_ok = false;
            worst.get_or_insert(CheckRecord::from_reduction(&r));
        }
    }
    if let Some(w) = worst {
        records.push(w);
    }
    records.push(CheckRecord {
        check_id: "nu3-reduction/progression-36n+30".into(),
        params: format!("terms={checked}"),
        bound,
        status: if all_ok {
            Status::Pass
        } else {
            Status::Counterexample
        },
        counterexample: None,
    });
    Ok(records)
}

/// Expose the DP/nu oracle used by tests that need to fault-inject a table.
#[doc(hidden)]
pub fn nu_identity_disagreement(nu: &NuTable, series: &[u64]) -> Option<(u64, u64, u64)> {
    for n in 1..=nu.bound().min(series.len() as u64 - 1) {
        let from_nu = match overpartition_from_nu(n, nu) {
            Ok(v) => v,
            Err(_) => return Some((n, u64::MAX, series[n as usize])),
        };
        if from_nu != series[n as usize] {
            return Some((n, from_nu, series[n as usize]));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(cfg: &RunConfig) -> (i32, String) {
        let mut buf = Vec::new();
        let code = execute(cfg, &mut buf).unwrap();
        (code, String::from_utf8(buf).unwrap())
    }

    fn config(command: Command) -> RunConfig {
        RunConfig {
            command,
            format: OutputFormat::Text,
            output: None,
            long: false,
        }
    }

    #[test]
    fn sturm_prints_the_bare_bound() {
        let (code, out) = run(&config(Command::Sturm {
            weight: 4,
            level: 64,
            factor: 1,
        }));
        assert_eq!(code, 0);
        assert_eq!(out, "32\n");
    }

    #[test]
    fn preset_16_14_passes_at_small_bound() {
        let (code, out) = run(&config(Command::Verify {
            preset: Some(Preset::Thm1614),
            progression: None,
            target: None,
            modulus: None,
            bound: Some(2000),
        }));
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("pass"));
    }

    #[test]
    fn custom_progression_counterexample_exits_one() {
        let (code, out) = run(&config(Command::Verify {
            preset: None,
            progression: Some((2, 1)),
            target: Some(VerifyTarget::Nu2),
            modulus: Some(4),
            bound: Some(100),
        }));
        assert_eq!(code, 1);
        assert!(out.contains("n=3;value=1"), "{out}");
    }

    #[test]
    fn verify_requires_a_preset_or_progression() {
        let mut buf = Vec::new();
        let err = execute(
            &config(Command::Verify {
                preset: None,
                progression: None,
                target: None,
                modulus: None,
                bound: None,
            }),
            &mut buf,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn dissect_trunc_minimum_is_enforced() {
        let mut buf = Vec::new();
        let err = execute(
            &config(Command::Dissect {
                check: DissectCheck::OpChain,
                trunc: Some(10),
            }),
            &mut buf,
        )
        .unwrap_err();
        assert!(err.to_string().contains("minimum 256"), "{err}");
    }

    #[test]
    fn dissect_full_r36_requires_long() {
        let mut buf = Vec::new();
        let err = execute(
            &config(Command::Dissect {
                check: DissectCheck::R36,
                trunc: Some(93313),
            }),
            &mut buf,
        )
        .unwrap_err();
        assert!(err.to_string().contains("--long"), "{err}");
    }

    #[test]
    fn oracle_passes_with_default_caps() {
        let (code, out) = run(&config(Command::Oracle {
            bruteforce_cap: 40,
            export_nu: None,
        }));
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("oracle/nu2-three-way"));
        assert!(out.contains("oracle/overpartition-identity"));
    }

    #[test]
    fn fault_injected_table_is_caught() {
        let modulus = 1u64 << 20;
        let mut nu = nu_table_dp(60, 10, Some(modulus)).unwrap();
        let series = overpartition_table(60, modulus).unwrap();
        assert_eq!(nu_identity_disagreement(&nu, &series), None);
        nu.corrupt_for_test(17, 2, 12345);
        let hit = nu_identity_disagreement(&nu, &series).expect("corruption must surface");
        assert_eq!(hit.0, 17);
    }

    #[test]
    fn reduction_command_passes() {
        let (code, out) = run(&config(Command::Reduction { bound: 1500 }));
        assert_eq!(code, 0, "{out}");
    }

    #[test]
    fn preset_parsing_rejects_unknown_names() {
        assert!("thm-nu2".parse::<Preset>().is_ok());
        assert!("thm-nu5".parse::<Preset>().is_err());
    }
}
