//! End-to-end tests of the binary: exit codes, report formats, config-file
//! precedence, and byte-determinism of the payload.

use std::path::Path;
use std::process::{Command, Output};

fn forge() -> Command {
    Command::new(env!("CARGO_BIN_EXE_congruence-forge"))
}

fn run(args: &[&str]) -> Output {
    forge().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn payload(o: &Output) -> String {
    stdout(o)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn sturm_prints_known_bounds() {
    let o = run(&["sturm", "4", "64"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "32\n");

    let o = run(&["sturm", "4", "46656"]);
    assert_eq!(stdout(&o), "31104\n");

    let o = run(&["sturm", "4", "46656", "--factor", "3"]);
    assert_eq!(stdout(&o), "93312\n");
}

#[test]
fn sturm_zero_arguments_are_usage_errors() {
    let o = run(&["sturm", "0", "64"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["sturm", "4"]);
    assert_eq!(o.status.code(), Some(2), "missing positional");
}

#[test]
fn verify_preset_passes_and_exits_zero() {
    let o = run(&["verify", "--preset", "thm-16-14", "--bound", "2000"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("pass"));
    assert!(stdout(&o).contains("a=16;b=14;modulus=4"));
}

#[test]
fn verify_counterexample_exits_one_with_the_witness() {
    let o = run(&[
        "verify",
        "--progression",
        "2,1",
        "--target",
        "nu2",
        "--modulus",
        "4",
        "--bound",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("n=3;value=1"), "{}", stdout(&o));
}

#[test]
fn verify_custom_progression_passes() {
    let o = run(&[
        "verify",
        "--progression",
        "36,30",
        "--target",
        "nu2",
        "--modulus",
        "4",
        "--bound",
        "3000",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn unknown_preset_is_a_usage_error() {
    let o = run(&["verify", "--preset", "thm-nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown preset"));
}

#[test]
fn kim_preset_runs() {
    let o = run(&["verify", "--preset", "kim-mod8", "--bound", "3000"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn dissect_lemma_and_chain_pass_at_small_trunc() {
    let o = run(&["dissect", "--check", "lemma-3", "--trunc", "300"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let o = run(&["dissect", "--check", "op-chain", "--trunc", "300"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("op-chain/36n+6"));
}

#[test]
fn dissect_trunc_minimum_names_the_minimum() {
    let o = run(&["dissect", "--check", "op-chain", "--trunc", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("minimum 256"));
}

#[test]
fn dissect_full_depth_requires_long() {
    let o = run(&["dissect", "--check", "r36", "--trunc", "93313"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["dissect", "--check", "r36", "--trunc", "93313", "--long"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn scan_csv_contains_known_candidates_and_is_deterministic() {
    let args = [
        "scan", "--target", "nu2-mod4", "--amax", "20", "--bound", "2000", "--format", "csv",
    ];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let text = stdout(&first);
    assert!(text
        .lines()
        .next()
        .unwrap()
        .starts_with("check_id,params,bound,status"));
    assert!(
        text.contains("a=16;b=14;sigma1_mod8=true;d_half_square=true;avoids_two_squares=true"),
        "{text}"
    );
    let second = run(&args);
    assert_eq!(
        payload(&first),
        payload(&second),
        "payload must be byte-stable"
    );
}

#[test]
fn scan_odd_moduli_reports_the_empty_result_with_its_bound() {
    let o = run(&[
        "scan", "--target", "nu2", "--moduli", "3,5,7", "--amax", "12", "--bound", "1000",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("candidates=0"), "{}", stdout(&o));
    assert!(stdout(&o).contains("bound=1000"));
}

#[test]
fn oracle_passes_and_exports_the_table() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("nu.csv");
    let o = run(&[
        "oracle",
        "--bruteforce-cap",
        "30",
        "--export-nu",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("n,k,value\n"));
    assert!(text.contains("\n5,2,5\n"), "nu_2(5) = 5 row present");
}

#[test]
fn reduction_subcommand_passes() {
    let o = run(&["reduction", "--bound", "600"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn config_file_fills_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("forge.conf");
    std::fs::write(&cfg, "# comment\nbound=1500\nformat=lines\n").unwrap();

    let o = forge()
        .args(["verify", "--preset", "thm-16-14", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("bound=1500"), "config bound applies: {text}");
    assert!(
        text.starts_with("check_id="),
        "config format applies: {text}"
    );

    let o = forge()
        .args([
            "verify",
            "--preset",
            "thm-16-14",
            "--bound",
            "700",
            "--config",
        ])
        .arg(&cfg)
        .output()
        .unwrap();
    assert!(
        stdout(&o).contains("bound=700"),
        "flag wins: {}",
        stdout(&o)
    );
}

#[test]
fn output_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let o = forge()
        .args([
            "verify",
            "--preset",
            "thm-16-14",
            "--bound",
            "500",
            "--format",
            "csv",
            "--output",
        ])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("verify/thm-16-14"));
}

#[test]
fn thread_cap_env_is_accepted() {
    let o = forge()
        .env("CONGRUENCE_FORGE_THREADS", "1")
        .args(["verify", "--preset", "thm-16-14", "--bound", "600"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn lines_format_is_line_delimited_key_value() {
    let o = run(&[
        "verify",
        "--preset",
        "thm-16-14",
        "--bound",
        "500",
        "--format",
        "lines",
    ]);
    let text = stdout(&o);
    let line = text.lines().next().unwrap();
    assert!(line.starts_with("check_id=verify/thm-16-14 "), "{line}");
    assert!(line.contains(" status=pass "), "{line}");
}

#[test]
fn bad_config_lines_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("broken.conf");
    std::fs::write(&cfg, "bound 1500\n").unwrap();
    let o = forge()
        .args(["verify", "--preset", "thm-16-14", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("key=value"));
}

#[test]
fn golden_series_dump() {
    // the library's dump format, pinned against a committed golden file
    use congruence_forge::qseries::eta_factor;
    let mut buf = Vec::new();
    eta_factor(1, 50, 97).unwrap().dump(&mut buf).unwrap();
    let got = String::from_utf8(buf).unwrap();
    let want = std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/eta1_mod97.txt"),
    )
    .unwrap();
    assert_eq!(got, want);
}
