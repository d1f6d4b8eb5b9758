//! Command-line front end.
//!
//! Subcommands:
//!   analyze <file>   full analysis of a structure file (text or JSON report)
//!   verify           randomized self-verification against the Levi-Civita oracle
//!   identities       combinatorial self-test of the structure tables
//!
//! Exit codes: 0 success; 1 validation or input error; 2 structure rejected
//! because the 3-form is not positive; 3 verification failure (the two
//! curvature pipelines disagree, or a self-test failed).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use su3torsion::report::{analyze_built, to_json, to_text};
use su3torsion::scalar::BigRational;
use su3torsion::structfile::{build_structure, parse_structure_file, Diagnostic, Mode};
use su3torsion::su3::{check_epsilon_identities, induced_structure, standard_kappa, standard_omega};
use su3torsion::verify::{run_suites, Fault, VerifyOptions};

const EXIT_VERIFICATION: u8 = 3;

#[derive(Parser)]
#[command(
    name = "su3torsion",
    version,
    about = "Torsion, classification, and curvature of SU(3)-structures on 6-dimensional Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a structure file: torsion forms, classification, curvature
    /// through both pipelines, and the identity checklist.
    Analyze {
        /// Path to the structure file (JSON).
        file: PathBuf,
        /// Report format.
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        /// Override the arithmetic mode declared in the file.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Tolerance for float-mode comparisons (ignored in exact mode).
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Run the randomized verification suites against the Levi-Civita oracle.
    Verify {
        /// Samples per algebra family (0 requests nothing and succeeds).
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Seed for the deterministic sample generator.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Residual bound for formula-vs-oracle comparisons.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Where to write the first counterexample if a suite fails.
        #[arg(long, default_value = "counterexample.json")]
        counterexample: PathBuf,
        /// Inject a deliberate coefficient fault to prove the suites catch it.
        #[arg(long, hide = true, value_name = "NAME")]
        inject_fault: Option<String>,
    },
    /// Check the combinatorial identities of the structure tables in exact
    /// arithmetic.
    Identities,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Analyze { file, format, mode, tol } => cmd_analyze(&file, format, mode, tol),
        Command::Verify { samples, seed, tol, counterexample, inject_fault } => {
            cmd_verify(samples, seed, tol, &counterexample, inject_fault.as_deref())
        }
        Command::Identities => cmd_identities(),
    };
    ExitCode::from(code)
}

/// Print every diagnostic and return the strongest exit code among them.
fn report_diagnostics(diags: &[Diagnostic]) -> u8 {
    let mut code: i32 = 1;
    for d in diags {
        eprintln!("{d}");
        code = code.max(d.code.exit_code());
    }
    code as u8
}

fn cmd_analyze(path: &PathBuf, format: FormatArg, mode: Option<ModeArg>, tol: f64) -> u8 {
    let file = match parse_structure_file(path) {
        Ok(f) => f,
        Err(d) => return report_diagnostics(&d),
    };
    let effective = mode.map(Mode::from).unwrap_or(file.mode);
    let built = match build_structure(&file, effective, tol) {
        Ok(b) => b,
        Err(d) => return report_diagnostics(&d),
    };
    let report = match analyze_built(&file.name, &built, tol) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("[STRUCTURE] analysis: {e}");
            return 1;
        }
    };
    match format {
        FormatArg::Text => print!("{}", to_text(&report)),
        FormatArg::Json => print!("{}", to_json(&report)),
    }
    if report.agreement.pass {
        0
    } else {
        eprintln!("analysis completed but the identity checklist FAILED (see report)");
        EXIT_VERIFICATION
    }
}

fn cmd_verify(
    samples: usize,
    seed: u64,
    tol: f64,
    counterexample_path: &PathBuf,
    inject_fault: Option<&str>,
) -> u8 {
    let fault = match inject_fault {
        None => None,
        Some(name) => match Fault::from_name(name) {
            Some(f) => Some(f),
            None => {
                let known: Vec<&str> = Fault::all().iter().map(|f| f.name()).collect();
                eprintln!(
                    "unknown fault {name:?}; known faults: {}",
                    known.join(", ")
                );
                return 1;
            }
        },
    };
    let opts = VerifyOptions { samples, seed, tol, fault };
    let results = match run_suites(&opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("verification could not run: {e}");
            return 1;
        }
    };
    if results.is_empty() {
        println!("no samples requested; nothing to verify");
        return 0;
    }
    for r in &results {
        println!(
            "{:<28} samples {:>4}  residual {:>10.3e}  bound {:>8.1e}  {}",
            r.name,
            r.samples,
            r.max_residual,
            r.bound,
            if r.pass { "pass" } else { "FAIL" }
        );
    }
    let failed: Vec<_> = results.iter().filter(|r| !r.pass).collect();
    if failed.is_empty() {
        println!("all {} suites passed", results.len());
        return 0;
    }
    let first = failed[0];
    let payload = serde_json::json!({
        "suite": first.name,
        "samples": first.samples,
        "max_residual": first.max_residual,
        "bound": first.bound,
        "detail": first.detail,
        "counterexample": first.counterexample,
    });
    let body = format!("{:#}\n", payload);
    match std::fs::write(counterexample_path, body) {
        Ok(()) => eprintln!(
            "{} of {} suites FAILED; first counterexample written to {}",
            failed.len(),
            results.len(),
            counterexample_path.display()
        ),
        Err(e) => eprintln!(
            "{} of {} suites FAILED; could not write {}: {e}",
            failed.len(),
            results.len(),
            counterexample_path.display()
        ),
    }
    EXIT_VERIFICATION
}

fn cmd_identities() -> u8 {
    let s = match induced_structure(
        &standard_kappa::<BigRational>(),
        &standard_omega::<BigRational>(),
        false,
        0.0,
    ) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("could not build the standard structure: {e}");
            return 1;
        }
    };
    let checks = check_epsilon_identities(&s.tables, 0.0);
    let mut ok = true;
    for c in &checks {
        println!(
            "{:<32} residual {:>10.3e}  {}",
            c.name,
            c.max_residual,
            if c.pass { "pass" } else { "FAIL" }
        );
        ok &= c.pass;
    }
    if ok {
        println!("all {} identities hold exactly", checks.len());
        0
    } else {
        EXIT_VERIFICATION
    }
}
