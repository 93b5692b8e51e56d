use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use tl_core::compute::{compute, result_document, Options};
use tl_core::document::parse_object;
use tl_core::generate::Bounds;
use tl_core::suites::{run_suite, SUITES};
use tl_core::Error;

#[derive(Parser)]
#[command(name = "tl", version, about = "Exact torsion, signatures and filtered invariants of integral chain complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a document and check its structural conditions.
    Validate { file: PathBuf },
    /// Evaluate one of: chi, tau, tau-map, tau-sym, sign, cone, dual, tensor, graded, amalgamate, theta.
    Compute {
        command: String,
        file: PathBuf,
        #[arg(long)]
        dim: Option<usize>,
        /// second operand for `tensor`
        #[arg(long)]
        with: Option<PathBuf>,
    },
    /// Run a seeded verification suite (or `all`).
    Verify {
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

enum Failed {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failed {
    fn from(e: Error) -> Self {
        match e {
            Error::SchemaError(_) | Error::UnknownSuite(_) => Failed::Usage(e.to_string()),
            other => Failed::Domain(other.to_string()),
        }
    }
}

fn read(path: &PathBuf) -> Result<Vec<u8>, Failed> {
    std::fs::read(path).map_err(|e| Failed::Usage(format!("{}: {e}", path.display())))
}

fn text(bytes: &[u8]) -> Result<&str, Failed> {
    std::str::from_utf8(bytes).map_err(|e| Failed::Usage(format!("input is not UTF-8: {e}")))
}

fn run(cli: Cli) -> Result<bool, Failed> {
    match cli.command {
        Command::Validate { file } => {
            let bytes = read(&file)?;
            let object = parse_object(text(&bytes)?)?;
            println!("{}", json!({ "valid": true, "kind": object.kind() }));
            Ok(true)
        }
        Command::Compute { command, file, dim, with } => {
            let mut bytes = read(&file)?;
            let input = parse_object(text(&bytes)?)?;
            let with = match with {
                Some(path) => {
                    let second = read(&path)?;
                    let object = parse_object(text(&second)?)?;
                    bytes.extend_from_slice(&second);
                    Some(object)
                }
                None => None,
            };
            let value = compute(&command, &input, &Options { dim, with })?;
            println!("{}", serde_json::to_string_pretty(&result_document(&command, &bytes, value)).expect("json"));
            Ok(true)
        }
        Command::Verify { suite, trials, seed, max_rank, max_degree, report } => {
            let bounds = Bounds { max_rank, max_degree };
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let mut reports = Vec::new();
            for name in names {
                let r = run_suite(name, trials, seed, bounds)?;
                let status = if r.pass { "PASS" } else { "FAIL" };
                println!(
                    "{status} {} trials={} checks={} failures={} elapsed={:.3}s",
                    r.suite_name,
                    r.trials,
                    r.checks,
                    r.failures.len(),
                    r.elapsed_secs
                );
                if let Some(first) = r.failures.first() {
                    eprintln!("{}", serde_json::to_string_pretty(first).expect("json"));
                }
                reports.push(r);
            }
            let pass = reports.iter().all(|r| r.pass);
            if let Some(path) = report {
                let body = if reports.len() == 1 {
                    serde_json::to_string_pretty(&reports[0])
                } else {
                    serde_json::to_string_pretty(&reports)
                }
                .expect("json");
                std::fs::write(&path, body + "\n").map_err(|e| Failed::Usage(format!("{}: {e}", path.display())))?;
            }
            Ok(pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failed::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failed::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
