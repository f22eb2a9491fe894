//! The `qwa` command line. Exit codes: 0 pass, 1 semantic failure,
//! 2 parse or configuration error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::dixmier::{invert, root_counterexample};
use crate::error::Error;
use crate::homs::{compose, HomData};
use crate::io;
use crate::selftest;
use crate::tame::{compose_chain, decompose};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "qwa", version, about = "Homomorphisms and automorphisms of quantum Weyl analogue algebras")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "human", global = true)]
    pub output: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the four parameter equations of a bundle.
    Validate { hom: PathBuf },
    /// Check every defining relation on the generator images.
    CheckRelations { hom: PathBuf },
    /// Apply a bundle to an element of its source algebra.
    Apply { hom: PathBuf, element: PathBuf },
    /// The bundle of SECOND ∘ FIRST.
    Compose { first: PathBuf, second: PathBuf },
    /// Invert an automorphism bundle.
    Invert { hom: PathBuf },
    /// Write an automorphism as a chain of tame generators.
    Decompose { hom: PathBuf },
    /// Compose a generator chain, first entry applied first.
    ComposeChain { algebra: PathBuf, chain: PathBuf },
    /// A non-invertible endomorphism of a root-of-unity algebra.
    Counterexample {
        algebra: PathBuf,
        /// 1-based factor index.
        #[arg(long, default_value_t = 1)]
        factor: usize,
    },
    /// Run the randomized property checks at reduced counts.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

enum Failure {
    /// Exit 1.
    Semantic(String, serde_json::Value),
    /// Exit 2.
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Semantic(e.to_string(), json!({ "error": e.to_string() }))
        }
    }
}

/// What a successful command prints: an artifact or a report.
enum Output {
    Artifact(String),
    Report { human: String, structured: serde_json::Value },
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_hom(path: &Path) -> Result<HomData, Failure> {
    io::parse_hom(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<crate::algebra::Algebra, Failure> {
    io::parse_algebra(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn execute(command: &Command) -> Result<Output, Failure> {
    match command {
        Command::Validate { hom } => {
            let data = load_hom(hom)?;
            let report = data.validate()?;
            let failures: Vec<_> = report
                .failures
                .iter()
                .map(|f| json!({ "equation": f.equation.to_string(), "i": f.i + 1, "l": f.l.map(|l| l + 1) }))
                .collect();
            let structured = json!({ "valid": report.passed(), "failures": failures });
            if report.passed() {
                Ok(Output::Report { human: "valid".into(), structured })
            } else {
                Err(Failure::Semantic(report.to_string(), structured))
            }
        }
        Command::CheckRelations { hom } => {
            let data = load_hom(hom)?;
            let failing = data.relation_failures()?;
            let structured = json!({ "holds": failing.is_empty(), "failing_relations": failing });
            if failing.is_empty() {
                Ok(Output::Report { human: "all relations hold".into(), structured })
            } else {
                let human = failing.iter().map(|r| format!("relation fails: {r}")).collect::<Vec<_>>().join("\n");
                Err(Failure::Semantic(human, structured))
            }
        }
        Command::Apply { hom, element } => {
            let data = load_hom(hom)?;
            let text = read(element)?;
            let a = io::parse_element(&data.source, &text)
                .map_err(|e| Failure::Input(format!("{}: {e}", element.display())))?;
            Ok(Output::Artifact(io::serialize_element(&data.apply(&a)?)))
        }
        Command::Compose { first, second } => {
            let (f, g) = (load_hom(first)?, load_hom(second)?);
            Ok(Output::Artifact(io::serialize_hom(&compose(&f, &g)?)))
        }
        Command::Invert { hom } => {
            let data = load_hom(hom)?;
            match invert(&data) {
                Ok(inv) => Ok(Output::Artifact(io::serialize_hom(&inv))),
                Err(Error::NotInvertible(msg)) => Err(Failure::Semantic(
                    format!("not invertible: {msg}"),
                    json!({ "invertible": false, "reason": msg }),
                )),
                Err(e) => Err(e.into()),
            }
        }
        Command::Decompose { hom } => {
            let data = load_hom(hom)?;
            Ok(Output::Artifact(io::serialize_chain(&decompose(&data)?)))
        }
        Command::ComposeChain { algebra, chain } => {
            let a = load_algebra(algebra)?;
            let gens = io::parse_chain(&a, &read(chain)?)
                .map_err(|e| Failure::Input(format!("{}: {e}", chain.display())))?;
            Ok(Output::Artifact(io::serialize_hom(&compose_chain(&gens, &a)?)))
        }
        Command::Counterexample { algebra, factor } => {
            let a = load_algebra(algebra)?;
            if *factor == 0 || *factor > a.n() {
                return Err(Failure::Input(format!("factor {factor} out of range 1..={}", a.n())));
            }
            Ok(Output::Artifact(io::serialize_hom(&root_counterexample(a.config(), factor - 1)?)))
        }
        Command::Selftest { seed, count } => {
            let checks = selftest::run(*seed, *count);
            let human = checks
                .iter()
                .map(|c| format!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail))
                .collect::<Vec<_>>()
                .join("\n");
            let structured = json!({
                "seed": seed,
                "checks": checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect::<Vec<_>>(),
            });
            if checks.iter().all(|c| c.passed) {
                Ok(Output::Report { human, structured })
            } else {
                Err(Failure::Semantic(human, structured))
            }
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

/// Parses `args` and runs the command, returning the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let structured = cli.output == OutputFormat::Structured;
    let result = execute(&cli.command);
    let (code, text, to_err) = match result {
        Ok(Output::Artifact(s)) => (0, s, false),
        Ok(Output::Report { human, structured: v }) => {
            (0, if structured { pretty(&v) + "\n" } else { human + "\n" }, false)
        }
        Err(Failure::Semantic(human, v)) => {
            if structured {
                (1, pretty(&v) + "\n", false)
            } else {
                (1, human + "\n", true)
            }
        }
        Err(Failure::Input(msg)) => {
            if structured {
                (2, pretty(&json!({ "error": msg })) + "\n", false)
            } else {
                (2, format!("error: {msg}\n"), true)
            }
        }
    };
    let _ = if to_err { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
    code
}
