//! `koszulkit`: JSON in, JSON out. Exit status 0 on success, 1 when a
//! certificate or suite check fails (the report is still written), 2 on
//! invalid input.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use koszulkit_core::{Error, Ring};
use koszulkit_harness::{ops, run_suite, Fixture, GenParams};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "koszulkit", version, about = "Exact homological algebra over Z and F_p[x]")]
struct Cli {
    /// Coefficient ring: `Z` or `fpx:p` for a prime p.
    #[arg(long, global = true, default_value = "Z")]
    ring: String,
    /// Suite seed.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Suite trial count.
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,
    /// Input JSON file; standard input when absent.
    #[arg(long = "in", global = true, value_name = "FILE.json")]
    input: Option<PathBuf>,
    /// Output JSON file; standard output when absent.
    #[arg(long, global = true, value_name = "FILE.json")]
    out: Option<PathBuf>,
    /// Fixture file `{"operation", "ring"?, "input"}`; supplies the input
    /// and, without a subcommand, the operation.
    #[arg(long, global = true, value_name = "FILE")]
    fixture: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Smith normal form with transforms.
    Snf,
    /// Homology in every degree.
    Homology,
    /// Mapping cone with its inclusion and projection.
    Cone,
    /// Mapping cylinder with j1, j2 and p.
    Cyl,
    /// Canonical truncation triple at degree `n`.
    Truncate,
    /// Truncation splitting at degree `n`.
    Split,
    /// Cellular factorization of a chain map.
    Factorize,
    /// The Koszul object kappa(X) with its certifying maps.
    Kappa,
    /// Resolution of a presented Koszul object by a free one.
    Resolve,
    /// The triple attached to a presented Koszul object.
    Efunctor,
    /// Excision epimorphism for an admissible mono out of an acyclic object.
    Excise,
    /// Elementary-divisor decomposition of a Koszul object.
    Eddecompose,
    /// K_0 classes of a Koszul object or of a torsion module.
    K0,
    /// Run a property suite.
    Suite {
        name: String,
        #[arg(long)]
        max_rank: Option<usize>,
        #[arg(long)]
        max_entry: Option<u32>,
        #[arg(long)]
        support_width: Option<usize>,
    },
}

impl Command {
    fn operation(&self) -> &'static str {
        match self {
            Command::Snf => "snf",
            Command::Homology => "homology",
            Command::Cone => "cone",
            Command::Cyl => "cyl",
            Command::Truncate => "truncate",
            Command::Split => "split",
            Command::Factorize => "factorize",
            Command::Kappa => "kappa",
            Command::Resolve => "resolve",
            Command::Efunctor => "efunctor",
            Command::Excise => "excise",
            Command::Eddecompose => "eddecompose",
            Command::K0 => "k0",
            Command::Suite { .. } => "suite",
        }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn read_json(path: Option<&PathBuf>) -> Result<Value, Error> {
    let text = match path {
        Some(p) => fs::read_to_string(p).map_err(|e| invalid(format!("{}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| invalid(e.to_string()))?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| invalid(format!("malformed JSON: {e}")))
}

fn write_json(path: Option<&PathBuf>, v: &Value) -> io::Result<()> {
    let text = serde_json::to_string_pretty(v).expect("values serialize") + "\n";
    match path {
        Some(p) => fs::write(p, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}

/// The report to emit and whether every check passed.
fn execute(cli: &Cli) -> Result<(Value, bool), Error> {
    let ring: Ring = cli.ring.parse()?;
    if let Some(Command::Suite { name, max_rank, max_entry, support_width }) = &cli.command {
        let mut p = GenParams { trials: cli.trials, ..GenParams::new(ring, cli.seed) };
        p.max_rank = max_rank.unwrap_or(p.max_rank);
        p.max_entry = max_entry.unwrap_or(p.max_entry);
        p.support_width = support_width.unwrap_or(p.support_width);
        let report = run_suite(name, &p)?;
        return Ok((report.to_json(), report.passed()));
    }
    let (op, input, ring) = match &cli.fixture {
        Some(path) => {
            let f = Fixture::from_json(&read_json(Some(path))?, ring)?;
            let op = cli.command.as_ref().map_or(f.operation.clone(), |c| c.operation().to_string());
            (op, f.input, f.ring)
        }
        None => {
            let c = cli.command.as_ref().ok_or_else(|| invalid("a subcommand or --fixture is required"))?;
            (c.operation().to_string(), read_json(cli.input.as_ref())?, ring)
        }
    };
    let outcome = ops::run(&op, &input, ring)?;
    let passed = outcome.violations.is_empty();
    let report = json!({
        "operation": op,
        "ring": ring.to_string(),
        "passed": passed,
        "violations": outcome.violations,
        "result": outcome.output,
    });
    Ok((report, passed))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(2);
        }
    };
    match execute(&cli) {
        Ok((report, passed)) => {
            if let Err(e) = write_json(cli.out.as_ref(), &report) {
                eprintln!("koszulkit: cannot write output: {e}");
                return ExitCode::from(2);
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let msg = json!({ "error": e.kind(), "message": e.to_string() });
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}
