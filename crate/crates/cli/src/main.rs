//! Command-line front-end: every operation reads JSON and writes JSON.
//!
//! Exit codes: 0 success, 1 parse error, 2 failed precondition,
//! 3 precision exhausted.

mod commands;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use weierpatch::{Error, ErrorClass};

#[derive(Parser, Debug)]
#[command(name = "weierpatch", version, about = "Exact power-series factorization and patching tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Weierstrass preparation a = t^m·u·g (ring Tx: restricted, TTx: local).
    Prepare,
    /// Weierstrass division f = q·g + r by a distinguished polynomial.
    Divide,
    /// Factor an invertible matrix over k((x⁻¹))[[t]] as left·right.
    FactorMatrix,
    /// Solve a free patching problem A = B·C.
    SolvePatch,
    /// Split a Laurent polynomial in x into its k[[x⁻¹]] and x·k[x] parts.
    AdditiveSplit,
    /// Branches y = φ(x) of a split node.
    BranchDecompose,
    /// Valuations of an element along each branch of a node.
    BranchVal,
    /// Check that branch valuations agree on each component.
    Obstruction,
    /// Build the abelian split cover of a reduction graph.
    SplitCover,
    /// Smallest admissible cover order for a graph or list of cycle images.
    ChooseN,
    /// Check the covering axioms of a graph cover.
    ValidateCover,
    /// Bounds on the u-invariant of a field descriptor.
    UBound,
    /// Bounds on the period-index exponent of a field descriptor.
    PerInd,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Options {
    /// Input file ("-" or absent: standard input).
    #[arg(short, long, global = true)]
    input: Option<PathBuf>,
    /// Inline JSON input, used instead of --input.
    #[arg(long, global = true)]
    json: Option<String>,
    /// Output file (default: standard output).
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Retained t-powers; overrides any "prec" in the input.
    #[arg(long, global = true)]
    pub nt: Option<usize>,
    /// Retained x-powers (x⁻¹-powers for Laurent coefficients).
    #[arg(long, global = true)]
    pub nx: Option<usize>,
    /// Largest positive x-degree a Laurent coefficient may carry.
    #[arg(long, global = true)]
    pub mx: Option<usize>,
    /// Ground field: q or fp:<p>.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Ring of bare series inputs: Tx, TTx, LaurentT or XY.
    #[arg(long, global = true)]
    pub ring: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub direction: Option<DirectionArg>,
    /// Cover order for split-cover.
    #[arg(long, global = true)]
    pub n: Option<u64>,
    #[arg(long, global = true)]
    pub roots_of_unity: bool,
    /// Also emit Graphviz DOT for graph outputs.
    #[arg(long, global = true)]
    pub dot: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirectionArg {
    Pu,
    Up,
}

fn read_input(opts: &Options) -> Result<Value, Error> {
    let text = match (&opts.json, &opts.input) {
        (Some(s), _) => s.clone(),
        (None, Some(p)) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::Parse(e.to_string()))?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("input is not JSON: {e}")))
}

fn exit_code(e: &Error) -> u8 {
    match e.class() {
        ErrorClass::Parse => 1,
        ErrorClass::Precondition => 2,
        ErrorClass::Precision => 3,
    }
}

fn run(cli: &Cli) -> Result<Value, Error> {
    let input = read_input(&cli.opts)?;
    commands::dispatch(cli.command, &cli.opts, &input)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&cli) {
        Ok(v) => {
            let mut text = serde_json::to_string_pretty(&v).expect("JSON values serialize");
            text.push('\n');
            let written = match &cli.opts.output {
                Some(p) => std::fs::write(p, text),
                None => std::io::stdout().write_all(text.as_bytes()),
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("cannot write output: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            let class = match e.class() {
                ErrorClass::Parse => "parse",
                ErrorClass::Precondition => "precondition",
                ErrorClass::Precision => "precision",
            };
            eprintln!("{}", json!({"error": class, "message": e.to_string()}));
            ExitCode::from(exit_code(&e))
        }
    }
}
