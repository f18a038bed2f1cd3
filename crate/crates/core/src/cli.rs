//! The `rado` command line.
//!
//! [`run`] parses arguments, executes one subcommand and returns the process
//! exit code, writing to the given streams so the whole surface can be
//! driven in-process. Exit codes: 0 success, 1 disagreement between theory
//! and search, 2 usage or parse error, 3 internal contradiction (including
//! a witness that fails validation), 4 I/O error, 5 violated precondition,
//! 6 search budget exhausted, 7 size cap exceeded, 8 arithmetic overflow.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::distrib::{is_t_distributable, sdc, SdcQuery};
use crate::equation::{parse_coeffs, Equation};
use crate::error::{RadoError, Result};
use crate::search::{export_cnf, SearchConfig, DEFAULT_NODE_BUDGET};
use crate::sweep::{
    consistent, oracle_cap, run_oracle, run_sweep, summarise, to_json, write_csv, ConstantRange,
    DistributabilityFilter, SweepSpec, RESIDUE_CHECK_LEN,
};
use crate::theorems::{rado_by_theorems_with_colours, OutcomeKind};
use crate::witness::{applicable_witnesses, best_witness, witness_mod_p, Witness};

/// Environment variable overriding the search node budget.
pub const BUDGET_ENV: &str = "RADO_NODE_BUDGET";

/// Search cap when theory gives no hint.
const UNINFORMED_CAP: u64 = 200;

#[derive(Debug, Parser)]
#[command(name = "rado", version, about = "Rado numbers for a1*x1 + ... + ak*xk - y = c")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form value or bounds, optionally confirmed by exhaustive search.
    Compute(ComputeArgs),
    /// Sweep many equations, comparing theory, search and witnesses.
    Verify(VerifyArgs),
    /// Set distribution coefficient of a multiset for given block targets.
    Sdc(SdcArgs),
    /// Prefix-sum test for t-distributability.
    Distributable(DistributableArgs),
    /// Print a validated witness colouring and the bound it certifies.
    Witness(WitnessArgs),
    /// Write the DIMACS formula for "[1, N] has a valid r-colouring".
    Cnf(CnfArgs),
}

#[derive(Debug, Args)]
pub struct EquationArgs {
    /// Positive coefficients, comma separated.
    #[arg(short = 'a', long = "coeffs", value_parser = coeff_list, allow_hyphen_values = true)]
    pub coeffs: List<u32>,
    /// Right-hand constant.
    #[arg(short = 'c', long = "constant", allow_hyphen_values = true)]
    pub c: i64,
}

impl EquationArgs {
    fn equation(&self) -> Result<Equation> {
        Equation::new(self.coeffs.0.clone(), self.c)
    }
}

/// A comma separated list argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct List<T>(pub Vec<T>);

fn coeff_list(s: &str) -> std::result::Result<List<u32>, String> {
    parse_coeffs(s).map(List).map_err(|e| e.to_string())
}

fn u64_list(s: &str) -> std::result::Result<List<u64>, String> {
    s.split(',')
        .map(|p| p.trim().parse::<u64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<std::result::Result<_, _>>()
        .map(List)
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub eq: EquationArgs,
    /// Number of colours.
    #[arg(short = 'r', long = "colours", default_value_t = 2)]
    pub r: usize,
    /// Also run the exhaustive search and compare.
    #[arg(long)]
    pub oracle: bool,
    /// Largest interval the search tries.
    #[arg(long)]
    pub n_max: Option<u64>,
    /// Split the search across threads.
    #[arg(long)]
    pub parallel: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FilterArg {
    Any,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Largest coefficient sum.
    #[arg(long, default_value_t = 4)]
    pub s_max: i64,
    /// Smallest coefficient sum.
    #[arg(long, default_value_t = 1)]
    pub s_min: i64,
    /// Largest single coefficient.
    #[arg(long, default_value_t = 4)]
    pub coeff_max: u32,
    /// Smallest constant; with --c-max replaces the default [-3S, S(S-1)+3S].
    #[arg(long, allow_hyphen_values = true, requires = "c_max")]
    pub c_min: Option<i64>,
    #[arg(long, allow_hyphen_values = true, requires = "c_min")]
    pub c_max: Option<i64>,
    /// Keep only multisets with this distributability.
    #[arg(long, value_enum, default_value = "any")]
    pub filter: FilterArg,
    /// Drop rows with cS odd.
    #[arg(long)]
    pub even_only: bool,
    /// Search cap per row (default: derived from the theory's prediction).
    #[arg(long)]
    pub n_max: Option<u64>,
    /// Write the semicolon-separated report here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Write the JSON report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Print the JSON report on stdout instead of the text summary.
    #[arg(long)]
    pub json: bool,
    /// Fill the ms column with wall-clock times (makes reports nondeterministic).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Args)]
pub struct SdcArgs {
    #[arg(short = 'a', long = "coeffs", value_parser = u64_list)]
    pub coeffs: List<u64>,
    /// Block targets, comma separated.
    #[arg(short = 't', long = "t", value_parser = u64_list)]
    pub targets: List<u64>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct DistributableArgs {
    #[arg(short = 'a', long = "coeffs", value_parser = u64_list)]
    pub coeffs: List<u64>,
    #[arg(short = 't', long = "t", default_value_t = 2)]
    pub t: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[command(flatten)]
    pub eq: EquationArgs,
    /// Number of colours (only the residue witness exists for r > 2).
    #[arg(short = 'r', long = "colours", default_value_t = 2)]
    pub r: usize,
    /// Print every applicable construction, not just the strongest.
    #[arg(long)]
    pub all: bool,
    /// Interval length for residue witnesses.
    #[arg(long, default_value_t = RESIDUE_CHECK_LEN)]
    pub len: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CnfArgs {
    #[command(flatten)]
    pub eq: EquationArgs,
    #[arg(short = 'r', long = "colours", default_value_t = 2)]
    pub r: usize,
    /// Interval [1, N].
    #[arg(short = 'n', long)]
    pub n: u64,
    /// Output file (stdout when absent).
    #[arg(long)]
    pub cnf: Option<PathBuf>,
}

/// Maps an error to its exit code.
pub fn exit_code(e: &RadoError) -> i32 {
    match e {
        RadoError::InvalidEquation(_) | RadoError::InvalidColouring(_) | RadoError::Parse(_) => 2,
        RadoError::Contradiction(_) => 3,
        RadoError::Io(_) => 4,
        RadoError::Precondition(_) | RadoError::PivotMismatch { .. } => 5,
        RadoError::BudgetExceeded(_) => 6,
        RadoError::CapExceeded(_) | RadoError::Capacity { .. } => 7,
        RadoError::Overflow => 8,
    }
}

/// Node budget from the environment, or the default.
pub fn node_budget() -> Result<u64> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| RadoError::Parse(format!("{BUDGET_ENV}={v:?} is not a node count"))),
        Err(_) => Ok(DEFAULT_NODE_BUDGET),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn io(e: std::io::Error) -> RadoError {
    RadoError::Io(e.to_string())
}

fn print_json(out: &mut dyn Write, v: &serde_json::Value) -> Result<()> {
    writeln!(out, "{v}").map_err(io)
}

/// Runs one parsed command and returns the exit code.
pub fn execute(cmd: &Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Compute(a) => compute(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Sdc(a) => {
            let q = SdcQuery::new(a.coeffs.0.clone(), a.targets.0.clone())?;
            let n = sdc(&q)?;
            if a.json {
                print_json(out, &json!({"coeffs": q.coeffs, "targets": q.targets, "sdc": n.to_string()}))?;
            } else {
                writeln!(out, "{n}").map_err(io)?;
            }
            Ok(0)
        }
        Command::Distributable(a) => {
            if a.t == 0 {
                return Err(RadoError::Precondition("t must be positive".into()));
            }
            if a.coeffs.0.contains(&0) {
                return Err(RadoError::Parse("coefficients must be positive".into()));
            }
            let rep = is_t_distributable(&a.coeffs.0, a.t);
            if a.json {
                let v = serde_json::to_value(&rep).map_err(|e| RadoError::Io(e.to_string()))?;
                print_json(out, &v)?;
            } else {
                match rep.failing_index {
                    None => writeln!(out, "true"),
                    Some(i) => writeln!(out, "false, failing index {i}"),
                }
                .map_err(io)?;
            }
            Ok(0)
        }
        Command::Witness(a) => witness(a, out),
        Command::Cnf(a) => {
            let eq = a.eq.equation()?;
            let cnf = export_cnf(&eq, a.n, a.r)?;
            match &a.cnf {
                Some(path) => {
                    let mut f = BufWriter::new(File::create(path).map_err(io)?);
                    f.write_all(cnf.to_dimacs().as_bytes()).map_err(io)?;
                    f.flush().map_err(io)?;
                    writeln!(out, "{} variables, {} clauses -> {}", cnf.num_vars, cnf.clauses.len(), path.display())
                        .map_err(io)?;
                }
                None => out.write_all(cnf.to_dimacs().as_bytes()).map_err(io)?,
            }
            Ok(0)
        }
    }
}

fn bracketed(tags: &[&str]) -> String {
    if tags.is_empty() {
        String::new()
    } else {
        format!(" [{}]", tags.join(", "))
    }
}

fn compute(a: &ComputeArgs, out: &mut dyn Write) -> Result<i32> {
    let eq = a.eq.equation()?;
    let theory = rado_by_theorems_with_colours(&eq, a.r)?;
    let tags: Vec<&str> = theory.decisive().iter().map(|r| r.tag()).collect();
    if !a.oracle {
        if a.json {
            print_json(out, &theory.to_json())?;
        } else {
            writeln!(out, "{eq}").map_err(io)?;
            writeln!(out, "theory: {}{}", theory.kind, bracketed(&tags)).map_err(io)?;
        }
        return Ok(0);
    }
    let cap = a.n_max.unwrap_or(match theory.kind {
        OutcomeKind::Unknown { .. } => UNINFORMED_CAP,
        ref k => oracle_cap(k),
    });
    let cfg = SearchConfig::new(cap)
        .colours(a.r)
        .parallel(a.parallel)
        .budget(Some(node_budget()?));
    let (oracle, colouring) = run_oracle(&eq, &cfg)?;
    let agree = consistent(&theory.kind, oracle);
    if a.json {
        let mut v = theory.to_json();
        v["r"] = json!(a.r);
        v["oracle"] = json!(oracle.to_string());
        v["agree"] = json!(agree);
        if let Some(col) = &colouring {
            v["colouring"] = json!(col.to_string());
        }
        print_json(out, &v)?;
    } else {
        writeln!(out, "{eq}").map_err(io)?;
        writeln!(out, "theory: {}{}", theory.kind, bracketed(&tags)).map_err(io)?;
        writeln!(out, "oracle: {oracle}").map_err(io)?;
        if let Some(col) = &colouring {
            writeln!(out, "valid colouring: {col}").map_err(io)?;
        }
        writeln!(out, "agree: {agree}").map_err(io)?;
    }
    Ok(if agree { 0 } else { 1 })
}

fn verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let constants = match (a.c_min, a.c_max) {
        (Some(lo), Some(hi)) => ConstantRange::Fixed(lo, hi),
        _ => ConstantRange::Scaled,
    };
    let mut spec = SweepSpec::new(a.s_max, a.coeff_max, constants);
    spec.s_min = a.s_min;
    spec.filter = match a.filter {
        FilterArg::Any => DistributabilityFilter::Any,
        FilterArg::Two => DistributabilityFilter::Two,
        FilterArg::Three => DistributabilityFilter::Three,
    };
    spec.even_only = a.even_only;
    spec.n_max = a.n_max;
    spec.timings = a.timings;
    spec.row_budget = std::env::var(BUDGET_ENV).map_or(Ok(spec.row_budget), |_| node_budget())?;
    let rows = run_sweep(&spec)?;
    if let Some(path) = &a.csv {
        write_csv(&rows, BufWriter::new(File::create(path).map_err(io)?))?;
    }
    let report = to_json(&rows);
    if let Some(path) = &a.report {
        let mut f = BufWriter::new(File::create(path).map_err(io)?);
        serde_json::to_writer_pretty(&mut f, &report).map_err(|e| RadoError::Io(e.to_string()))?;
        writeln!(f).map_err(io)?;
    }
    let s = summarise(&rows);
    if a.json {
        print_json(out, &report)?;
    } else {
        for row in rows.iter().filter(|r| !r.agree) {
            writeln!(out, "DISAGREE {}: {}", row.equation(), row.problems.join("; ")).map_err(io)?;
        }
        writeln!(
            out,
            "{} rows, {} agree, {} disagree, {} unknown, {} exact, {} witnesses checked",
            s.rows, s.agree, s.disagree, s.unknown, s.exact, s.witnesses
        )
        .map_err(io)?;
    }
    Ok(if s.disagree == 0 { 0 } else { 1 })
}

fn witness(a: &WitnessArgs, out: &mut dyn Write) -> Result<i32> {
    let eq = a.eq.equation()?;
    let found: Vec<Witness> = if a.r != 2 {
        vec![witness_mod_p(&eq, a.r)?.witness(&eq, a.len)?]
    } else if a.all {
        applicable_witnesses(&eq, a.len)
    } else {
        best_witness(&eq, a.len).into_iter().collect()
    };
    if found.is_empty() {
        return Err(RadoError::Precondition(format!("no witness construction applies to {eq}")));
    }
    for w in &found {
        if !w.check()? {
            return Err(RadoError::Contradiction(format!(
                "{} witness {} for {eq} failed validation",
                w.kind, w.colouring
            )));
        }
    }
    for w in &found {
        if a.json {
            print_json(out, &w.to_json())?;
        } else {
            writeln!(out, "{}", w.colouring).map_err(io)?;
            writeln!(out, "claim: {} ({})", w.claim, w.kind).map_err(io)?;
        }
    }
    Ok(0)
}
