//! Command-line front end. The `bcalc` binary is a thin wrapper around
//! [`run`].

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};

use crate::lambda_pair::star_translate;
use crate::library::{axiom_term, catalog_term, AxiomId, CATALOG};
use crate::parse::{parse_term, parse_type, parse_untyped, ParseError};
use crate::print::print_term;
use crate::reduction::{Reducer, ReductionError, Strategy};
use crate::sequent::{
    check_derivation, eliminate_cuts_with_budget, nd_to_sequent, parse_derivation, parse_sequent,
    search_cut_free, sequent_to_term, SequentError, DEFAULT_CUT_BUDGET, DEFAULT_SEARCH_DEPTH,
};
use crate::syntax::TypeExpr;
use crate::typing::{check, infer_principal, InferError, TypeError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    /// Type error or invalid derivation.
    Rejected = 1,
    Syntax = 2,
    Budget = 3,
    Usage = 4,
}

impl ExitCode {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "bcalc",
    version,
    about = "Affine lambda calculus with pairs and break"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct AtomArgs {
    #[arg(long = "A", default_value = "A", value_name = "TYPE")]
    pub a: String,
    #[arg(long = "B", default_value = "B", value_name = "TYPE")]
    pub b: String,
    #[arg(long = "C", default_value = "C", value_name = "TYPE")]
    pub c: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the type of a term.
    Check { file: String },
    /// Print the principal type scheme of an unannotated term.
    Infer { file: String },
    /// Print the normal form, preceded by the trace with --trace.
    Normalize {
        file: String,
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = 100_000)]
        max_steps: usize,
        /// Admit the b-l-conv rule, which breaks confluence.
        #[arg(long)]
        experimental_blconv: bool,
        #[arg(long, default_value = "first")]
        strategy: Strategy,
    },
    /// Print the translation into the calculus with projections.
    Translate { file: String },
    /// Print the term inhabiting an axiom (B1, B2, B3, B4, B5a, B5b).
    Axioms {
        id: AxiomId,
        #[command(flatten)]
        atoms: AtomArgs,
    },
    /// Print a named library term.
    Catalog {
        name: String,
        #[command(flatten)]
        atoms: AtomArgs,
    },
    /// Sequent calculus tools.
    #[command(subcommand)]
    Sequent(SequentCommand),
}

#[derive(Debug, Subcommand)]
pub enum SequentCommand {
    /// Check a derivation and print its end sequent.
    Check { file: String },
    /// Print a cut-free derivation of the same end sequent.
    Cutelim {
        file: String,
        #[arg(long, default_value_t = DEFAULT_CUT_BUDGET)]
        budget: usize,
    },
    /// Print the derivation corresponding to a term.
    Fromterm { file: String },
    /// Print a term corresponding to a derivation.
    Toterm { file: String },
    /// Search for a derivation without cuts or breaks.
    Search {
        sequent: String,
        #[arg(long, default_value_t = DEFAULT_SEARCH_DEPTH)]
        depth: usize,
    },
}

#[derive(Debug)]
enum Failure {
    Rejected(String),
    Syntax(String),
    Budget(String),
    Usage(String),
}

impl Failure {
    fn code(&self) -> ExitCode {
        match self {
            Failure::Rejected(_) => ExitCode::Rejected,
            Failure::Syntax(_) => ExitCode::Syntax,
            Failure::Budget(_) => ExitCode::Budget,
            Failure::Usage(_) => ExitCode::Usage,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Rejected(m) | Failure::Syntax(m) | Failure::Budget(m) | Failure::Usage(m) => m,
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Syntax(e.to_string())
    }
}

impl From<TypeError> for Failure {
    fn from(e: TypeError) -> Self {
        Failure::Rejected(format!("type error: {e}"))
    }
}

impl From<InferError> for Failure {
    fn from(e: InferError) -> Self {
        Failure::Rejected(format!("type error: {e}"))
    }
}

impl From<ReductionError> for Failure {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::StepBudgetExceeded(_) => Failure::Budget(e.to_string()),
            _ => Failure::Rejected(e.to_string()),
        }
    }
}

impl From<SequentError> for Failure {
    fn from(e: SequentError) -> Self {
        match e {
            SequentError::Parse(p) => p.into(),
            SequentError::BudgetExceeded(_) => Failure::Budget(e.to_string()),
            _ => Failure::Rejected(e.to_string()),
        }
    }
}

fn read_input(file: &str, stdin: &mut dyn Read) -> Result<String, Failure> {
    let mut s = String::new();
    if file == "-" {
        stdin
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("cannot read standard input: {e}")))?;
    } else {
        s = std::fs::read_to_string(file)
            .map_err(|e| Failure::Usage(format!("cannot read {file}: {e}")))?;
    }
    Ok(s)
}

fn atoms(a: &AtomArgs) -> Result<(TypeExpr, TypeExpr, TypeExpr), Failure> {
    let p = |s: &str| parse_type(s).map_err(|e| Failure::Usage(format!("bad type `{s}`: {e}")));
    Ok((p(&a.a)?, p(&a.b)?, p(&a.c)?))
}

fn execute(cmd: Command, stdin: &mut dyn Read) -> Result<String, Failure> {
    Ok(match cmd {
        Command::Check { file } => {
            let t = parse_term(&read_input(&file, stdin)?)?;
            format!("{}\n", check(&t)?)
        }
        Command::Infer { file } => {
            let u = parse_untyped(&read_input(&file, stdin)?)?;
            format!("{}\n", infer_principal(&u)?)
        }
        Command::Normalize {
            file,
            trace,
            max_steps,
            experimental_blconv,
            strategy,
        } => {
            let t = parse_term(&read_input(&file, stdin)?)?;
            check(&t)?;
            let reducer = Reducer {
                experimental_blconv,
                strategy,
            };
            let (nf, tr) = reducer.normalize(&t, max_steps)?;
            let mut out = if trace { tr.to_string() } else { String::new() };
            out.push_str(&print_term(&nf));
            out.push('\n');
            out
        }
        Command::Translate { file } => {
            let t = parse_term(&read_input(&file, stdin)?)?;
            format!("{}\n", star_translate(&t)?)
        }
        Command::Axioms { id, atoms: args } => {
            let (a, b, c) = atoms(&args)?;
            format!("{}\n", print_term(&axiom_term(id, &a, &b, &c)))
        }
        Command::Catalog { name, atoms: args } => {
            let (a, b, c) = atoms(&args)?;
            let t = catalog_term(&name, &a, &b, &c).ok_or_else(|| {
                Failure::Usage(format!(
                    "unknown catalog entry `{name}` (known: {})",
                    CATALOG.join(", ")
                ))
            })?;
            format!("{}\n", print_term(&t))
        }
        Command::Sequent(sc) => match sc {
            SequentCommand::Check { file } => {
                let d = parse_derivation(&read_input(&file, stdin)?)?;
                format!("{}\n", check_derivation(&d)?)
            }
            SequentCommand::Cutelim { file, budget } => {
                let d = parse_derivation(&read_input(&file, stdin)?)?;
                format!("{}\n", eliminate_cuts_with_budget(&d, budget)?)
            }
            SequentCommand::Fromterm { file } => {
                let t = parse_term(&read_input(&file, stdin)?)?;
                format!("{}\n", nd_to_sequent(&t)?)
            }
            SequentCommand::Toterm { file } => {
                let d = parse_derivation(&read_input(&file, stdin)?)?;
                let (t, _) = sequent_to_term(&d)?;
                format!("{}\n", print_term(&t))
            }
            SequentCommand::Search { sequent, depth } => {
                let goal = parse_sequent(&sequent)?;
                match search_cut_free(&goal, depth) {
                    Some(d) => format!("{d}\n"),
                    None => {
                        return Err(Failure::Rejected(format!(
                            "no cut-free, break-free derivation of {goal} within depth {depth}"
                        )))
                    }
                }
            }
        },
    })
}

/// Runs the command line `args` (program name first) and reports the exit
/// code. Diagnostics go to `err`.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                ExitCode::Usage
            } else {
                ExitCode::Success
            };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(cli.command, stdin) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            ExitCode::Success
        }
        Err(f) => {
            let _ = writeln!(err, "bcalc: {}", f.message());
            f.code()
        }
    }
}
