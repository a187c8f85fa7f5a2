//! `repshift`: representation shifts, subgroup counts, lifting verdicts and
//! Laurent polynomial tools from the command line.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use repshift_core::repshift::DEFAULT_BUDGET;
use serde_json::{json, Map, Value};

pub const SCHEMA: u64 = 1;

#[derive(Parser, Debug)]
#[command(name = "repshift", version, about = "Representation shifts of Z-groups")]
struct Cli {
    /// Bound on search nodes visited by each homomorphism enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Add wall-clock time to the report (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the representation graph of a presentation into a finite group.
    Graph {
        file: PathBuf,
        #[arg(long)]
        target: String,
        /// Write Graphviz output here (`-` for stdout).
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Print a JSON report instead of a text listing.
        #[arg(long)]
        json: bool,
        /// Window length of the presentation (1 gives the plain graph).
        #[arg(long, default_value_t = 1)]
        block: usize,
    },
    /// Classify the representation shift as finite, countable or uncountable.
    Classify {
        file: PathBuf,
        #[arg(long)]
        target: String,
        /// Also count points of period 1..=N.
        #[arg(long, value_name = "N")]
        periodic: Option<usize>,
    },
    /// Count subgroups of index r (2..=5) of the kernel.
    Subgroups {
        file: PathBuf,
        #[arg(long)]
        index: usize,
    },
    /// Analyse lifts of periodic representations through a split extension.
    Lift {
        file: PathBuf,
        /// Extension name: S3/S2, A4/Z3 or S4/S3.
        #[arg(long)]
        ext: String,
        /// `cycle:<edge>,<edge>,...` (edge labels or ids) in the quotient graph, or `seq:<step>;<step>`
        /// with family values separated by `/`.
        #[arg(long, required_unless_present = "all_periodic", conflicts_with = "all_periodic")]
        rep: Option<String>,
        /// Sweep every periodic representation onto the quotient.
        #[arg(long, requires = "max_period")]
        all_periodic: bool,
        #[arg(long, requires = "all_periodic")]
        max_period: Option<usize>,
    },
    /// Laurent polynomial computations.
    #[command(subcommand)]
    Alex(AlexCommand),
}

#[derive(Subcommand, Debug)]
enum AlexCommand {
    /// Characteristic polynomial pulled back along s = t^r.
    Pullback {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        r: usize,
    },
    /// Two-fold cover criterion for a 2x2 block-circulant matrix.
    Cover2 {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long = "mod", value_name = "P")]
        modulus: Option<u64>,
    },
    /// Three-fold cover criterion for a 3x3 block-circulant matrix.
    Cover3 {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long = "mod", value_name = "P")]
        modulus: Option<u64>,
    },
    /// Determinant of a polynomial matrix.
    Det {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long = "mod", value_name = "P")]
        modulus: Option<u64>,
    },
}

/// A failed command, with the exit code it maps to.
#[derive(Debug)]
pub enum Failure {
    /// Message plus optional full usage text.
    Usage(String, Option<String>),
    Io { path: PathBuf, message: String },
    Core { file: Option<String>, error: repshift_core::Error },
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(..) => 2,
            Failure::Io { .. } => 1,
            Failure::Core { error, .. } => match error {
                repshift_core::Error::Parse(_) | repshift_core::Error::Config(_) => 2,
                _ => 1,
            },
        }
    }

    fn diagnostic(&self) -> Value {
        let mut err = Map::new();
        match self {
            Failure::Usage(msg, _) => {
                err.insert("kind".into(), json!("usage"));
                err.insert("message".into(), json!(msg));
            }
            Failure::Io { path, message } => {
                err.insert("kind".into(), json!("io"));
                err.insert("file".into(), json!(path.display().to_string()));
                err.insert("message".into(), json!(message));
            }
            Failure::Core { file, error } => {
                err.insert("kind".into(), json!(error.kind()));
                if let Some(f) = file {
                    err.insert("file".into(), json!(f));
                }
                match error {
                    repshift_core::Error::Parse(p) => {
                        err.insert("line".into(), json!(p.line));
                        err.insert("col".into(), json!(p.col));
                        err.insert("message".into(), json!(p.message));
                    }
                    e => {
                        err.insert("message".into(), json!(e.to_string()));
                    }
                }
            }
        }
        json!({ "schema": SCHEMA, "error": Value::Object(err) })
    }

    fn human(&self) -> String {
        match self {
            Failure::Usage(_, Some(text)) => text.trim_end().to_string(),
            Failure::Usage(msg, None) => format!("error: {msg}"),
            Failure::Io { path, message } => format!("error: {}: {message}", path.display()),
            Failure::Core { file: Some(f), error: repshift_core::Error::Parse(p) } => {
                format!("error: {f}:{}:{}: {}", p.line, p.col, p.message)
            }
            Failure::Core { file: Some(f), error } => format!("error: {f}: {error}"),
            Failure::Core { file: None, error } => format!("error: {error}"),
        }
    }
}

fn fail(f: &Failure) -> ExitCode {
    eprintln!("{}", f.diagnostic());
    eprintln!("{}", f.human());
    ExitCode::from(f.code())
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let text = e.render().to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            let message = first.strip_prefix("error: ").unwrap_or(first).to_string();
            return fail(&Failure::Usage(message, Some(text)));
        }
    };
    let start = Instant::now();
    let opts = repshift_core::repshift::BuildOptions { budget: cli.budget };
    let out = repshift_core::repshift::with_workers(|| commands::run(&cli.command, &opts));
    match out {
        Ok(out) => {
            let mut report = Map::new();
            report.insert("schema".into(), json!(SCHEMA));
            report.insert("tool".into(), json!("repshift"));
            report.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
            report.insert("command".into(), json!(argv[1..]));
            report.insert("input_sha256".into(), json!(out.digest));
            report.extend(out.fields);
            if cli.timing {
                report.insert("elapsed_ms".into(), json!(start.elapsed().as_millis() as u64));
            }
            if let Some(text) = &out.text {
                print!("{text}");
            } else {
                println!("{}", Value::Object(report));
            }
            ExitCode::SUCCESS
        }
        Err(f) => fail(&f),
    }
}
