//! `cbck`: build, inspect and compare finite cBCK-algebras from the shell.

mod commands;
mod input;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use cbck::{CandidateRule, CovMode};
use clap::{Args, Parser, Subcommand};

use commands::CoversOptions;
use input::{display_arg, read_all, read_generators, read_single, CliError};
use report::{Payload, RunReport};

#[derive(Parser)]
#[command(
    name = "cbck",
    version,
    about = "Finite cBCK-algebras, their subalgebras and varieties"
)]
struct Cli {
    #[command(flatten)]
    output: OutputFlags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputFlags {
    /// Emit a JSON report instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Include elapsed time in the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the axioms and report height, width and identities.
    Check {
        /// Trees: parent lists, `S:n`, `M:p1,..,pk:q`, or files.
        #[arg(required = true)]
        trees: Vec<String>,
    },
    /// List subalgebras.
    Subs {
        #[arg(required = true)]
        trees: Vec<String>,
        /// Enumerate all subsets instead of closing upwards.
        #[arg(long)]
        brute: bool,
        /// Tag each subalgebra as an ideal or divisor subalgebra.
        #[arg(long)]
        classified: bool,
    },
    /// Compute Cov(A) and the covers of the variety generated by A.
    Covers {
        tree: String,
        #[arg(long, default_value_t = CovMode::Reduced)]
        mode: CovMode,
        #[arg(long, default_value_t = CandidateRule::Least)]
        rule: CandidateRule,
        /// Confirm every cover by brute force.
        #[arg(long)]
        oracle: bool,
        /// Write one DOT file per Cov(A) member into this directory.
        #[arg(long)]
        dot_dir: Option<PathBuf>,
    },
    /// Varieties generated by a list of trees.
    #[command(args_conflicts_with_subcommands = true)]
    Var {
        #[command(subcommand)]
        action: Option<VarAction>,
        trees: Vec<String>,
        /// Also compute covers of the variety.
        #[arg(long)]
        covers: bool,
        #[arg(long, default_value_t = CandidateRule::Least)]
        rule: CandidateRule,
        /// Confirm every cover by brute force.
        #[arg(long)]
        oracle: bool,
    },
    /// Write a tree as a Graphviz DOT diagram.
    Render {
        tree: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check every single-atom tree up to a size.
    Sweep {
        #[arg(long, default_value_t = 7)]
        max_nodes: usize,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value_t = CandidateRule::Least)]
        rule: CandidateRule,
    },
}

#[derive(Subcommand)]
enum VarAction {
    /// Decide whether W covers V; generators are joined with `+`.
    CoverCheck { lower: String, upper: String },
}

fn run(command: &Command) -> Result<(String, Vec<String>, Payload), CliError> {
    Ok(match command {
        Command::Check { trees } => {
            let inputs = read_all(trees)?;
            ("check".into(), trees.clone(), commands::cmd_check(&inputs)?)
        }
        Command::Subs {
            trees,
            brute,
            classified,
        } => {
            let inputs = read_all(trees)?;
            let payload = commands::cmd_subs(&inputs, *brute, *classified)?;
            ("subs".into(), trees.clone(), payload)
        }
        Command::Covers {
            tree,
            mode,
            rule,
            oracle,
            dot_dir,
        } => {
            let input = read_single(tree)?;
            let opts = CoversOptions {
                mode: *mode,
                rule: *rule,
                oracle: *oracle,
                dot_dir: dot_dir.as_deref(),
            };
            (
                "covers".into(),
                vec![tree.clone()],
                commands::cmd_covers(&input, &opts)?,
            )
        }
        Command::Var {
            action: Some(VarAction::CoverCheck { lower, upper }),
            ..
        } => {
            let payload =
                commands::cmd_cover_check(&read_generators(lower)?, &read_generators(upper)?)?;
            (
                "var cover-check".into(),
                vec![lower.clone(), upper.clone()],
                payload,
            )
        }
        Command::Var {
            action: None,
            trees,
            covers,
            rule,
            oracle,
        } => {
            let inputs = read_all(trees)?;
            let payload = commands::cmd_var(&inputs, *covers, *rule, *oracle)?;
            ("var".into(), trees.clone(), payload)
        }
        Command::Render { tree, output } => {
            let input = read_single(tree)?;
            let payload = commands::cmd_render(&input, output.as_deref())?;
            ("render".into(), vec![tree.clone()], payload)
        }
        Command::Sweep {
            max_nodes,
            jobs,
            rule,
        } => {
            let payload = commands::cmd_sweep(*max_nodes, *jobs, *rule)?;
            ("sweep".into(), vec![max_nodes.to_string()], payload)
        }
    })
}

// Parent lists start with `-` for the root, which clap would take for a flag;
// `_` is the equivalent spelling.
fn normalize(arg: OsString) -> OsString {
    match arg.to_str() {
        Some(s) if s.starts_with("-,") => format!("_{}", &s[1..]).into(),
        _ => arg,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse_from(std::env::args_os().map(normalize));
    let start = Instant::now();
    let (command, inputs, payload) = match run(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let violated = match &payload {
        Payload::Sweep(s) => s.axiom_failures + s.classification_mismatches + s.cover_errors > 0,
        _ => false,
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let mut out = std::io::stdout().lock();
    if cli.output.json {
        let report = RunReport {
            version: env!("CARGO_PKG_VERSION"),
            command,
            inputs: inputs.iter().map(|s| display_arg(s)).collect(),
            elapsed_ms: cli.output.timing.then(|| start.elapsed().as_millis()),
            result: payload,
        };
        let json = serde_json::to_string_pretty(&report).expect("report serializes");
        let _ = writeln!(out, "{json}");
    } else {
        let _ = write!(out, "{}", payload.human());
        if cli.output.timing {
            let _ = writeln!(out, "elapsed {} ms", start.elapsed().as_millis());
        }
    }
    if violated {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}
