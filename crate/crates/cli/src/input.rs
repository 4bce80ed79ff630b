use std::path::Path;

use cbck::{CbckAlgebra, CbckError, TreeSpec};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] CbckError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_property_violation() => 3,
            _ => 2,
        }
    }
}

/// A parsed input tree together with where it came from.
pub struct Input {
    pub label: String,
    pub algebra: CbckAlgebra,
}

/// Undoes the `-,` → `_,` rewrite applied to the command line.
pub fn display_arg(arg: &str) -> String {
    match arg.strip_prefix("_,") {
        Some(rest) => format!("-,{rest}"),
        None => arg.to_string(),
    }
}

fn parse_one(text: &str, origin: impl FnOnce() -> String) -> Result<CbckAlgebra, CliError> {
    text.parse::<TreeSpec>()
        .and_then(|spec| spec.build())
        .map_err(|e| CliError::Input(format!("{}: {e}", origin())))
}

/// A tree argument is a shorthand (`S:n`, `M:p1,..,pk:q`), a parent list, or
/// a file holding one tree per line (`#` starts a comment).
pub fn read_trees(arg: &str) -> Result<Vec<Input>, CliError> {
    let path = Path::new(arg);
    if !path.is_file() {
        let label = display_arg(arg);
        let algebra = parse_one(arg, || format!("argument `{label}`"))?;
        return Ok(vec![Input { label, algebra }]);
    }
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: arg.to_string(),
        source,
    })?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let algebra = parse_one(line, || format!("{arg}:{}", i + 1))?;
        out.push(Input {
            label: line.to_string(),
            algebra,
        });
    }
    if out.is_empty() {
        return Err(CliError::Input(format!("{arg}: no trees found")));
    }
    Ok(out)
}

pub fn read_all(args: &[String]) -> Result<Vec<Input>, CliError> {
    let mut out = Vec::new();
    for arg in args {
        out.extend(read_trees(arg)?);
    }
    Ok(out)
}

/// Exactly one tree, for commands that act on a single algebra.
pub fn read_single(arg: &str) -> Result<Input, CliError> {
    let mut trees = read_trees(arg)?;
    if trees.len() != 1 {
        return Err(CliError::Input(format!(
            "{arg}: expected one tree, found {}",
            trees.len()
        )));
    }
    Ok(trees.remove(0))
}

/// Generators of a variety written as `T1+T2+...`.
pub fn read_generators(arg: &str) -> Result<Vec<Input>, CliError> {
    let parts: Vec<String> = arg.split('+').map(str::to_string).collect();
    read_all(&parts)
}

/// Brute-force cap, overridable through `CBCK_SIZE_CAP`.
pub fn size_cap(default: usize) -> Result<usize, CliError> {
    match std::env::var("CBCK_SIZE_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("CBCK_SIZE_CAP: `{v}` is not a size"))),
        Err(_) => Ok(default),
    }
}
