//! Chains `S_n` and glued chains `M_P(S_q)`.

use std::str::FromStr;

use crate::algebra::CbckAlgebra;
use crate::error::{CbckError, Result};
use crate::tree::RootedTree;

/// `S_n`: the chain `0 < 1 < .. < n` with truncated subtraction.
pub fn chain(n: usize) -> CbckAlgebra {
    let parents: Vec<usize> = (0..=n).map(|i| i.saturating_sub(1)).collect();
    CbckAlgebra::from_parents(&parents).expect("a path has one atom")
}

/// `M_P(S_q)`: chains of lengths `branches` glued on top of `S_q`.
///
/// Branches are laid out longest first, so equal `P` up to order give equal
/// node numberings.
pub fn glued(branches: &[usize], q: usize) -> Result<CbckAlgebra> {
    if branches.len() < 2 {
        return Err(CbckError::Arity {
            branches: branches.len(),
        });
    }
    if q == 0 || branches.contains(&0) {
        return Err(CbckError::Atom);
    }
    let mut lengths = branches.to_vec();
    lengths.sort_unstable_by(|a, b| b.cmp(a));

    let mut parents: Vec<usize> = (0..=q).map(|i| i.saturating_sub(1)).collect();
    for len in lengths {
        let mut below = q;
        for _ in 0..len {
            parents.push(below);
            below = parents.len() - 1;
        }
    }
    CbckAlgebra::from_parents(&parents)
}

/// `M_k(S_q)`: `k` single leaves on top of `S_q`.
pub fn fan(k: usize, q: usize) -> Result<CbckAlgebra> {
    glued(&vec![1; k], q)
}

/// A tree given inline: a parent list (`-,0,1,1`), a chain (`S:3`), or a
/// glued chain (`M:2,1:3` for `M_{2,1}(S_3)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeSpec {
    Parents(RootedTree),
    Chain(usize),
    Glued { branches: Vec<usize>, q: usize },
}

impl TreeSpec {
    pub fn build(&self) -> Result<CbckAlgebra> {
        match self {
            TreeSpec::Parents(tree) => CbckAlgebra::build(tree.clone()),
            TreeSpec::Chain(n) => Ok(chain(*n)),
            TreeSpec::Glued { branches, q } => glued(branches, *q),
        }
    }
}

impl FromStr for TreeSpec {
    type Err = CbckError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let num = |tok: &str| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| CbckError::Parse(format!("`{tok}` is not a count in `{s}`")))
        };
        if let Some(rest) = s.strip_prefix("S:") {
            return Ok(TreeSpec::Chain(num(rest)?));
        }
        if let Some(rest) = s.strip_prefix("M:") {
            let (list, q) = rest
                .rsplit_once(':')
                .ok_or_else(|| CbckError::Parse(format!("`{s}`: expected M:p1,..,pk:q")))?;
            let branches = list.split(',').map(num).collect::<Result<Vec<_>>>()?;
            return Ok(TreeSpec::Glued {
                branches,
                q: num(q)?,
            });
        }
        Ok(TreeSpec::Parents(s.parse()?))
    }
}

pub fn parse_algebra(s: &str) -> Result<CbckAlgebra> {
    s.parse::<TreeSpec>()?.build()
}

impl CbckAlgebra {
    pub fn from_tree_str(s: &str) -> Result<Self> {
        parse_algebra(s)
    }
}
