use thiserror::Error;

use crate::nodeset::NodeSet;

pub type Result<T, E = CbckError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CbckError {
    #[error("a tree needs at least one node")]
    EmptyTree,
    #[error("node 0 is the root and cannot have a parent")]
    RootHasParent,
    #[error("node {node} has no parent; only node 0 may be a root")]
    MultiRoot { node: usize },
    #[error("node {node} names parent {parent}, which is out of range")]
    InvalidParent { node: usize, parent: usize },
    #[error("parent chain of node {node} never reaches the root")]
    Cycle { node: usize },
    #[error("the root has {atoms} children; a subdirectly irreducible algebra has a single atom")]
    MultiAtom { atoms: usize },
    #[error("{nodes} nodes exceed the supported maximum of {max}")]
    TooLarge { nodes: usize, max: usize },
    #[error("brute-force enumeration over {nodes} nodes exceeds the cap of {cap}")]
    Limit { nodes: usize, cap: usize },
    #[error("{k} is not a proper non-trivial divisor of the height {height}")]
    Divisor { k: u32, height: u32 },
    #[error("cannot attach a leaf at node {anchor}: {reason}")]
    Anchor { anchor: usize, reason: &'static str },
    #[error("glued chains need at least two branches, got {branches}")]
    Arity { branches: usize },
    #[error("glued chains need a stem of height at least 1 and branches of length at least 1")]
    Atom,
    #[error("variety difference has {len} members, above the oracle cap of {cap}")]
    Size { len: usize, cap: usize },
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(
        "two non-isomorphic minimal non-embeddable subalgebras {} and {} contain the new leaf",
        NodeSet::from_bits(*first),
        NodeSet::from_bits(*second)
    )]
    Minimality { first: u64, second: u64 },
    #[error("property violated: {0}")]
    PropertyViolation(String),
}

impl CbckError {
    /// True for errors that signal a broken mathematical invariant rather
    /// than bad input.
    pub fn is_property_violation(&self) -> bool {
        matches!(
            self,
            CbckError::Minimality { .. } | CbckError::PropertyViolation(_)
        )
    }
}
