//! Finite commutative BCK-algebras on rooted trees.
//!
//! Subdirectly irreducible finite cBCK-algebras are exactly the rooted trees
//! with a single atom. This crate builds them, enumerates and classifies their
//! subalgebras, and computes the covers of finitely generated varieties.

pub mod algebra;
pub mod builders;
pub mod covers;
pub mod dot;
pub mod enumerate;
pub mod error;
pub mod iso;
pub mod nodeset;
pub mod subalgebras;
pub mod tree;
pub mod variety;

pub use algebra::{AxiomReport, CbckAlgebra, Identity, MonusTable};
pub use builders::{chain, fan, glued, parse_algebra, TreeSpec};
pub use covers::{
    add_leaf, cov_set, cov_set_with, covers_of_si, covers_of_si_with, covers_of_variety,
    covers_of_variety_with, smallest_new, subalgebras_containing_c, CandidateRule, CovMode,
    CoverCandidate, LeafExtension,
};
pub use error::{CbckError, Result};
pub use iso::{canonical_form, dedup, is_isomorphic, CanonicalForm};
pub use nodeset::NodeSet;
pub use subalgebras::{
    classify, divisor_subalgebra, downset_subalgebras, enumerate_subalgebras_bruteforce,
    generated_subalgebra, is_subuniverse, s_delta, SubKind, Subuniverse,
};
pub use tree::RootedTree;
pub use variety::{cover_oracle, Variety};
