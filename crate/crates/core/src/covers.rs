//! Covers of varieties generated by one finite s.i. algebra.
//!
//! For a subalgebra `B` of `A` and a non-zero `a ∈ B`, glue a fresh leaf `c`
//! above `a` to get `B_a`. Among the subalgebras of `B_a` that contain `c`,
//! those not isomorphic to a subalgebra of `A` have a least member `C_a`.
//! Every cover of `⟨A⟩` is `⟨A⟩ ∨ ⟨C_a⟩` for one of these.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::algebra::CbckAlgebra;
use crate::builders::chain;
use crate::error::{CbckError, Result};
use crate::iso::CanonicalForm;
use crate::nodeset::NodeSet;
use crate::subalgebras::{
    all_subuniverses, carrier_key, s_delta_of_downsets, subalgebra_keys, subuniverses_containing,
    Classifier, Subuniverse,
};
use crate::variety::{cover_oracle, Variety};

/// `B_a`: `B` with a new leaf `c` directly above `a`.
#[derive(Clone, Debug)]
pub struct LeafExtension {
    pub base: CbckAlgebra,
    pub anchor: usize,
    pub extended: CbckAlgebra,
    pub new_node: usize,
}

pub fn add_leaf(base: &CbckAlgebra, anchor: usize) -> Result<LeafExtension> {
    if base.is_trivial() {
        return Err(CbckError::Anchor {
            anchor,
            reason: "the base algebra is trivial",
        });
    }
    if anchor == 0 {
        return Err(CbckError::Anchor {
            anchor,
            reason: "leaves cannot hang from 0",
        });
    }
    if anchor >= base.len() {
        return Err(CbckError::Anchor {
            anchor,
            reason: "no such node",
        });
    }
    let (extended, new_node) = base.with_leaf(anchor);
    Ok(LeafExtension {
        base: base.clone(),
        anchor,
        extended,
        new_node,
    })
}

/// `S(B_a)(c)`: subuniverses of the extension that contain the new leaf.
pub fn subalgebras_containing_c(ext: &LeafExtension) -> Vec<Subuniverse> {
    let classifier = Classifier::new(&ext.extended);
    subuniverses_containing(&ext.extended, ext.new_node)
        .into_iter()
        .map(|carrier| Subuniverse {
            carrier,
            kind: classifier.classify(carrier),
        })
        .collect()
}

/// A least non-embeddable subalgebra `C_a` and where it came from.
#[derive(Clone, Debug)]
pub struct CoverCandidate {
    pub algebra: CbckAlgebra,
    /// Carrier of `C_a` inside `origin.extended`.
    pub carrier: NodeSet,
    pub origin: LeafExtension,
    pub key: CanonicalForm,
}

impl CoverCandidate {
    /// Index of the new leaf `c` inside [`Self::algebra`].
    pub fn new_leaf(&self) -> usize {
        self.carrier
            .iter()
            .position(|x| x == self.origin.new_node)
            .expect("C_a contains c")
    }
}

/// Inclusion-minimal members of `S(B_a)(c)` not embeddable in `A`, one per
/// isomorphism class, smallest first.
pub fn minimal_new_with(
    ext: &LeafExtension,
    subalgebras_of_a: &BTreeSet<CanonicalForm>,
) -> Vec<CoverCandidate> {
    let fresh: Vec<(NodeSet, CanonicalForm)> = subuniverses_containing(&ext.extended, ext.new_node)
        .into_iter()
        .map(|s| (s, carrier_key(&ext.extended, s)))
        .filter(|(_, key)| !subalgebras_of_a.contains(key))
        .collect();
    // `fresh` is sorted by size, so only earlier entries can be proper subsets.
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, (carrier, key)) in fresh.iter().enumerate() {
        let minimal = !fresh[..i].iter().any(|(t, _)| t.is_subset(*carrier));
        if minimal && seen.insert(key.clone()) {
            out.push(CoverCandidate {
                algebra: ext.extended.induced(*carrier).0,
                carrier: *carrier,
                origin: ext.clone(),
                key: key.clone(),
            });
        }
    }
    out
}

/// `C_a` for `A` given by its subalgebra keys `S(A)`.
///
/// `C_a` is determined up to isomorphism: the inclusion-minimal members of
/// `S(B_a)(c)` not embeddable in `A` must all be isomorphic, and then every
/// non-embeddable member contains a copy of `C_a` through `c`. Two
/// non-isomorphic minimal members raise [`CbckError::Minimality`].
pub fn smallest_new_with(
    ext: &LeafExtension,
    subalgebras_of_a: &BTreeSet<CanonicalForm>,
) -> Result<Option<CoverCandidate>> {
    let mut minimal = minimal_new_with(ext, subalgebras_of_a).into_iter();
    let least = minimal.next();
    if let (Some(first), Some(second)) = (&least, minimal.next()) {
        return Err(CbckError::Minimality {
            first: first.carrier.bits(),
            second: second.carrier.bits(),
        });
    }
    Ok(least)
}

pub fn smallest_new(ext: &LeafExtension, a: &CbckAlgebra) -> Result<Option<CoverCandidate>> {
    smallest_new_with(ext, &subalgebra_keys(a))
}

/// Which subalgebras `B` to extend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CovMode {
    /// Every `B ∈ S(A)` up to isomorphism.
    Full,
    /// Only `B ∈ S_δ(S_d(A)) ∪ {A}`.
    #[default]
    Reduced,
}

impl FromStr for CovMode {
    type Err = CbckError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(CovMode::Full),
            "reduced" => Ok(CovMode::Reduced),
            _ => Err(CbckError::Parse(format!(
                "unknown mode `{s}`, expected full|reduced"
            ))),
        }
    }
}

impl fmt::Display for CovMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CovMode::Full => "full",
            CovMode::Reduced => "reduced",
        })
    }
}

/// The subalgebras `B` extended in the given mode, one per isomorphism class.
pub fn cover_bases(a: &CbckAlgebra, mode: CovMode) -> Vec<CbckAlgebra> {
    let carriers: Vec<NodeSet> = match mode {
        CovMode::Full => all_subuniverses(a),
        CovMode::Reduced => s_delta_of_downsets(a)
            .into_iter()
            .map(|s| s.carrier)
            .chain(std::iter::once(a.carrier()))
            .collect(),
    };
    let mut seen = HashSet::new();
    carriers
        .into_iter()
        .filter(|&c| seen.insert(carrier_key(a, c)))
        .map(|c| a.induced(c).0)
        .filter(|b| !b.is_trivial())
        .collect()
}

/// How candidates are taken from each extension `B_a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CandidateRule {
    /// The least non-embeddable subalgebra `C_a`; fails with
    /// [`CbckError::Minimality`] when there is no least one.
    #[default]
    Least,
    /// Every inclusion-minimal non-embeddable subalgebra. Agrees with
    /// `Least` whenever `C_a` exists.
    AllMinimal,
}

impl FromStr for CandidateRule {
    type Err = CbckError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "least" => Ok(CandidateRule::Least),
            "all-minimal" => Ok(CandidateRule::AllMinimal),
            _ => Err(CbckError::Parse(format!(
                "unknown rule `{s}`, expected least|all-minimal"
            ))),
        }
    }
}

impl fmt::Display for CandidateRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CandidateRule::Least => "least",
            CandidateRule::AllMinimal => "all-minimal",
        })
    }
}

/// `Cov(A)`, one candidate per isomorphism class, ordered by size then key.
pub fn cov_set(a: &CbckAlgebra, mode: CovMode) -> Result<Vec<CoverCandidate>> {
    cov_set_with(a, mode, CandidateRule::Least)
}

pub fn cov_set_with(
    a: &CbckAlgebra,
    mode: CovMode,
    rule: CandidateRule,
) -> Result<Vec<CoverCandidate>> {
    if a.is_trivial() {
        return Err(CbckError::Precondition(
            "Cov(A) is defined for non-trivial algebras".into(),
        ));
    }
    let s_a = subalgebra_keys(a);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for base in cover_bases(a, mode) {
        for anchor in 1..base.len() {
            let ext = add_leaf(&base, anchor)?;
            let found = match rule {
                CandidateRule::Least => smallest_new_with(&ext, &s_a)?.into_iter().collect(),
                CandidateRule::AllMinimal => minimal_new_with(&ext, &s_a),
            };
            for candidate in found {
                if seen.insert(candidate.key.clone()) {
                    out.push(candidate);
                }
            }
        }
    }
    out.sort_by(|x, y| (x.key.node_count(), &x.key).cmp(&(y.key.node_count(), &y.key)));
    Ok(out)
}

fn distinct_varieties(mut vs: Vec<Variety>) -> Vec<Variety> {
    let mut seen = HashSet::new();
    vs.retain(|v| seen.insert(v.si_closure().clone()));
    vs.sort_by(|x, y| {
        let kx: Vec<_> = x.generator_keys();
        let ky: Vec<_> = y.generator_keys();
        (x.si_closure().len(), kx).cmp(&(y.si_closure().len(), ky))
    });
    vs
}

/// The covers of `⟨A⟩`, as `⟨A⟩ ∨ ⟨C⟩` for `C ∈ Cov(A)`.
pub fn covers_of_si(a: &CbckAlgebra) -> Result<Vec<Variety>> {
    covers_of_si_with(a, CovMode::Reduced, CandidateRule::Least)
}

pub fn covers_of_si_with(
    a: &CbckAlgebra,
    mode: CovMode,
    rule: CandidateRule,
) -> Result<Vec<Variety>> {
    let base = Variety::of([a.clone()]);
    let candidates = cov_set_with(a, mode, rule)?;
    Ok(distinct_varieties(
        candidates
            .into_iter()
            .map(|c| base.join(&Variety::of([c.algebra])))
            .collect(),
    ))
}

/// Covers of `V` obtained by joining `V` with covers of each generator.
/// Each result is confirmed with [`cover_oracle`].
pub fn covers_of_variety(v: &Variety) -> Result<Vec<Variety>> {
    covers_of_variety_with(v, CandidateRule::Least)
}

pub fn covers_of_variety_with(v: &Variety, rule: CandidateRule) -> Result<Vec<Variety>> {
    let mut joins = Vec::new();
    if v.is_trivial() {
        joins.push(Variety::of([chain(1)]));
    } else {
        for g in v.generators() {
            for k in covers_of_si_with(&g.algebra, CovMode::Reduced, rule)? {
                let j = v.join(&k);
                if &j != v {
                    joins.push(j);
                }
            }
        }
    }
    let out = distinct_varieties(joins);
    for w in &out {
        if !cover_oracle(v, w)? {
            return Err(CbckError::PropertyViolation(format!(
                "{w:?} does not cover {v:?}"
            )));
        }
    }
    Ok(out)
}
