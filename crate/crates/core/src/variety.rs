//! Finitely generated varieties of cBCK-algebras.
//!
//! A finitely generated variety is determined by its subdirectly irreducible
//! members, which up to isomorphism are exactly the subalgebras of its
//! generators. A [`Variety`] therefore stores that key set together with the
//! antichain of generators that are maximal under embedding.

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::CbckAlgebra;
use crate::error::{CbckError, Result};
use crate::iso::CanonicalForm;
use crate::subalgebras::subalgebra_keys;

/// Default bound on `|Si(W) ∖ Si(V)|` for [`cover_oracle`].
pub const ORACLE_CAP: usize = 20;

#[derive(Clone)]
pub struct Generator {
    pub algebra: CbckAlgebra,
    pub key: CanonicalForm,
    pub subalgebras: BTreeSet<CanonicalForm>,
}

impl Generator {
    pub fn new(algebra: CbckAlgebra) -> Self {
        let key = algebra.canonical_form();
        let subalgebras = subalgebra_keys(&algebra);
        Generator {
            algebra,
            key,
            subalgebras,
        }
    }

    fn embeds_in(&self, other: &Generator) -> bool {
        other.subalgebras.contains(&self.key)
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.key)
    }
}

#[derive(Clone)]
pub struct Variety {
    generators: Vec<Generator>,
    si_closure: BTreeSet<CanonicalForm>,
}

impl Variety {
    /// `⟨A_1⟩ ∨ .. ∨ ⟨A_n⟩`. The empty list gives the trivial variety.
    pub fn of(algebras: impl IntoIterator<Item = CbckAlgebra>) -> Variety {
        Self::from_generators(algebras.into_iter().map(Generator::new).collect())
    }

    pub fn from_generators(mut candidates: Vec<Generator>) -> Variety {
        if candidates.is_empty() {
            candidates.push(Generator::new(CbckAlgebra::trivial()));
        }
        candidates.sort_by(|a, b| a.key.cmp(&b.key));
        candidates.dedup_by(|a, b| a.key == b.key);
        let maximal: Vec<bool> = candidates
            .iter()
            .map(|g| {
                !candidates
                    .iter()
                    .any(|other| other.key != g.key && g.embeds_in(other))
            })
            .collect();
        let generators: Vec<Generator> = candidates
            .into_iter()
            .zip(maximal)
            .filter_map(|(g, keep)| keep.then_some(g))
            .collect();
        let si_closure = generators
            .iter()
            .flat_map(|g| g.subalgebras.iter().cloned())
            .collect();
        Variety {
            generators,
            si_closure,
        }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_keys(&self) -> Vec<&CanonicalForm> {
        self.generators.iter().map(|g| &g.key).collect()
    }

    /// `Si(V)` up to isomorphism.
    pub fn si_closure(&self) -> &BTreeSet<CanonicalForm> {
        &self.si_closure
    }

    pub fn is_trivial(&self) -> bool {
        self.si_closure.len() == 1
    }

    /// Size of the smallest generating set of s.i. algebras.
    pub fn n_generated(&self) -> usize {
        self.generators.len()
    }

    pub fn contains_algebra(&self, key: &CanonicalForm) -> bool {
        self.si_closure.contains(key)
    }

    /// `self ⊆ other`.
    pub fn is_subvariety_of(&self, other: &Variety) -> bool {
        self.si_closure.is_subset(&other.si_closure)
    }

    pub fn join(&self, other: &Variety) -> Variety {
        Self::from_generators(
            self.generators
                .iter()
                .chain(other.generators.iter())
                .cloned()
                .collect(),
        )
    }
}

impl PartialEq for Variety {
    fn eq(&self, other: &Self) -> bool {
        self.si_closure == other.si_closure
    }
}

impl Eq for Variety {}

impl fmt::Debug for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Variety{:?}", self.generators)
    }
}

pub fn variety_of(algebras: impl IntoIterator<Item = CbckAlgebra>) -> Variety {
    Variety::of(algebras)
}

/// `v ⊆ w`.
pub fn includes(v: &Variety, w: &Variety) -> bool {
    v.is_subvariety_of(w)
}

pub fn equals(v: &Variety, w: &Variety) -> bool {
    v == w
}

pub fn join(v: &Variety, w: &Variety) -> Variety {
    v.join(w)
}

pub fn n_generated(v: &Variety) -> usize {
    v.n_generated()
}

/// Whether `w` covers `v`: no family of s.i. algebras closed under
/// subalgebras sits strictly between `Si(v)` and `Si(w)`.
pub fn cover_oracle(v: &Variety, w: &Variety) -> Result<bool> {
    cover_oracle_capped(v, w, ORACLE_CAP)
}

/// [`cover_oracle`] with an explicit bound on the difference size.
///
/// Candidate families `Si(v) ∪ F` are enumerated by increasing `|F|`; such a
/// family is closed under subalgebras iff `F` is a down-set of the difference
/// under embedding.
pub fn cover_oracle_capped(v: &Variety, w: &Variety, cap: usize) -> Result<bool> {
    if !v.is_subvariety_of(w) || v == w {
        return Err(CbckError::Precondition(
            "cover check needs a strictly larger second variety".into(),
        ));
    }
    let mut diff: Vec<&CanonicalForm> = w.si_closure.difference(&v.si_closure).collect();
    if diff.len() > cap {
        return Err(CbckError::Size {
            len: diff.len(),
            cap,
        });
    }
    // Smaller algebras first, so early candidates tend to be down-sets.
    diff.sort_by_key(|k| (k.node_count(), *k));
    let n = diff.len();
    let mut below: Vec<Option<Vec<usize>>> = vec![None; n];
    let mut members_below = |i: usize| -> Vec<usize> {
        below[i]
            .get_or_insert_with(|| {
                let subs = subalgebra_keys(&diff[i].to_algebra().expect("closure keys are s.i."));
                (0..n)
                    .filter(|&j| j != i && subs.contains(diff[j]))
                    .collect()
            })
            .clone()
    };
    let mut in_f = vec![false; n];
    for size in 1..n {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            idx.iter().for_each(|&i| in_f[i] = true);
            let closed = idx
                .iter()
                .all(|&i| members_below(i).iter().all(|&j| in_f[j]));
            idx.iter().for_each(|&i| in_f[i] = false);
            if closed {
                return Ok(false);
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    Ok(true)
}

// Advances a sorted index combination in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let Some(pos) = (0..k).rev().find(|&p| idx[p] < n - k + p) else {
        return false;
    };
    idx[pos] += 1;
    for p in pos + 1..k {
        idx[p] = idx[p - 1] + 1;
    }
    true
}
