//! Subalgebras of finite subdirectly irreducible cBCK-algebras.
//!
//! Two families matter: order ideals (`S_d`), which are always closed under
//! `⊖`, and divisor subalgebras `A_k ∪ m(A)` (`S_δ`), the elements whose height
//! is a multiple of a proper divisor `k` of `h(A)` together with the maximal
//! elements. Every subalgebra is isomorphic to an ideal or to a divisor
//! subalgebra of some ideal; [`Classifier`] makes that checkable.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use crate::algebra::CbckAlgebra;
use crate::error::{CbckError, Result};
use crate::iso::{canonical_form, CanonicalForm};
use crate::nodeset::NodeSet;

/// Default cap on the node count for [`enumerate_subalgebras_bruteforce`].
pub const BRUTE_FORCE_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubKind {
    /// The carrier is an order ideal.
    Downset,
    /// The carrier is `D_k ∪ m(D)` for an order ideal `D`.
    Divisor(u32),
    /// Not literally an ideal, but isomorphic to one.
    IsoDownset,
    /// Not literally a divisor subalgebra, but isomorphic to one.
    IsoDivisor(u32),
    Other,
}

impl fmt::Display for SubKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubKind::Downset => write!(f, "downset"),
            SubKind::Divisor(k) => write!(f, "divisor({k})"),
            SubKind::IsoDownset => write!(f, "iso-downset"),
            SubKind::IsoDivisor(k) => write!(f, "iso-divisor({k})"),
            SubKind::Other => write!(f, "other"),
        }
    }
}

/// A ⊖-closed subset of an algebra's carrier containing 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subuniverse {
    pub carrier: NodeSet,
    pub kind: SubKind,
}

impl Subuniverse {
    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    /// The subalgebra as an algebra of its own, with the map back into `parent`.
    pub fn to_algebra(&self, parent: &CbckAlgebra) -> (CbckAlgebra, Vec<usize>) {
        parent.induced(self.carrier)
    }

    pub fn key(&self, parent: &CbckAlgebra) -> CanonicalForm {
        carrier_key(parent, self.carrier)
    }
}

/// Canonical key of the subalgebra on `carrier`.
pub fn carrier_key(parent: &CbckAlgebra, carrier: NodeSet) -> CanonicalForm {
    canonical_form(&parent.induced_tree(carrier).0)
}

pub fn is_subuniverse(a: &CbckAlgebra, set: NodeSet) -> bool {
    set.contains(0)
        && set.is_subset(a.carrier())
        && set
            .iter()
            .all(|x| set.iter().all(|y| set.contains(a.monus(x, y))))
}

/// Adds `extra` to the closed set `closed` and closes again.
fn close_with(a: &CbckAlgebra, closed: NodeSet, extra: NodeSet) -> NodeSet {
    let mut set = closed;
    let mut queue: VecDeque<usize> = VecDeque::new();
    for x in extra.difference(closed) {
        set.insert(x);
        queue.push_back(x);
    }
    while let Some(z) = queue.pop_front() {
        for m in set {
            for r in [a.monus(m, z), a.monus(z, m)] {
                if set.insert(r) {
                    queue.push_back(r);
                }
            }
        }
    }
    set
}

/// Least subuniverse containing `set ∪ {0}`.
pub fn closure(a: &CbckAlgebra, set: NodeSet) -> NodeSet {
    close_with(a, NodeSet::singleton(0), set)
}

/// Every subset containing 0 that is closed under `⊖`, by direct subset
/// enumeration. Results are ordered by size, then by bit pattern.
pub fn enumerate_subalgebras_bruteforce(a: &CbckAlgebra, cap: usize) -> Result<Vec<Subuniverse>> {
    let n = a.len();
    if n > cap {
        return Err(CbckError::Limit { nodes: n, cap });
    }
    let classifier = Classifier::new(a);
    let mut found: Vec<NodeSet> = (0u64..1 << (n - 1))
        .map(|bits| NodeSet::from_bits(bits << 1 | 1))
        .filter(|&s| is_subuniverse(a, s))
        .collect();
    found.sort_by_key(|s| (s.len(), s.bits()));
    Ok(found
        .into_iter()
        .map(|carrier| Subuniverse {
            carrier,
            kind: classifier.classify(carrier),
        })
        .collect())
}

/// Every subuniverse, found by closing known subuniverses under one more
/// element until nothing new appears. Ordered by size, then bit pattern.
pub fn all_subuniverses(a: &CbckAlgebra) -> Vec<NodeSet> {
    closed_sets_above(a, NodeSet::singleton(0))
}

/// Every subuniverse containing `c`.
pub fn subuniverses_containing(a: &CbckAlgebra, c: usize) -> Vec<NodeSet> {
    closed_sets_above(a, closure(a, NodeSet::singleton(c)))
}

fn closed_sets_above(a: &CbckAlgebra, start: NodeSet) -> Vec<NodeSet> {
    let full = a.carrier();
    let mut seen: HashSet<NodeSet> = HashSet::from([start]);
    let mut queue = vec![start];
    while let Some(s) = queue.pop() {
        for x in full.difference(s) {
            let t = close_with(a, s, NodeSet::singleton(x));
            if seen.insert(t) {
                queue.push(t);
            }
        }
    }
    let mut out: Vec<NodeSet> = seen.into_iter().collect();
    out.sort_by_key(|s| (s.len(), s.bits()));
    out
}

/// `S(A)` up to isomorphism.
pub fn subalgebra_keys(a: &CbckAlgebra) -> BTreeSet<CanonicalForm> {
    all_subuniverses(a)
        .into_iter()
        .map(|s| carrier_key(a, s))
        .collect()
}

/// `S_d(A)`: all order ideals, ordered by size then bit pattern.
pub fn downset_subalgebras(a: &CbckAlgebra) -> Vec<Subuniverse> {
    let mut out = Vec::new();
    for carrier in ideals_below(a, 0) {
        out.push(Subuniverse {
            carrier,
            kind: SubKind::Downset,
        });
    }
    out.sort_by_key(|s| (s.carrier.len(), s.carrier.bits()));
    out
}

// Ideals of the subtree rooted at `v` that contain `v`.
fn ideals_below(a: &CbckAlgebra, v: usize) -> Vec<NodeSet> {
    let mut acc = vec![NodeSet::singleton(v)];
    for &child in a.tree().children(v) {
        let options = ideals_below(a, child);
        let mut next = Vec::with_capacity(acc.len() * (options.len() + 1));
        for &base in &acc {
            next.push(base);
            next.extend(options.iter().map(|&o| base.union(o)));
        }
        acc = next;
    }
    acc
}

/// `δ*(n)`: divisors of `n` other than 1 and `n`.
pub fn proper_divisors(n: u32) -> Vec<u32> {
    (2..n).filter(|&k| n.is_multiple_of(k)).collect()
}

/// `A_k`: elements whose height is a multiple of `k`.
pub fn multiples_of(a: &CbckAlgebra, k: u32) -> NodeSet {
    (0..a.len())
        .filter(|&v| a.height_of_node(v).is_multiple_of(k))
        .collect()
}

/// `A_k ∪ m(A)` when `b(A), m(A) ⊆ A_k`, nothing otherwise.
pub fn divisor_subalgebra(a: &CbckAlgebra, k: u32) -> Result<Option<Subuniverse>> {
    let height = a.height();
    if !proper_divisors(height).contains(&k) {
        return Err(CbckError::Divisor { k, height });
    }
    let ak = multiples_of(a, k);
    let ok = a.branching_elements().is_subset(ak) && a.maximal_elements().is_subset(ak);
    Ok(ok.then(|| Subuniverse {
        carrier: ak.union(a.maximal_elements()),
        kind: SubKind::Divisor(k),
    }))
}

/// `S_δ(A)`. Empty whenever `h(A)` has no proper divisor, e.g. `h(A) ≤ 3`.
pub fn s_delta(a: &CbckAlgebra) -> Vec<Subuniverse> {
    proper_divisors(a.height())
        .into_iter()
        .filter_map(|k| divisor_subalgebra(a, k).expect("k ranges over δ*"))
        .collect()
}

/// `S_δ(S_d(A))`: divisor subalgebras of every ideal, as subuniverses of `A`.
/// The same carrier may arise from several ideals; it is reported once with
/// its smallest `k`.
pub fn s_delta_of_downsets(a: &CbckAlgebra) -> Vec<Subuniverse> {
    let mut best: HashMap<NodeSet, u32> = HashMap::new();
    for d in downset_subalgebras(a) {
        let (sub, back) = d.to_algebra(a);
        for s in s_delta(&sub) {
            let carrier: NodeSet = s.carrier.iter().map(|i| back[i]).collect();
            let SubKind::Divisor(k) = s.kind else {
                unreachable!()
            };
            best.entry(carrier)
                .and_modify(|old| *old = (*old).min(k))
                .or_insert(k);
        }
    }
    let mut out: Vec<Subuniverse> = best
        .into_iter()
        .map(|(carrier, k)| Subuniverse {
            carrier,
            kind: SubKind::Divisor(k),
        })
        .collect();
    out.sort_by_key(|s| (s.carrier.len(), s.carrier.bits()));
    out
}

/// Precomputed `S_d(A)` and `S_δ(S_d(A))`, both literally and up to isomorphism.
pub struct Classifier<'a> {
    algebra: &'a CbckAlgebra,
    divisor_carriers: HashMap<NodeSet, u32>,
    downset_keys: HashSet<CanonicalForm>,
    divisor_keys: HashMap<CanonicalForm, u32>,
}

impl<'a> Classifier<'a> {
    pub fn new(algebra: &'a CbckAlgebra) -> Self {
        let downset_keys = downset_subalgebras(algebra)
            .iter()
            .map(|d| d.key(algebra))
            .collect();
        let mut divisor_carriers = HashMap::new();
        let mut divisor_keys: HashMap<CanonicalForm, u32> = HashMap::new();
        for s in s_delta_of_downsets(algebra) {
            let SubKind::Divisor(k) = s.kind else {
                unreachable!()
            };
            divisor_carriers.insert(s.carrier, k);
            divisor_keys
                .entry(s.key(algebra))
                .and_modify(|old| *old = (*old).min(k))
                .or_insert(k);
        }
        Classifier {
            algebra,
            divisor_carriers,
            downset_keys,
            divisor_keys,
        }
    }

    pub fn classify(&self, carrier: NodeSet) -> SubKind {
        if self.algebra.is_downset(carrier) {
            return SubKind::Downset;
        }
        if let Some(&k) = self.divisor_carriers.get(&carrier) {
            return SubKind::Divisor(k);
        }
        let key = carrier_key(self.algebra, carrier);
        if self.downset_keys.contains(&key) {
            SubKind::IsoDownset
        } else if let Some(&k) = self.divisor_keys.get(&key) {
            SubKind::IsoDivisor(k)
        } else {
            SubKind::Other
        }
    }

    /// Keys of `S_d(A) ∪ S_δ(S_d(A))`.
    pub fn keys(&self) -> BTreeSet<CanonicalForm> {
        self.downset_keys
            .iter()
            .chain(self.divisor_keys.keys())
            .cloned()
            .collect()
    }
}

pub fn classify(a: &CbckAlgebra, s: &Subuniverse) -> SubKind {
    Classifier::new(a).classify(s.carrier)
}

pub fn generated_subalgebra(a: &CbckAlgebra, generators: NodeSet) -> Subuniverse {
    let carrier = closure(a, generators);
    Subuniverse {
        carrier,
        kind: Classifier::new(a).classify(carrier),
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Looks for non-zero `a, b ∈ B` with coprime heights. When such a pair
/// exists `B` must be an ideal; a non-ideal is reported as a violation.
pub fn gcd_downset_check(a: &CbckAlgebra, b: NodeSet) -> Result<Option<(usize, usize)>> {
    let nonzero: Vec<usize> = b.iter().filter(|&x| x != 0).collect();
    let pair = nonzero.iter().enumerate().find_map(|(i, &x)| {
        nonzero[i..]
            .iter()
            .find(|&&y| gcd(a.height_of_node(x), a.height_of_node(y)) == 1)
            .map(|&y| (x, y))
    });
    match pair {
        Some((x, y)) if !a.is_downset(b) => Err(CbckError::PropertyViolation(format!(
            "{b} holds coprime heights at {x} and {y} but is not an order ideal"
        ))),
        other => Ok(other),
    }
}

/// Whether `m(A)` alone generates `A`. Only meaningful for non-chains.
pub fn smallest_generating_set_is_maximals(a: &CbckAlgebra) -> Result<bool> {
    if a.is_chain() {
        return Err(CbckError::Precondition(
            "the algebra is a chain; its maximal element never generates it".into(),
        ));
    }
    Ok(closure(a, a.maximal_elements()) == a.carrier())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{chain, glued};

    fn set(xs: &[usize]) -> NodeSet {
        xs.iter().copied().collect()
    }

    fn alg(s: &str) -> CbckAlgebra {
        CbckAlgebra::from_tree_str(s).unwrap()
    }

    #[test]
    fn subuniverse_checks_on_s4() {
        let s4 = chain(4);
        assert!(is_subuniverse(&s4, set(&[0])));
        assert!(is_subuniverse(&s4, s4.carrier()));
        assert!(is_subuniverse(&s4, set(&[0, 2, 4])));
        assert!(is_subuniverse(&s4, set(&[0, 3])));
        // 3 ⊖ 2 = 1
        assert!(!is_subuniverse(&s4, set(&[0, 2, 3])));
        assert!(!is_subuniverse(&s4, set(&[2, 4])));
    }

    #[test]
    fn brute_force_s2() {
        let subs = enumerate_subalgebras_bruteforce(&chain(2), BRUTE_FORCE_CAP).unwrap();
        let carriers: Vec<NodeSet> = subs.iter().map(|s| s.carrier).collect();
        assert_eq!(
            carriers,
            vec![set(&[0]), set(&[0, 1]), set(&[0, 2]), set(&[0, 1, 2])]
        );
        assert_eq!(subs[2].kind, SubKind::IsoDownset);
    }

    #[test]
    fn brute_force_trivial_and_cap() {
        let subs = enumerate_subalgebras_bruteforce(&chain(0), BRUTE_FORCE_CAP).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].carrier, set(&[0]));
        assert_eq!(
            enumerate_subalgebras_bruteforce(&chain(16), BRUTE_FORCE_CAP),
            Err(CbckError::Limit { nodes: 17, cap: 16 })
        );
    }

    #[test]
    fn brute_force_s6_has_divisor_sets() {
        let subs = enumerate_subalgebras_bruteforce(&chain(6), BRUTE_FORCE_CAP).unwrap();
        let find = |c: NodeSet| subs.iter().find(|s| s.carrier == c).map(|s| s.kind);
        assert_eq!(find(set(&[0, 2, 4, 6])), Some(SubKind::Divisor(2)));
        assert_eq!(find(set(&[0, 3, 6])), Some(SubKind::Divisor(3)));
    }

    #[test]
    fn closure_enumeration_matches_brute_force() {
        for a in [chain(6), alg("-,0,1,1,2,3"), glued(&[2, 2], 2).unwrap()] {
            let brute: Vec<NodeSet> = enumerate_subalgebras_bruteforce(&a, BRUTE_FORCE_CAP)
                .unwrap()
                .into_iter()
                .map(|s| s.carrier)
                .collect();
            assert_eq!(all_subuniverses(&a), brute);
        }
    }

    #[test]
    fn downsets_of_chain() {
        let d = downset_subalgebras(&chain(3));
        let carriers: Vec<NodeSet> = d.iter().map(|s| s.carrier).collect();
        assert_eq!(
            carriers,
            vec![set(&[0]), set(&[0, 1]), set(&[0, 1, 2]), set(&[0, 1, 2, 3])]
        );
    }

    #[test]
    fn downsets_of_fork() {
        let a = alg("-,0,1,1");
        let d = downset_subalgebras(&a);
        let carriers: Vec<NodeSet> = d.iter().map(|s| s.carrier).collect();
        assert_eq!(
            carriers,
            vec![
                set(&[0]),
                set(&[0, 1]),
                set(&[0, 1, 2]),
                set(&[0, 1, 3]),
                set(&[0, 1, 2, 3])
            ]
        );
        assert!(carriers.iter().all(|&c| is_subuniverse(&a, c)));
    }

    #[test]
    fn divisor_on_chains() {
        let s6 = divisor_subalgebra(&chain(6), 2).unwrap().unwrap();
        assert_eq!(s6.carrier, set(&[0, 2, 4, 6]));
        assert_eq!(s6.to_algebra(&chain(6)).0, chain(3));
        let s4 = divisor_subalgebra(&chain(4), 2).unwrap().unwrap();
        assert_eq!(s4.carrier, set(&[0, 2, 4]));
        assert_eq!(
            divisor_subalgebra(&chain(6), 6),
            Err(CbckError::Divisor { k: 6, height: 6 })
        );
        assert_eq!(
            divisor_subalgebra(&chain(6), 1),
            Err(CbckError::Divisor { k: 1, height: 6 })
        );
    }

    #[test]
    fn divisor_fails_with_odd_branching() {
        // Branching at height 1, both leaves at height 4.
        let a = glued(&[3, 3], 1).unwrap();
        assert_eq!(divisor_subalgebra(&a, 2).unwrap(), None);
        let candidate = multiples_of(&a, 2).union(a.maximal_elements());
        assert!(!is_subuniverse(&a, candidate));
    }

    #[test]
    fn s_delta_examples() {
        assert!(s_delta(&chain(5)).is_empty());
        assert!(s_delta(&chain(7)).is_empty());
        assert!(s_delta(&chain(3)).is_empty());
        let ks: Vec<SubKind> = s_delta(&chain(6)).iter().map(|s| s.kind).collect();
        assert_eq!(ks, vec![SubKind::Divisor(2), SubKind::Divisor(3)]);
    }

    #[test]
    fn classify_examples() {
        let s6 = chain(6);
        let c = Classifier::new(&s6);
        assert_eq!(c.classify(set(&[0, 1, 2])), SubKind::Downset);
        assert_eq!(c.classify(set(&[0, 2, 4, 6])), SubKind::Divisor(2));
        assert_eq!(c.classify(set(&[0, 3, 6])), SubKind::Divisor(3));
        // {0,2,4} is A_2 of the ideal [0,4].
        assert_eq!(c.classify(set(&[0, 2, 4])), SubKind::Divisor(2));
        assert_eq!(c.classify(set(&[0, 5])), SubKind::IsoDownset);
    }

    #[test]
    fn generated_examples() {
        let a = alg("-,0,1,1,2,3");
        let mut gens = a.maximal_elements();
        gens.insert(a.atom().unwrap());
        assert_eq!(generated_subalgebra(&a, gens).carrier, a.carrier());
        assert_eq!(
            generated_subalgebra(&a, NodeSet::empty()).carrier,
            set(&[0])
        );

        // Branching at 2, leaves at 4: A_2 ∪ m(A) is a proper subalgebra
        // that already holds m(A).
        let b = glued(&[2, 2], 2).unwrap();
        assert!(!s_delta(&b).is_empty());
        let g = generated_subalgebra(&b, b.maximal_elements());
        assert!(g.carrier != b.carrier());
        assert_eq!(g.kind, SubKind::Divisor(2));
    }

    #[test]
    fn gcd_examples() {
        let s6 = chain(6);
        assert_eq!(
            gcd_downset_check(&s6, set(&[0, 1, 2])).unwrap(),
            Some((1, 1))
        );
        assert_eq!(gcd_downset_check(&chain(4), set(&[0, 2, 4])).unwrap(), None);
        let gen = closure(&s6, set(&[2, 3]));
        assert!(gen.contains(1));
        assert_eq!(gcd_downset_check(&s6, gen).unwrap(), Some((1, 1)));
        assert!(matches!(
            gcd_downset_check(&s6, set(&[0, 2, 3])),
            Err(CbckError::PropertyViolation(_))
        ));
    }

    #[test]
    fn maximals_generate_examples() {
        assert!(smallest_generating_set_is_maximals(&alg("-,0,1,1")).unwrap());
        assert!(!smallest_generating_set_is_maximals(&glued(&[2, 2], 2).unwrap()).unwrap());
        assert!(matches!(
            smallest_generating_set_is_maximals(&chain(3)),
            Err(CbckError::Precondition(_))
        ));
    }
}
