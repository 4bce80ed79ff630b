//! Finite subdirectly irreducible cBCK-algebras built on single-atom rooted trees.
//!
//! Every node of the tree is an element, node `0` is the constant `0`, and the
//! order of the algebra is the ancestor order of the tree. Each maximal chain
//! `[0, m]` behaves like truncated subtraction on heights, so
//!
//! ```text
//! x ⊖ y = ancestor of x at height max(0, h(x) − h(x ∧ y))
//! ```
//!
//! where `x ∧ y` is the deepest common ancestor.

use std::fmt;

use crate::error::{CbckError, Result};
use crate::nodeset::NodeSet;
use crate::tree::RootedTree;

/// Dense `n × n` table of a binary operation on `{0, .., n-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonusTable {
    n: usize,
    cells: Vec<u8>,
}

impl MonusTable {
    pub fn from_fn(n: usize, mut op: impl FnMut(usize, usize) -> usize) -> Self {
        let mut cells = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let z = op(x, y);
                assert!(z < n, "operation leaves the carrier");
                cells.push(z as u8);
            }
        }
        MonusTable { n, cells }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.n + y] as usize
    }

    pub fn set(&mut self, x: usize, y: usize, z: usize) {
        assert!(z < self.n);
        self.cells[x * self.n + y] = z as u8;
    }

    /// Checks the BCK and commutativity laws over all triples. Single-variable
    /// laws are checked first, then two-variable laws, then three-variable ones.
    pub fn verify(&self) -> AxiomReport {
        let n = self.n;
        let m = |x, y| self.get(x, y);
        for x in 0..n {
            if m(x, 0) != x {
                return AxiomReport::fail(Identity::RightZero, x, 0, 0);
            }
            if m(0, x) != 0 {
                return AxiomReport::fail(Identity::LeftZero, x, 0, 0);
            }
        }
        for x in 0..n {
            for y in 0..n {
                if m(x, y) == 0 && m(y, x) == 0 && x != y {
                    return AxiomReport::fail(Identity::Antisymmetry, x, y, 0);
                }
                if m(x, m(x, y)) != m(y, m(y, x)) {
                    return AxiomReport::fail(Identity::Commutativity, x, y, 0);
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if m(m(m(x, y), m(x, z)), m(z, y)) != 0 {
                        return AxiomReport::fail(Identity::Bck, x, y, z);
                    }
                    if m(m(x, y), z) != m(m(x, z), y) {
                        return AxiomReport::fail(Identity::Exchange, x, y, z);
                    }
                }
            }
        }
        AxiomReport::Pass
    }
}

impl fmt::Debug for MonusTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MonusTable({})", self.n)?;
        for x in 0..self.n {
            let row: Vec<_> = (0..self.n).map(|y| self.get(x, y).to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        Ok(())
    }
}

/// The laws checked by [`MonusTable::verify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `((x ⊖ y) ⊖ (x ⊖ z)) ⊖ (z ⊖ y) = 0`
    Bck,
    /// `x ⊖ 0 = x`
    RightZero,
    /// `0 ⊖ x = 0`
    LeftZero,
    /// `x ⊖ y = 0` and `y ⊖ x = 0` imply `x = y`
    Antisymmetry,
    /// `x ⊖ (x ⊖ y) = y ⊖ (y ⊖ x)`
    Commutativity,
    /// `(x ⊖ y) ⊖ z = (x ⊖ z) ⊖ y`
    Exchange,
}

impl Identity {
    /// Conventional numbering of the six laws.
    pub fn number(self) -> u8 {
        match self {
            Identity::Bck => 1,
            Identity::RightZero => 2,
            Identity::LeftZero => 3,
            Identity::Antisymmetry => 4,
            Identity::Commutativity => 5,
            Identity::Exchange => 6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomReport {
    Pass,
    Fail {
        identity: Identity,
        witness: (usize, usize, usize),
    },
}

impl AxiomReport {
    fn fail(identity: Identity, x: usize, y: usize, z: usize) -> Self {
        AxiomReport::Fail {
            identity,
            witness: (x, y, z),
        }
    }

    pub fn passed(&self) -> bool {
        matches!(self, AxiomReport::Pass)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct CbckAlgebra {
    tree: RootedTree,
    table: MonusTable,
    atom: Option<usize>,
}

impl CbckAlgebra {
    pub const MAX_NODES: usize = NodeSet::CAPACITY;

    /// Builds the algebra of a single-atom tree.
    pub fn build(tree: RootedTree) -> Result<Self> {
        let n = tree.len();
        if n > Self::MAX_NODES {
            return Err(CbckError::TooLarge {
                nodes: n,
                max: Self::MAX_NODES,
            });
        }
        let atoms = tree.children(0).len();
        if n > 1 && atoms != 1 {
            return Err(CbckError::MultiAtom { atoms });
        }
        let table = MonusTable::from_fn(n, |x, y| {
            let common = tree.depth(tree.lca(x, y));
            let h = tree.depth(x).saturating_sub(common);
            tree.ancestor_at(x, h)
        });
        let atom = tree.children(0).first().copied();
        Ok(CbckAlgebra { tree, table, atom })
    }

    pub fn from_parents(parents: &[usize]) -> Result<Self> {
        Self::build(RootedTree::from_parents(parents)?)
    }

    pub fn trivial() -> Self {
        Self::build(RootedTree::trivial()).unwrap()
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn table(&self) -> &MonusTable {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_trivial(&self) -> bool {
        self.len() == 1
    }

    pub fn carrier(&self) -> NodeSet {
        NodeSet::full(self.len())
    }

    pub fn atom(&self) -> Option<usize> {
        self.atom
    }

    #[inline]
    pub fn monus(&self, x: usize, y: usize) -> usize {
        self.table.get(x, y)
    }

    /// `x ∧ y = x ⊖ (x ⊖ y)`.
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.monus(x, self.monus(x, y))
    }

    /// `x ⊖ n·y`, with `x ⊖ 0·y = x`.
    pub fn iterated_monus(&self, x: usize, n: usize, y: usize) -> usize {
        let mut acc = x;
        for _ in 0..n {
            let next = self.monus(acc, y);
            if next == acc {
                break;
            }
            acc = next;
        }
        acc
    }

    /// `x ≤ y` iff `x ⊖ y = 0`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.monus(x, y) == 0
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `h(x) = |[0, x]| − 1`.
    pub fn height_of_node(&self, x: usize) -> u32 {
        self.tree.depth(x)
    }

    pub fn depths(&self) -> &[u32] {
        self.tree.depths()
    }

    /// `h(A)`.
    pub fn height(&self) -> u32 {
        self.tree.height()
    }

    /// `b(A)`: elements with at least two upper covers.
    pub fn branching_elements(&self) -> NodeSet {
        (0..self.len())
            .filter(|&v| self.tree.children(v).len() >= 2)
            .collect()
    }

    /// `m(A)`.
    pub fn maximal_elements(&self) -> NodeSet {
        self.tree.leaves().collect()
    }

    /// `|m(A)|`.
    pub fn width(&self) -> usize {
        self.maximal_elements().len()
    }

    pub fn is_chain(&self) -> bool {
        self.width() == 1
    }

    pub fn verify_axioms(&self) -> AxiomReport {
        self.table.verify()
    }

    /// Exhaustively evaluates `x ⊖ (n+1)y = x ⊖ ny` over all pairs.
    pub fn check_height_identity(&self, n: usize) -> bool {
        (0..self.len()).all(|x| {
            (0..self.len())
                .all(|y| self.iterated_monus(x, n + 1, y) == self.iterated_monus(x, n, y))
        })
    }

    /// Exhaustively evaluates `⋀_{i≠j} (x_i ⊖ x_j) = 0` over all tuples of
    /// `n + 1` elements, which holds iff `|m(A)| ≤ n`.
    ///
    /// Any antichain of size `t` makes the meet over a `t`-tuple non-zero, so
    /// `(n+1)`-tuples are what bound the width by `n`. For `n = 1` this reads
    /// `(x ⊖ y) ∧ (y ⊖ x) = 0`, i.e. the algebra is a chain. `n = 0` never holds.
    pub fn check_width_identity(&self, n: usize) -> bool {
        if n == 0 {
            return false;
        }
        let mut tuple = Vec::with_capacity(n + 1);
        !self.width_counterexample(&mut tuple, n + 1, None)
    }

    // Depth-first over tuples carrying the running meet of all `x_i ⊖ x_j`
    // fixed so far; once it hits 0 every extension satisfies the identity.
    fn width_counterexample(&self, tuple: &mut Vec<usize>, n: usize, acc: Option<usize>) -> bool {
        if tuple.len() == n {
            return acc != Some(0);
        }
        for x in 0..self.len() {
            let mut next = acc;
            for &y in tuple.iter() {
                for term in [self.monus(x, y), self.monus(y, x)] {
                    next = Some(match next {
                        None => term,
                        Some(m) => self.meet(m, term),
                    });
                }
            }
            if next == Some(0) {
                continue;
            }
            tuple.push(x);
            let found = self.width_counterexample(tuple, n, next);
            tuple.pop();
            if found {
                return true;
            }
        }
        false
    }

    /// The interval `[0, x]` as a node set.
    pub fn principal_ideal(&self, x: usize) -> NodeSet {
        let mut set = NodeSet::empty();
        let mut cur = Some(x);
        while let Some(v) = cur {
            set.insert(v);
            cur = self.tree.parent(v);
        }
        set
    }

    /// Smallest order ideal containing `set`.
    pub fn down_closure(&self, set: NodeSet) -> NodeSet {
        set.iter().fold(NodeSet::singleton(0), |acc, x| {
            acc.union(self.principal_ideal(x))
        })
    }

    pub fn is_downset(&self, set: NodeSet) -> bool {
        set.contains(0)
            && set
                .iter()
                .all(|x| self.tree.parent(x).is_none_or(|p| set.contains(p)))
    }

    /// The order induced on a ⊖-closed subset containing 0, re-indexed in
    /// increasing node order, together with the map from new to old indices.
    ///
    /// The parent of `x` is the deepest member of the set strictly below `x`.
    pub fn induced_tree(&self, carrier: NodeSet) -> (RootedTree, Vec<usize>) {
        debug_assert!(carrier.contains(0));
        let old: Vec<usize> = carrier.iter().collect();
        let mut new_index = vec![usize::MAX; self.len()];
        for (i, &v) in old.iter().enumerate() {
            new_index[v] = i;
        }
        let parents: Vec<Option<usize>> = old
            .iter()
            .map(|&v| {
                let mut cur = self.tree.parent(v);
                while let Some(p) = cur {
                    if carrier.contains(p) {
                        return Some(new_index[p]);
                    }
                    cur = self.tree.parent(p);
                }
                None
            })
            .collect();
        let tree = RootedTree::from_parent_list(&parents).expect("induced order is a tree");
        (tree, old)
    }

    /// The subalgebra on a ⊖-closed subset containing 0; see [`Self::induced_tree`].
    pub fn induced(&self, carrier: NodeSet) -> (CbckAlgebra, Vec<usize>) {
        let (tree, old) = self.induced_tree(carrier);
        let algebra = CbckAlgebra::build(tree).expect("subalgebras of s.i. algebras have one atom");
        debug_assert!(old.iter().enumerate().all(|(i, &x)| old
            .iter()
            .enumerate()
            .all(|(j, &y)| old[algebra.monus(i, j)] == self.monus(x, y))));
        (algebra, old)
    }

    /// Appends a leaf above `anchor`.
    pub fn with_leaf(&self, anchor: usize) -> (CbckAlgebra, usize) {
        let (tree, c) = self.tree.with_leaf(anchor);
        let algebra = CbckAlgebra::build(tree).expect("a new leaf above a non-root keeps one atom");
        (algebra, c)
    }
}

impl fmt::Debug for CbckAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CbckAlgebra({})", self.tree)
    }
}
