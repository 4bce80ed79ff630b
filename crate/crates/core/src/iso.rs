//! AHU canonical forms of rooted trees.
//!
//! A leaf encodes as `()`, an inner node as `(` followed by the sorted
//! encodings of its children and `)`. Two rooted trees are isomorphic iff
//! their encodings are equal. Since `⊖` is a function of the tree, this is
//! also the isomorphism test for the algebras.

use std::collections::HashSet;
use std::fmt;

use crate::algebra::CbckAlgebra;
use crate::error::{CbckError, Result};
use crate::tree::RootedTree;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Number of nodes of the encoded tree.
    pub fn node_count(&self) -> usize {
        self.0.len() / 2
    }

    /// Parses a key produced by [`canonical_form`].
    pub fn parse(key: &str) -> Result<Self> {
        let tree = tree_from_key(key)?;
        let canon = canonical_form(&tree);
        if canon.0 != key {
            return Err(CbckError::Parse(format!(
                "`{key}` is not in canonical order"
            )));
        }
        Ok(canon)
    }

    /// Rebuilds a representative tree, numbering nodes in preorder.
    pub fn to_tree(&self) -> RootedTree {
        tree_from_key(&self.0).expect("canonical keys are balanced")
    }

    pub fn to_algebra(&self) -> Result<CbckAlgebra> {
        CbckAlgebra::build(self.to_tree())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Key({})", self.0)
    }
}

fn tree_from_key(key: &str) -> Result<RootedTree> {
    let bad = || CbckError::Parse(format!("`{key}` is not a balanced tree key"));
    let mut parents: Vec<Option<usize>> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut closed_root = false;
    for ch in key.chars() {
        if closed_root {
            return Err(bad());
        }
        match ch {
            '(' => {
                parents.push(stack.last().copied());
                stack.push(parents.len() - 1);
            }
            ')' => {
                stack.pop().ok_or_else(bad)?;
                closed_root = stack.is_empty();
            }
            _ => return Err(bad()),
        }
    }
    if !closed_root {
        return Err(bad());
    }
    RootedTree::from_parent_list(&parents)
}

pub fn canonical_form(tree: &RootedTree) -> CanonicalForm {
    // Children before parents: process nodes by decreasing depth.
    let n = tree.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(tree.depth(v)));
    let mut codes: Vec<String> = vec![String::new(); n];
    for v in order {
        let mut kids: Vec<String> = tree
            .children(v)
            .iter()
            .map(|&c| std::mem::take(&mut codes[c]))
            .collect();
        kids.sort_unstable();
        let mut code = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
        code.push('(');
        for k in kids {
            code.push_str(&k);
        }
        code.push(')');
        codes[v] = code;
    }
    CanonicalForm(std::mem::take(&mut codes[0]))
}

pub fn is_isomorphic(a: &RootedTree, b: &RootedTree) -> bool {
    a.len() == b.len() && canonical_form(a) == canonical_form(b)
}

/// One tree per isomorphism class, in order of first occurrence.
pub fn dedup(items: Vec<RootedTree>) -> Vec<RootedTree> {
    let mut seen = HashSet::new();
    items
        .into_iter()
        .filter(|t| seen.insert(canonical_form(t)))
        .collect()
}

impl CbckAlgebra {
    pub fn canonical_form(&self) -> CanonicalForm {
        canonical_form(self.tree())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> RootedTree {
        s.parse().unwrap()
    }

    #[test]
    fn small_keys() {
        assert_eq!(canonical_form(&t("-")).as_str(), "()");
        assert_eq!(canonical_form(&t("-,0,1")).as_str(), "((()))");
        assert_eq!(canonical_form(&t("-,0,1,1")).as_str(), "((()()))");
    }

    #[test]
    fn child_order_is_irrelevant() {
        let a = t("-,0,1,1,2");
        let b = t("-,0,1,1,3");
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert!(is_isomorphic(&a, &b));
    }

    #[test]
    fn relabelled_chain() {
        assert!(is_isomorphic(&t("-,0,1,2"), &t("-,3,0,2")));
        assert!(!is_isomorphic(&t("-,0,1,2"), &t("-,0,1")));
    }

    #[test]
    fn key_round_trip() {
        let tree = t("-,0,1,1,2,2,3");
        let key = canonical_form(&tree);
        assert_eq!(key.node_count(), tree.len());
        assert_eq!(canonical_form(&key.to_tree()), key);
        assert_eq!(CanonicalForm::parse(key.as_str()).unwrap(), key);
        assert!(CanonicalForm::parse("(()").is_err());
        assert!(CanonicalForm::parse("()()").is_err());
        assert!(CanonicalForm::parse("(()(()))").is_err());
        assert!(CanonicalForm::parse("((())())").is_ok());
    }

    #[test]
    fn dedup_keeps_first() {
        let s2 = t("-,0,1");
        let s3 = t("-,0,1,2");
        let s2b = t("-,2,0");
        assert_eq!(dedup(vec![s2.clone(), s2.clone()]), vec![s2.clone()]);
        assert_eq!(dedup(vec![]), Vec::<RootedTree>::new());
        assert_eq!(dedup(vec![s2.clone(), s3.clone(), s2b]), vec![s2, s3]);
    }
}
