//! Finite rooted trees in parent-array form.
//!
//! Node `0` is always the root. The text form lists the parent of every node
//! separated by commas, with `-` standing for the root's missing parent:
//! `-,0,1,1` is the four-node tree with two leaves above node 1.

use std::fmt;
use std::str::FromStr;

use crate::error::{CbckError, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RootedTree {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    depth: Vec<u32>,
}

impl RootedTree {
    /// Validates a parent list. `parents[0]` must be `None`.
    pub fn from_parent_list(parents: &[Option<usize>]) -> Result<Self> {
        let n = parents.len();
        if n == 0 {
            return Err(CbckError::EmptyTree);
        }
        if parents[0].is_some() {
            return Err(CbckError::RootHasParent);
        }
        for (node, p) in parents.iter().enumerate().skip(1) {
            match *p {
                None => return Err(CbckError::MultiRoot { node }),
                Some(parent) if parent >= n => {
                    return Err(CbckError::InvalidParent { node, parent })
                }
                Some(_) => {}
            }
        }

        // Depths by walking up; a walk longer than n steps means a cycle.
        let mut depth: Vec<Option<u32>> = vec![None; n];
        depth[0] = Some(0);
        for start in 1..n {
            let mut path = Vec::new();
            let mut cur = start;
            while depth[cur].is_none() {
                path.push(cur);
                if path.len() > n {
                    return Err(CbckError::Cycle { node: start });
                }
                cur = parents[cur].expect("validated above");
            }
            let mut d = depth[cur].unwrap();
            for &node in path.iter().rev() {
                d += 1;
                depth[node] = Some(d);
            }
        }

        let mut children = vec![Vec::new(); n];
        for (node, p) in parents.iter().enumerate().skip(1) {
            children[p.unwrap()].push(node);
        }
        Ok(RootedTree {
            parent: parents.to_vec(),
            children,
            depth: depth.into_iter().map(Option::unwrap).collect(),
        })
    }

    /// Convenience form where the root's entry is ignored.
    pub fn from_parents(parents: &[usize]) -> Result<Self> {
        let list: Vec<Option<usize>> = parents
            .iter()
            .enumerate()
            .map(|(i, &p)| if i == 0 { None } else { Some(p) })
            .collect();
        Self::from_parent_list(&list)
    }

    pub fn trivial() -> Self {
        Self::from_parent_list(&[None]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        self.parent[node]
    }

    pub fn parent_list(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn children(&self, node: usize) -> &[usize] {
        &self.children[node]
    }

    pub fn depth(&self, node: usize) -> u32 {
        self.depth[node]
    }

    pub fn depths(&self) -> &[u32] {
        &self.depth
    }

    pub fn height(&self) -> u32 {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&v| self.children[v].is_empty())
    }

    /// `true` when `a` lies on the path from the root to `b` (inclusive).
    pub fn is_ancestor_or_self(&self, a: usize, b: usize) -> bool {
        let mut cur = b;
        loop {
            if cur == a {
                return true;
            }
            if self.depth[cur] <= self.depth[a] {
                return false;
            }
            cur = self.parent[cur].unwrap();
        }
    }

    /// Deepest common ancestor.
    pub fn lca(&self, mut a: usize, mut b: usize) -> usize {
        while self.depth[a] > self.depth[b] {
            a = self.parent[a].unwrap();
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b].unwrap();
        }
        while a != b {
            a = self.parent[a].unwrap();
            b = self.parent[b].unwrap();
        }
        a
    }

    /// Ancestor of `node` at the given depth (`node` itself if the depth matches).
    pub fn ancestor_at(&self, mut node: usize, depth: u32) -> usize {
        debug_assert!(depth <= self.depth[node]);
        while self.depth[node] > depth {
            node = self.parent[node].unwrap();
        }
        node
    }

    /// Appends a new leaf below `parent` and returns its index.
    pub fn with_leaf(&self, parent: usize) -> (RootedTree, usize) {
        let mut list = self.parent.clone();
        list.push(Some(parent));
        let tree = Self::from_parent_list(&list).expect("appending a leaf keeps the tree valid");
        (tree, self.len())
    }
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parent.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            match p {
                None => write!(f, "-")?,
                Some(p) => write!(f, "{p}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootedTree({self})")
    }
}

impl FromStr for RootedTree {
    type Err = CbckError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(CbckError::Parse("empty tree".into()));
        }
        let mut list = Vec::new();
        for (i, tok) in s.split(',').enumerate() {
            let tok = tok.trim();
            if tok == "-" || tok == "_" {
                list.push(None);
            } else {
                let p = tok.parse::<usize>().map_err(|_| {
                    CbckError::Parse(format!(
                        "entry {i}: expected a node index or `-`, got `{tok}`"
                    ))
                })?;
                list.push(Some(p));
            }
        }
        Self::from_parent_list(&list)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_node() {
        let t: RootedTree = "-".parse().unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.height(), 0);
    }

    #[test]
    fn chain_of_four() {
        let t: RootedTree = "-,0,1,2".parse().unwrap();
        assert_eq!(t.depths(), &[0, 1, 2, 3]);
        assert_eq!(t.leaves().collect::<Vec<_>>(), vec![3]);
    }

    #[test]
    fn two_leaves_above_atom() {
        let t: RootedTree = "-,0,1,1".parse().unwrap();
        assert_eq!(t.children(1), &[2, 3]);
        assert_eq!(t.lca(2, 3), 1);
        assert_eq!(t.to_string(), "-,0,1,1");
    }

    #[test]
    fn parents_may_come_after_children() {
        let t: RootedTree = "-,2,0".parse().unwrap();
        assert_eq!(t.depths(), &[0, 2, 1]);
    }

    #[test]
    fn rejects_cycles() {
        assert_eq!(
            "-,0,2".parse::<RootedTree>(),
            Err(CbckError::Cycle { node: 2 })
        );
        assert!(matches!(
            "-,3,1,2".parse::<RootedTree>(),
            Err(CbckError::Cycle { .. })
        ));
    }

    #[test]
    fn rejects_second_root() {
        assert_eq!(
            RootedTree::from_parent_list(&[None, Some(0), None]),
            Err(CbckError::MultiRoot { node: 2 })
        );
        assert_eq!("0,0".parse::<RootedTree>(), Err(CbckError::RootHasParent));
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(
            "-,x".parse::<RootedTree>(),
            Err(CbckError::Parse(_))
        ));
        assert_eq!(
            "-,5".parse::<RootedTree>(),
            Err(CbckError::InvalidParent { node: 1, parent: 5 })
        );
        assert_eq!(RootedTree::from_parent_list(&[]), Err(CbckError::EmptyTree));
    }
}
