use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HellyError {
    #[error("graph with {vertices} vertices and {edges} edges is not a tree")]
    NotATree { vertices: usize, edges: usize },
    #[error("subtree {0} is empty, disconnected or leaves the tree")]
    InvalidSubtree(usize),
}

/// A finite tree on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    adj: Vec<Vec<usize>>,
}

impl Tree {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, HellyError> {
        let not_tree = HellyError::NotATree {
            vertices: n,
            edges: edges.len(),
        };
        if n == 0 || edges.len() != n - 1 {
            return Err(not_tree);
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(not_tree);
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let tree = Tree { adj };
        if tree.depths().iter().any(Option::is_none) {
            return Err(not_tree);
        }
        Ok(tree)
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    fn depths(&self) -> Vec<Option<usize>> {
        let mut depth = vec![None; self.adj.len()];
        depth[0] = Some(0);
        let mut queue = VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            let d = depth[u].unwrap_or_default();
            for &v in &self.adj[u] {
                if depth[v].is_none() {
                    depth[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        depth
    }

    /// Whether `set` is nonempty and induces a connected subgraph.
    pub fn is_subtree(&self, set: &BTreeSet<usize>) -> bool {
        let Some(&start) = set.iter().next() else {
            return false;
        };
        if set.iter().any(|&v| v >= self.len()) {
            return false;
        }
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if set.contains(&v) && seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        seen.len() == set.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HellyOutcome {
    /// A vertex lying in every subtree.
    Common(usize),
    /// Indices of two disjoint subtrees.
    Disjoint(usize, usize),
}

/// Finds a vertex common to all subtrees, or a disjoint pair.
///
/// Each subtree has a unique vertex nearest the root. Two subtrees meet
/// exactly when one contains the top of the other, and when all pairs meet
/// the deepest top lies in every subtree.
pub fn helly_intersection(
    tree: &Tree,
    subtrees: &[BTreeSet<usize>],
) -> Result<HellyOutcome, HellyError> {
    for (i, s) in subtrees.iter().enumerate() {
        if !tree.is_subtree(s) {
            return Err(HellyError::InvalidSubtree(i));
        }
    }
    let depth: Vec<usize> = tree.depths().into_iter().map(Option::unwrap_or_default).collect();
    let tops: Vec<usize> = subtrees
        .iter()
        .map(|s| *s.iter().min_by_key(|&&v| (depth[v], v)).expect("nonempty"))
        .collect();
    for i in 0..subtrees.len() {
        for j in i + 1..subtrees.len() {
            if !subtrees[i].contains(&tops[j]) && !subtrees[j].contains(&tops[i]) {
                return Ok(HellyOutcome::Disjoint(i, j));
            }
        }
    }
    let common = tops.iter().copied().max_by_key(|&v| depth[v]).unwrap_or(0);
    Ok(HellyOutcome::Common(common))
}
