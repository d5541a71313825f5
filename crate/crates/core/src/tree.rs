use crate::error::{Error, Result};
use crate::pd::validate;

/// Array-backed Cartesian tree.
///
/// Node `i` is the `i`-th character of the source sequence, so an in-order
/// walk visits `1, 2, ..., n` and two trees have the same shape exactly when
/// their root and child arrays are equal. Node ids are 1-indexed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CartesianTree {
    root: Option<usize>,
    left: Vec<Option<usize>>,
    right: Vec<Option<usize>>,
    parent: Vec<Option<usize>>,
}

impl CartesianTree {
    fn with_len(n: usize) -> Self {
        CartesianTree {
            root: None,
            left: vec![None; n],
            right: vec![None; n],
            parent: vec![None; n],
        }
    }

    /// Builds the tree of `s` in linear time by maintaining its rightmost
    /// spine. The leftmost of several equal minima becomes the ancestor.
    pub fn build(s: &[i64]) -> Self {
        let mut tree = Self::with_len(s.len());
        let mut spine: Vec<usize> = Vec::new();
        for (i, &c) in s.iter().enumerate() {
            let mut last = None;
            while let Some(&top) = spine.last() {
                if s[top] <= c {
                    break;
                }
                last = spine.pop();
            }
            tree.attach(i, spine.last().copied(), last);
            spine.push(i);
        }
        tree
    }

    /// Rebuilds the tree from a parent-distance string by inserting one node
    /// at a time on the rightmost spine.
    pub fn from_parent_distance(dist: &[usize]) -> Result<Self> {
        validate(dist)?;
        let mut tree = Self::with_len(dist.len());
        let mut spine: Vec<usize> = Vec::new();
        for (i, &d) in dist.iter().enumerate() {
            let parent = if d == 0 { None } else { Some(i - d) };
            let mut last = None;
            while let Some(&top) = spine.last() {
                if Some(top) == parent {
                    break;
                }
                last = spine.pop();
            }
            if parent.is_some() && spine.is_empty() {
                // unreachable after validate, kept so a bad slice never panics
                return Err(Error::MalformedParentDistance {
                    position: i + 1,
                    reason: "parent is not on the rightmost spine",
                });
            }
            tree.attach(i, parent, last);
            spine.push(i);
        }
        Ok(tree)
    }

    /// Hangs node `i` below `parent` (or makes it the root), adopting the
    /// subtree `orphan` that was cut off the spine as its left child.
    fn attach(&mut self, i: usize, parent: Option<usize>, orphan: Option<usize>) {
        self.left[i] = orphan;
        if let Some(o) = orphan {
            self.parent[o] = Some(i);
        }
        self.parent[i] = parent;
        match parent {
            Some(p) => self.right[p] = Some(i),
            None => self.root = Some(i),
        }
    }

    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    pub fn root(&self) -> Option<usize> {
        self.root.map(|r| r + 1)
    }

    pub fn left(&self, node: usize) -> Option<usize> {
        self.left[node - 1].map(|c| c + 1)
    }

    pub fn right(&self, node: usize) -> Option<usize> {
        self.right[node - 1].map(|c| c + 1)
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        self.parent[node - 1].map(|c| c + 1)
    }

    /// Node ids in in-order; always `1..=n` for a well-formed tree.
    pub fn in_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = Vec::new();
        let mut cur = self.root;
        while cur.is_some() || !stack.is_empty() {
            while let Some(c) = cur {
                stack.push(c);
                cur = self.left[c];
            }
            let c = stack.pop().unwrap();
            out.push(c + 1);
            cur = self.right[c];
        }
        out
    }
}
