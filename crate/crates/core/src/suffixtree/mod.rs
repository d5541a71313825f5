//! Cartesian suffix tree.
//!
//! A compacted trie over the strings `s_j = PD(T[j..n]) · (-1)` for
//! `j = 1..=n`, plus the lone string `(-1)` as `s_{n+1}`. Edge labels are
//! stored as `(suffix, start, end)` ranges into some `s_suffix` and every
//! label character is read back through [`oracle_char`], which costs one
//! lookup into `PD(T)`.
//!
//! Construction inserts the suffixes one at a time, so it is quadratic in the
//! worst case. Queries walk down from the root comparing the pattern's
//! parent-distance string against edge labels; every leaf below the landing
//! point is an occurrence.

mod format;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::pd::{parent_distance, substring_char, ParentDistance};

/// Terminator appended to every suffix string. Parent distances are never
/// negative, so it cannot collide with a real character.
pub const SENTINEL: i64 = -1;

pub type NodeId = usize;

pub const ROOT: NodeId = 0;

/// Edge label: characters `start..=end` (1-indexed) of `s_suffix`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeLabel {
    pub suffix: usize,
    pub start: usize,
    pub end: usize,
}

impl EdgeLabel {
    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone)]
struct Node {
    /// `None` only for the root.
    edge: Option<EdgeLabel>,
    /// String depth at the bottom of the incoming edge.
    depth: usize,
    children: BTreeMap<i64, NodeId>,
    leaf: Option<usize>,
}

/// `i`-th character of `s_j`, both 1-indexed, for the text whose parent
/// distances are `text_pd`.
pub fn oracle_char(text_pd: &ParentDistance, j: usize, i: usize) -> Result<i64> {
    let n = text_pd.len();
    if j == 0 || j > n + 1 {
        return Err(Error::OutOfRange {
            position: j,
            len: n + 1,
        });
    }
    let len = n + 2 - j;
    if i == 0 || i > len {
        return Err(Error::OutOfRange { position: i, len });
    }
    Ok(char_at(text_pd, j, i))
}

#[inline]
fn char_at(text_pd: &[usize], j: usize, i: usize) -> i64 {
    if i == text_pd.len() + 2 - j {
        SENTINEL
    } else {
        substring_char(text_pd, j - 1, i) as i64
    }
}

#[derive(Debug, Clone)]
pub struct CartesianSuffixTree {
    text: Vec<i64>,
    text_pd: ParentDistance,
    nodes: Vec<Node>,
}

impl CartesianSuffixTree {
    pub fn build(text: &[i64]) -> Self {
        let mut tree = CartesianSuffixTree {
            text: text.to_vec(),
            text_pd: parent_distance(text),
            nodes: vec![Node {
                edge: None,
                depth: 0,
                children: BTreeMap::new(),
                leaf: None,
            }],
        };
        for j in 1..=text.len() + 1 {
            tree.insert(j);
        }
        tree
    }

    #[inline]
    fn ch(&self, j: usize, i: usize) -> i64 {
        char_at(&self.text_pd, j, i)
    }

    fn push_node(&mut self, edge: EdgeLabel, depth: usize, leaf: Option<usize>) -> NodeId {
        self.nodes.push(Node {
            edge: Some(edge),
            depth,
            children: BTreeMap::new(),
            leaf,
        });
        self.nodes.len() - 1
    }

    fn insert(&mut self, j: usize) {
        let len = self.text.len() + 2 - j;
        let mut v = ROOT;
        loop {
            let d = self.nodes[v].depth;
            let c = self.ch(j, d + 1);
            let Some(&w) = self.nodes[v].children.get(&c) else {
                let leaf = self.push_node(
                    EdgeLabel {
                        suffix: j,
                        start: d + 1,
                        end: len,
                    },
                    len,
                    Some(j),
                );
                self.nodes[v].children.insert(c, leaf);
                return;
            };
            let e = self.nodes[w].edge.expect("non-root node has an edge");
            let mut t = 1;
            while t < e.len() && self.ch(e.suffix, e.start + t) == self.ch(j, d + 1 + t) {
                t += 1;
            }
            if t == e.len() {
                v = w;
                continue;
            }
            // the sentinel guarantees a mismatch before either string ends
            debug_assert!(d + 1 + t <= len);
            let mid = self.push_node(
                EdgeLabel {
                    suffix: e.suffix,
                    start: e.start,
                    end: e.start + t - 1,
                },
                d + t,
                None,
            );
            self.nodes[w].edge = Some(EdgeLabel {
                start: e.start + t,
                ..e
            });
            let below = self.ch(e.suffix, e.start + t);
            self.nodes[mid].children.insert(below, w);
            self.nodes[v].children.insert(c, mid);
            let leaf = self.push_node(
                EdgeLabel {
                    suffix: j,
                    start: d + t + 1,
                    end: len,
                },
                len,
                Some(j),
            );
            let first = self.ch(j, d + t + 1);
            self.nodes[mid].children.insert(first, leaf);
            return;
        }
    }

    pub fn text(&self) -> &[i64] {
        &self.text
    }

    pub fn text_pd(&self) -> &ParentDistance {
        &self.text_pd
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.leaf.is_some()).count()
    }

    pub fn edge(&self, node: NodeId) -> Option<EdgeLabel> {
        self.nodes[node].edge
    }

    pub fn depth(&self, node: NodeId) -> usize {
        self.nodes[node].depth
    }

    /// Suffix number of a leaf.
    pub fn leaf(&self, node: NodeId) -> Option<usize> {
        self.nodes[node].leaf
    }

    /// Children keyed by the first character of their edge, ascending.
    pub fn children(&self, node: NodeId) -> impl Iterator<Item = (i64, NodeId)> + '_ {
        self.nodes[node].children.iter().map(|(&c, &n)| (c, n))
    }

    /// Characters of an edge label, read through the oracle.
    pub fn label(&self, node: NodeId) -> Vec<i64> {
        match self.nodes[node].edge {
            Some(e) => (e.start..=e.end).map(|i| self.ch(e.suffix, i)).collect(),
            None => Vec::new(),
        }
    }

    /// Walks `s` from the root. Returns the node at or below the point where
    /// `s` ends, and whether `s` ends exactly at that node.
    fn locate(&self, s: &[i64]) -> Option<(NodeId, bool)> {
        let mut v = ROOT;
        let mut d = 0;
        while d < s.len() {
            let &w = self.nodes[v].children.get(&s[d])?;
            let e = self.nodes[w].edge.expect("non-root node has an edge");
            let take = e.len().min(s.len() - d);
            for t in 1..take {
                if self.ch(e.suffix, e.start + t) != s[d + t] {
                    return None;
                }
            }
            d += take;
            v = w;
            if take < e.len() {
                return Some((v, false));
            }
        }
        Some((v, true))
    }

    /// Node whose root path spells exactly `s`, if one exists.
    pub fn explicit_node(&self, s: &[i64]) -> Option<NodeId> {
        match self.locate(s) {
            Some((v, true)) => Some(v),
            _ => None,
        }
    }

    fn landing(&self, pattern: &[i64]) -> Option<NodeId> {
        if pattern.is_empty() || pattern.len() > self.text.len() {
            return None;
        }
        let pd: Vec<i64> = parent_distance(pattern).iter().map(|&d| d as i64).collect();
        self.locate(&pd).map(|(v, _)| v)
    }

    /// Every 1-indexed `i` with `CT(T[i..i+m-1]) = CT(P)`, ascending.
    pub fn query(&self, pattern: &[i64]) -> Result<Vec<usize>> {
        if pattern.is_empty() {
            return Err(Error::EmptyPattern);
        }
        let Some(v) = self.landing(pattern) else {
            return Ok(Vec::new());
        };
        let mut hits = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            if let Some(j) = self.nodes[u].leaf {
                hits.push(j);
            }
            stack.extend(self.nodes[u].children.values().copied());
        }
        hits.sort_unstable();
        Ok(hits)
    }

    /// Some occurrence of the pattern, without enumerating all of them.
    pub fn find_any(&self, pattern: &[i64]) -> Result<Option<usize>> {
        if pattern.is_empty() {
            return Err(Error::EmptyPattern);
        }
        let Some(mut v) = self.landing(pattern) else {
            return Ok(None);
        };
        loop {
            if let Some(j) = self.nodes[v].leaf {
                return Ok(Some(j));
            }
            v = *self.nodes[v]
                .children
                .values()
                .next()
                .expect("internal node has children");
        }
    }

    /// Root-to-leaf strings keyed by suffix number, decompressed through the
    /// oracle.
    pub fn leaf_strings(&self) -> BTreeMap<usize, Vec<i64>> {
        let mut out = BTreeMap::new();
        let mut stack = vec![(ROOT, Vec::new())];
        while let Some((v, prefix)) = stack.pop() {
            if let Some(j) = self.nodes[v].leaf {
                out.insert(j, prefix.clone());
            }
            for &w in self.nodes[v].children.values() {
                let mut s = prefix.clone();
                s.extend(self.label(w));
                stack.push((w, s));
            }
        }
        out
    }

    /// Structural checks: leaf count, branching, edge ranges and first
    /// characters. Used on every deserialized index.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let n = self.text.len();
        if self.text_pd.len() != n {
            return Err("text and parent distances disagree in length".into());
        }
        let mut seen = vec![false; n + 2];
        for (id, node) in self.nodes.iter().enumerate() {
            match (node.leaf, node.children.len()) {
                (Some(j), 0) => {
                    if j == 0 || j > n + 1 || seen[j] {
                        return Err(format!("node {id}: bad or repeated leaf suffix {j}"));
                    }
                    seen[j] = true;
                    if node.depth != n + 2 - j {
                        return Err(format!("leaf {j} has depth {}", node.depth));
                    }
                }
                (Some(_), _) => return Err(format!("node {id}: leaf with children")),
                (None, c) if id != ROOT && c < 2 => {
                    return Err(format!("node {id}: internal node with {c} children"))
                }
                (None, 0) => return Err("root has no children".into()),
                _ => {}
            }
            for (&c, &w) in &node.children {
                let child = self.nodes.get(w).ok_or_else(|| format!("dangling child {w}"))?;
                let e = child.edge.ok_or_else(|| format!("node {w}: missing edge"))?;
                if e.suffix == 0 || e.suffix > n + 1 {
                    return Err(format!("node {w}: edge suffix {} out of range", e.suffix));
                }
                if e.start != node.depth + 1 || e.end < e.start || e.end > n + 2 - e.suffix {
                    return Err(format!("node {w}: edge range {}..={} invalid", e.start, e.end));
                }
                if child.depth != e.end {
                    return Err(format!("node {w}: depth does not match edge"));
                }
                if self.ch(e.suffix, e.start) != c {
                    return Err(format!("node {w}: first edge character mismatch"));
                }
            }
        }
        let leaves = seen.iter().filter(|&&s| s).count();
        if leaves != n + 1 {
            return Err(format!("expected {} leaves, found {leaves}", n + 1));
        }
        Ok(())
    }
}

/// The strings `s_1..s_{n+1}` from the oracle.
pub fn quasi_suffixes(text: &[i64]) -> Vec<Vec<i64>> {
    let pd = parent_distance(text);
    let n = text.len();
    (1..=n + 1)
        .map(|j| (1..=n + 2 - j).map(|i| char_at(&pd, j, i)).collect())
        .collect()
}

/// Brute-force check that the suffix strings of `text` form a quasi-suffix
/// collection: lengths `n+2-j`, no string a prefix of another, and common
/// prefixes shrink by at most one when both strings drop their first
/// character.
pub fn verify_quasi_suffix(text: &[i64]) -> bool {
    let strings = quasi_suffixes(text);
    let count = strings.len();
    let lcp = |a: &[i64], b: &[i64]| a.iter().zip(b).take_while(|(x, y)| x == y).count();
    if strings.iter().enumerate().any(|(j, s)| s.len() != count - j) {
        return false;
    }
    for a in 0..count {
        for b in 0..count {
            if a == b {
                continue;
            }
            let l = lcp(&strings[a], &strings[b]);
            if l == strings[a].len() || l == strings[b].len() {
                return false;
            }
            if a + 1 < count && b + 1 < count && lcp(&strings[a + 1], &strings[b + 1]) + 1 < l {
                return false;
            }
        }
    }
    true
}
