//! Binary index format.
//!
//! All integers little-endian, fixed width:
//!
//! ```text
//! magic    4 bytes  "CSTX"
//! version  u32      1
//! n        u64      text length
//! text     n × i64
//! nodes    preorder, children in ascending first-character order; per node
//!          u32 child count, then u64 suffix, u64 start, u64 end of the
//!          incoming edge (all zero for the root)
//! ```
//!
//! Leaves are the nodes with no children; a leaf's suffix number is the
//! suffix of its own edge. Loading re-runs
//! [`check_invariants`](super::CartesianSuffixTree::check_invariants) and
//! compares every internal edge label with a leaf below it.

use std::collections::BTreeMap;

use super::{char_at, CartesianSuffixTree, EdgeLabel, Node, ROOT};
use crate::error::{Error, Result};
use crate::pd::parent_distance;

pub const MAGIC: [u8; 4] = *b"CSTX";
pub const VERSION: u32 = 1;

const NODE_RECORD: usize = 4 + 3 * 8;

fn corrupt(msg: impl Into<String>) -> Error {
    Error::CorruptIndex(msg.into())
}

struct Reader<'a> {
    buf: &'a [u8],
}

impl<'a> Reader<'a> {
    fn take<const N: usize>(&mut self, what: &str) -> Result<[u8; N]> {
        if self.buf.len() < N {
            return Err(corrupt(format!("truncated while reading {what}")));
        }
        let (head, rest) = self.buf.split_at(N);
        self.buf = rest;
        Ok(head.try_into().unwrap())
    }

    fn u32(&mut self, what: &str) -> Result<u32> {
        self.take::<4>(what).map(u32::from_le_bytes)
    }

    fn u64(&mut self, what: &str) -> Result<u64> {
        self.take::<8>(what).map(u64::from_le_bytes)
    }

    fn usize(&mut self, what: &str) -> Result<usize> {
        usize::try_from(self.u64(what)?).map_err(|_| corrupt(format!("{what} does not fit in memory")))
    }

    fn i64(&mut self, what: &str) -> Result<i64> {
        self.take::<8>(what).map(i64::from_le_bytes)
    }
}

impl CartesianSuffixTree {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(16 + 8 * self.text.len() + NODE_RECORD * self.nodes.len());
        out.extend_from_slice(&MAGIC);
        out.extend_from_slice(&VERSION.to_le_bytes());
        out.extend_from_slice(&(self.text.len() as u64).to_le_bytes());
        for &v in &self.text {
            out.extend_from_slice(&v.to_le_bytes());
        }
        let mut stack = vec![ROOT];
        while let Some(v) = stack.pop() {
            let node = &self.nodes[v];
            let e = node.edge.unwrap_or(EdgeLabel {
                suffix: 0,
                start: 0,
                end: 0,
            });
            out.extend_from_slice(&(node.children.len() as u32).to_le_bytes());
            for x in [e.suffix, e.start, e.end] {
                out.extend_from_slice(&(x as u64).to_le_bytes());
            }
            stack.extend(node.children.values().rev().copied());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader { buf: bytes };
        if r.take::<4>("magic")? != MAGIC {
            return Err(corrupt("bad magic"));
        }
        let version = r.u32("version")?;
        if version != VERSION {
            return Err(corrupt(format!("unsupported version {version}")));
        }
        let n = r.usize("text length")?;
        if n.checked_mul(8).is_none_or(|b| b > r.buf.len()) {
            return Err(corrupt("truncated text"));
        }
        let text = (0..n).map(|_| r.i64("text")).collect::<Result<Vec<_>>>()?;
        let text_pd = parent_distance(&text);

        // a compacted trie with n + 1 leaves has at most 2n + 2 nodes
        let max_nodes = 2 * n + 2;
        let mut nodes: Vec<Node> = Vec::new();
        // (node, children still to read)
        let mut open: Vec<(usize, u32)> = Vec::new();
        loop {
            let parent = loop {
                match open.last_mut() {
                    Some((_, 0)) => {
                        open.pop();
                    }
                    Some((p, left)) => {
                        *left -= 1;
                        break Some(*p);
                    }
                    None => break None,
                }
            };
            if parent.is_none() && !nodes.is_empty() {
                break;
            }
            if nodes.len() == max_nodes {
                return Err(corrupt("too many nodes"));
            }
            let children = r.u32("child count")?;
            let suffix = r.usize("edge suffix")?;
            let start = r.usize("edge start")?;
            let end = r.usize("edge end")?;
            let id = nodes.len();
            let (edge, depth) = match parent {
                None => {
                    if (suffix, start, end) != (0, 0, 0) {
                        return Err(corrupt("root record carries an edge"));
                    }
                    (None, 0)
                }
                Some(p) => {
                    if suffix == 0 || suffix > n + 1 || start == 0 || end < start || end > n + 2 - suffix {
                        return Err(corrupt(format!("node {id}: edge ({suffix}, {start}, {end}) out of range")));
                    }
                    let first = char_at(&text_pd, suffix, start);
                    if nodes[p].children.insert(first, id).is_some() {
                        return Err(corrupt(format!("node {id}: duplicate first character")));
                    }
                    (Some(EdgeLabel { suffix, start, end }), end)
                }
            };
            nodes.push(Node {
                edge,
                depth,
                children: BTreeMap::new(),
                leaf: (children == 0 && id != ROOT).then_some(suffix),
            });
            open.push((id, children));
        }
        if !r.buf.is_empty() {
            return Err(corrupt(format!("{} trailing bytes", r.buf.len())));
        }

        let tree = CartesianSuffixTree { text, text_pd, nodes };
        tree.check_invariants().map_err(corrupt)?;
        tree.check_labels()?;
        Ok(tree)
    }

    /// Every internal edge must spell the same characters as the suffix of
    /// some leaf below it.
    fn check_labels(&self) -> Result<()> {
        let mut below = vec![0usize; self.nodes.len()];
        // children always have larger ids than their parent
        for v in (0..self.nodes.len()).rev() {
            let node = &self.nodes[v];
            below[v] = match node.leaf {
                Some(j) => j,
                None => node.children.values().map(|&w| below[w]).next().unwrap_or(0),
            };
            if node.leaf.is_some() {
                continue;
            }
            if let Some(e) = node.edge {
                let j = below[v];
                for i in e.start..=e.end {
                    if self.ch(e.suffix, i) != self.ch(j, i) {
                        return Err(corrupt(format!("node {v}: edge label disagrees with leaf {j}")));
                    }
                }
            }
        }
        Ok(())
    }
}
