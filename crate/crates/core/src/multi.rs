//! Multiple-pattern Cartesian tree matching with an Aho-Corasick automaton.
//!
//! The trie is built over the patterns' parent-distance strings. Unlike the
//! classic automaton, the character to follow from a failure state is not
//! fixed: the last parent distance of a suffix depends on how long that
//! suffix is, so it is recomputed for every candidate on the failure chain.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::pd::{parent_distance, substring_char, ParentDistance};

#[cfg(not(feature = "hashed-transitions"))]
type Transitions = std::collections::BTreeMap<usize, NodeId>;
#[cfg(feature = "hashed-transitions")]
type Transitions = std::collections::HashMap<usize, NodeId>;

pub type NodeId = usize;

pub const ROOT: NodeId = 0;

#[derive(Debug, Clone)]
pub struct Node {
    idx: usize,
    len: usize,
    trans: Transitions,
    fail: NodeId,
    terminal: Vec<usize>,
    output: Vec<usize>,
}

impl Node {
    fn new(idx: usize, len: usize) -> Self {
        Node {
            idx,
            len,
            trans: Transitions::default(),
            fail: ROOT,
            terminal: Vec::new(),
            output: Vec::new(),
        }
    }

    /// Smallest pattern id whose prefix this node spells.
    pub fn pattern(&self) -> usize {
        self.idx
    }

    /// Length of the prefix this node spells.
    pub fn depth(&self) -> usize {
        self.len
    }

    pub fn transition(&self, x: usize) -> Option<NodeId> {
        self.trans.get(&x).copied()
    }

    pub fn transitions(&self) -> impl Iterator<Item = (usize, NodeId)> + '_ {
        self.trans.iter().map(|(&x, &n)| (x, n))
    }

    pub fn fail(&self) -> NodeId {
        self.fail
    }

    /// Ids of patterns whose whole parent-distance string ends here.
    pub fn terminal(&self) -> &[usize] {
        &self.terminal
    }

    /// Ids of patterns that match a suffix of this node's string, ascending.
    pub fn output(&self) -> &[usize] {
        &self.output
    }
}

/// Trie over parent-distance strings, before failure links are added.
#[derive(Debug, Clone)]
pub struct Trie {
    nodes: Vec<Node>,
    patterns: Vec<ParentDistance>,
}

/// Completed automaton. Pattern ids are 1-indexed in input order.
#[derive(Debug, Clone)]
pub struct MatchAutomaton {
    nodes: Vec<Node>,
    patterns: Vec<ParentDistance>,
}

pub fn build_trie<P: AsRef<[i64]>>(patterns: &[P]) -> Result<Trie> {
    if patterns.is_empty() {
        return Err(Error::NoPatterns);
    }
    let mut nodes = vec![Node::new(0, 0)];
    let mut pds = Vec::with_capacity(patterns.len());
    for (j, p) in patterns.iter().enumerate() {
        let id = j + 1;
        let pd = parent_distance(p.as_ref());
        if pd.is_empty() {
            return Err(Error::EmptyPattern);
        }
        let mut cur = ROOT;
        for (k, &x) in pd.iter().enumerate() {
            cur = match nodes[cur].trans.get(&x) {
                Some(&next) => next,
                None => {
                    let next = nodes.len();
                    nodes.push(Node::new(id, k + 1));
                    nodes[cur].trans.insert(x, next);
                    next
                }
            };
        }
        nodes[cur].terminal.push(id);
        pds.push(pd);
    }
    Ok(Trie {
        nodes,
        patterns: pds,
    })
}

impl Trie {
    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Adds failure links and output sets in breadth-first order.
    pub fn build_failure(self) -> MatchAutomaton {
        let Trie {
            mut nodes,
            patterns,
        } = self;
        let mut queue = VecDeque::new();
        let mut children: Vec<NodeId> = nodes[ROOT].trans.values().copied().collect();
        children.sort_unstable();
        for child in children {
            queue.push_back((ROOT, child));
        }
        while let Some((parent, node)) = queue.pop_front() {
            let (idx, len) = (nodes[node].idx, nodes[node].len);
            let pd = patterns[idx - 1].as_slice();
            let mut fail = ROOT;
            let mut ptr = parent;
            while ptr != ROOT {
                ptr = nodes[ptr].fail;
                let plen = nodes[ptr].len;
                // last character of PD(P_idx[len-plen..=len]), 1-indexed
                let x = substring_char(pd, len - plen - 1, plen + 1);
                if let Some(&next) = nodes[ptr].trans.get(&x) {
                    fail = next;
                    break;
                }
            }
            nodes[node].fail = fail;
            let mut output = nodes[node].terminal.clone();
            output.extend_from_slice(&nodes[fail].output);
            output.sort_unstable();
            output.dedup();
            nodes[node].output = output;

            let mut children: Vec<NodeId> = nodes[node].trans.values().copied().collect();
            children.sort_unstable();
            for child in children {
                queue.push_back((node, child));
            }
        }
        MatchAutomaton { nodes, patterns }
    }
}

impl MatchAutomaton {
    pub fn new<P: AsRef<[i64]>>(patterns: &[P]) -> Result<Self> {
        Ok(build_trie(patterns)?.build_failure())
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn pattern_count(&self) -> usize {
        self.patterns.len()
    }

    pub fn pattern_len(&self, id: usize) -> usize {
        self.patterns[id - 1].len()
    }

    /// Node spelling exactly `pd`, if the trie has one.
    pub fn find(&self, pd: &[usize]) -> Option<NodeId> {
        pd.iter()
            .try_fold(ROOT, |cur, &x| self.nodes[cur].transition(x))
    }

    pub fn searcher(&self) -> MultiMatcher<'_> {
        MultiMatcher::new(self)
    }

    /// Every `(position, pattern)` occurrence, sorted by position then id.
    pub fn search<I>(&self, text: I) -> Vec<MultiMatch>
    where
        I: IntoIterator<Item = i64>,
    {
        let mut matcher = self.searcher();
        let mut hits = Vec::new();
        for c in text {
            hits.extend(matcher.advance(c));
        }
        hits.sort_unstable();
        hits
    }
}

/// One occurrence: 1-indexed start position and 1-indexed pattern id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiMatch {
    pub position: usize,
    pub pattern: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MultiCounters {
    pub failure_links: u64,
    pub pushes: u64,
    pub pops: u64,
    pub max_deque: usize,
}

/// Streaming search cursor over a [`MatchAutomaton`].
#[derive(Debug, Clone)]
pub struct MultiMatcher<'a> {
    automaton: &'a MatchAutomaton,
    state: NodeId,
    window: VecDeque<(i64, usize)>,
    pos: usize,
    counters: MultiCounters,
}

impl<'a> MultiMatcher<'a> {
    pub fn new(automaton: &'a MatchAutomaton) -> Self {
        MultiMatcher {
            automaton,
            state: ROOT,
            window: VecDeque::new(),
            pos: 0,
            counters: MultiCounters::default(),
        }
    }

    /// Feeds one character and yields the occurrences ending at it, in
    /// ascending pattern id.
    pub fn advance(&mut self, c: i64) -> impl Iterator<Item = MultiMatch> + 'a {
        self.pos += 1;
        let i = self.pos;
        let nodes = &self.automaton.nodes;

        while let Some(&(value, _)) = self.window.back() {
            if value <= c {
                break;
            }
            self.window.pop_back();
            self.counters.pops += 1;
        }

        let mut q = self.state;
        loop {
            if q == ROOT {
                q = nodes[ROOT].trans[&0];
                break;
            }
            let x = self.window.back().map_or(0, |&(_, index)| i - index);
            if let Some(next) = nodes[q].transition(x) {
                q = next;
                break;
            }
            q = nodes[q].fail;
            self.counters.failure_links += 1;
            let first = i - nodes[q].len;
            while let Some(&(_, index)) = self.window.front() {
                if index >= first {
                    break;
                }
                self.window.pop_front();
                self.counters.pops += 1;
            }
        }
        self.state = q;
        self.window.push_back((c, i));
        self.counters.pushes += 1;
        self.counters.max_deque = self.counters.max_deque.max(self.window.len());

        let automaton = self.automaton;
        automaton.nodes[q].output.iter().map(move |&id| MultiMatch {
            position: i + 1 - automaton.pattern_len(id),
            pattern: id,
        })
    }

    pub fn state(&self) -> NodeId {
        self.state
    }

    pub fn counters(&self) -> MultiCounters {
        self.counters
    }
}

pub fn multi_search<I, P>(text: I, patterns: &[P]) -> Result<Vec<MultiMatch>>
where
    I: IntoIterator<Item = i64>,
    P: AsRef<[i64]>,
{
    Ok(MatchAutomaton::new(patterns)?.search(text))
}
