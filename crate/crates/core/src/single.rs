//! Single-pattern Cartesian tree matching.
//!
//! This is KMP with the pattern replaced by its parent-distance string. The
//! text side is never materialized: its parent distances are computed on the
//! fly from a deque holding the non-decreasing subsequence of the currently
//! matched window, so a [`Matcher`] uses `O(m)` memory however long the text
//! is.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::pd::{parent_distance, substring_char, ParentDistance};

/// KMP-style failure function over Cartesian tree matching.
///
/// `pi()[q - 1]` is the largest `k < q` such that the length-`k` prefix and the
/// length-`k` suffix of `P[1..q]` have the same Cartesian tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailureFunction {
    pi: Vec<usize>,
    pattern_pd: ParentDistance,
}

impl FailureFunction {
    pub fn new(pattern: &[i64]) -> Result<Self> {
        if pattern.is_empty() {
            return Err(Error::EmptyPattern);
        }
        let pattern_pd = parent_distance(pattern);
        let pd = pattern_pd.as_slice();
        let m = pd.len();
        let mut pi = vec![0; m];
        let mut len = 0;
        for i in 1..m {
            while len != 0 {
                // last character of PD(P[i-len..=i]) against PD(P)[len]
                if substring_char(pd, i - len, len + 1) == pd[len] {
                    break;
                }
                len = pi[len - 1];
            }
            len += 1;
            pi[i] = len;
        }
        Ok(FailureFunction { pi, pattern_pd })
    }

    pub fn pi(&self) -> &[usize] {
        &self.pi
    }

    pub fn pattern_pd(&self) -> &ParentDistance {
        &self.pattern_pd
    }

    pub fn pattern_len(&self) -> usize {
        self.pi.len()
    }
}

pub fn failure_func(pattern: &[i64]) -> Result<FailureFunction> {
    FailureFunction::new(pattern)
}

/// Work done by a search, for checking the linear-time bounds.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchCounters {
    /// Parent-distance comparisons between text window and pattern.
    pub comparisons: u64,
    /// Times the matched length was cut back through the failure function.
    pub failure_links: u64,
    pub pushes: u64,
    pub pops_back: u64,
    pub pops_front: u64,
    /// Largest deque length seen.
    pub max_deque: usize,
}

impl SearchCounters {
    pub fn pops(&self) -> u64 {
        self.pops_back + self.pops_front
    }
}

/// Streaming matcher state: the matched length plus the deque of
/// `(value, text position)` pairs describing the matched window.
#[derive(Debug, Clone)]
pub struct Matcher<'a> {
    ff: &'a FailureFunction,
    len: usize,
    window: VecDeque<(i64, usize)>,
    pos: usize,
    counters: SearchCounters,
}

impl<'a> Matcher<'a> {
    pub fn new(ff: &'a FailureFunction) -> Self {
        Matcher {
            ff,
            len: 0,
            window: VecDeque::with_capacity(ff.pattern_len() + 1),
            pos: 0,
            counters: SearchCounters::default(),
        }
    }

    /// Feeds the next text character. Returns the 1-indexed start of the
    /// occurrence that ends at this character, if any.
    pub fn advance(&mut self, c: i64) -> Option<usize> {
        self.pos += 1;
        let i = self.pos;
        let pd = self.ff.pattern_pd.as_slice();
        let pi = &self.ff.pi;
        let m = pi.len();

        while let Some(&(value, _)) = self.window.back() {
            if value <= c {
                break;
            }
            self.window.pop_back();
            self.counters.pops_back += 1;
        }

        while self.len != 0 {
            let x = self.window.back().map_or(0, |&(_, index)| i - index);
            self.counters.comparisons += 1;
            if x == pd[self.len] {
                break;
            }
            self.len = pi[self.len - 1];
            self.counters.failure_links += 1;
            self.prune_front(i - self.len);
        }

        self.len += 1;
        self.window.push_back((c, i));
        self.counters.pushes += 1;
        self.counters.max_deque = self.counters.max_deque.max(self.window.len());

        if self.len == m {
            self.len = pi[m - 1];
            self.counters.failure_links += 1;
            self.prune_front(i - self.len + 1);
            Some(i + 1 - m)
        } else {
            None
        }
    }

    /// Drops front entries whose position is below `first`.
    fn prune_front(&mut self, first: usize) {
        while let Some(&(_, index)) = self.window.front() {
            if index >= first {
                break;
            }
            self.window.pop_front();
            self.counters.pops_front += 1;
        }
    }

    /// Length of the currently matched pattern prefix.
    pub fn matched_len(&self) -> usize {
        self.len
    }

    /// Number of text characters consumed.
    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn window(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.window.iter().copied()
    }

    pub fn counters(&self) -> SearchCounters {
        self.counters
    }
}

/// All 1-indexed positions `i` with `CT(T[i..i+m-1]) = CT(P)`, in increasing
/// order. The text is consumed in a single pass.
pub fn search<I>(text: I, pattern: &[i64]) -> Result<Vec<usize>>
where
    I: IntoIterator<Item = i64>,
{
    search_counted(text, pattern).map(|(hits, _)| hits)
}

pub fn search_counted<I>(text: I, pattern: &[i64]) -> Result<(Vec<usize>, SearchCounters)>
where
    I: IntoIterator<Item = i64>,
{
    let ff = FailureFunction::new(pattern)?;
    let mut matcher = Matcher::new(&ff);
    let hits = text.into_iter().filter_map(|c| matcher.advance(c)).collect();
    Ok((hits, matcher.counters()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::{naive_failure, naive_search};
    use proptest::prelude::*;

    const TEXT: [i64; 14] = [41, 36, 15, 8, 41, 23, 28, 16, 26, 22, 56, 29, 12, 61];

    #[test]
    fn failure_fixtures() {
        let ff = failure_func(&[5, 7, 4, 6, 1, 3, 2]).unwrap();
        assert_eq!(ff.pi(), &[0, 1, 1, 2, 3, 4, 1]);
        assert_eq!(failure_func(&[1]).unwrap().pi(), &[0]);
        let p = [4, 2, 3, 1, 5];
        assert_eq!(failure_func(&p).unwrap().pi(), naive_failure(&p).as_slice());
        assert_eq!(naive_failure(&p), vec![0, 1, 1, 2, 3]);
    }

    #[test]
    fn empty_pattern() {
        assert_eq!(failure_func(&[]), Err(Error::EmptyPattern));
        assert_eq!(search(TEXT, &[]), Err(Error::EmptyPattern));
    }

    #[test]
    fn search_fixtures() {
        assert_eq!(search(TEXT, &[6, 2, 5, 1, 4, 3, 7]).unwrap(), vec![5]);
        let p = [5, 7, 4, 6, 1, 3, 2];
        assert_eq!(search(p, &p).unwrap(), vec![1]);
        assert_eq!(search(Vec::new(), &p).unwrap(), Vec::<usize>::new());
        assert_eq!(search([3, 1, 2], &p).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn single_char_pattern_matches_everywhere() {
        assert_eq!(search(TEXT, &[42]).unwrap(), (1..=14).collect::<Vec<_>>());
    }

    #[test]
    fn overlapping_matches() {
        assert_eq!(search([7; 6], &[1, 2, 3]).unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(search([1, 2, 3, 4, 5], &[1, 1]).unwrap(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn first_character_always_extends() {
        let ff = failure_func(&[3, 1, 2]).unwrap();
        let mut m = Matcher::new(&ff);
        assert_eq!(m.advance(-9), None);
        assert_eq!(m.matched_len(), 1);
        assert_eq!(m.window().collect::<Vec<_>>(), vec![(-9, 1)]);
    }

    #[test]
    fn streaming_matches_batch() {
        let ff = failure_func(&[6, 2, 5, 1, 4, 3, 7]).unwrap();
        let mut m = Matcher::new(&ff);
        let streamed: Vec<usize> = TEXT.iter().filter_map(|&c| m.advance(c)).collect();
        assert_eq!(streamed, naive_search(&TEXT, &[6, 2, 5, 1, 4, 3, 7]));
        assert_eq!(m.position(), TEXT.len());
    }

    fn small_string(sigma: i64, max: usize) -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(0..sigma, 0..max)
    }

    proptest! {
        #[test]
        fn failure_matches_oracle(p in prop::collection::vec(0i64..3, 1..12)) {
            let ff = failure_func(&p).unwrap();
            prop_assert_eq!(ff.pi().to_vec(), naive_failure(&p));
        }

        #[test]
        fn search_matches_oracle(
            t in small_string(3, 80),
            p in prop::collection::vec(0i64..3, 1..6),
        ) {
            prop_assert_eq!(search(t.iter().copied(), &p).unwrap(), naive_search(&t, &p));
        }

        #[test]
        fn deque_invariants(
            t in small_string(4, 300),
            p in prop::collection::vec(0i64..4, 1..8),
        ) {
            let ff = failure_func(&p).unwrap();
            let m = p.len();
            let pi_m = ff.pi()[m - 1];
            let mut matcher = Matcher::new(&ff);
            for &c in &t {
                let hit = matcher.advance(c);
                let window: Vec<_> = matcher.window().collect();
                prop_assert!(window.len() <= m);
                prop_assert!(window.windows(2).all(|w| w[0].0 <= w[1].0 && w[0].1 < w[1].1));
                if hit.is_some() {
                    let i = matcher.position();
                    prop_assert!(window.iter().all(|&(_, idx)| idx > i - pi_m));
                }
            }
            let n = t.len() as u64;
            let c = matcher.counters();
            prop_assert_eq!(c.pushes, n);
            prop_assert!(c.pops() <= n);
            prop_assert!(c.failure_links <= n);
            prop_assert!(c.max_deque <= m);
        }
    }
}
