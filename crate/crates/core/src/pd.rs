use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Parent-distance representation of a sequence.
///
/// Entry `i` (1-indexed) is `i - j` for the largest `j < i` with
/// `S[j] <= S[i]`, or `0` if there is no such `j`. In other words it is the
/// distance back to the parent of `S[i]` in the Cartesian tree of `S[1..i]`.
/// Two sequences have the same Cartesian tree exactly when their
/// parent-distance strings are equal.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ParentDistance(Vec<usize>);

/// Stack traffic of one parent-distance computation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StackCounters {
    pub pushes: u64,
    pub pops: u64,
}

impl ParentDistance {
    /// Wraps a raw distance vector after checking that it encodes some
    /// Cartesian tree.
    pub fn new(dist: Vec<usize>) -> Result<Self> {
        validate(&dist)?;
        Ok(ParentDistance(dist))
    }

    pub fn of(s: &[i64]) -> Self {
        parent_distance(s)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// `PD(S[i..j])[k]` for any `j >= i + k - 1`, read off `PD(S)` in constant
    /// time. `i` and `k` are 1-indexed.
    pub fn substring_char(&self, i: usize, k: usize) -> Result<usize> {
        if i == 0 {
            return Err(Error::OutOfRange {
                position: i,
                len: self.0.len(),
            });
        }
        let last = i + k - 1;
        if k == 0 || last > self.0.len() {
            return Err(Error::OutOfRange {
                position: i.saturating_add(k).saturating_sub(1),
                len: self.0.len(),
            });
        }
        Ok(substring_char(&self.0, i - 1, k))
    }

    /// The whole parent-distance string of `S[i..j]` (1-indexed, inclusive).
    pub fn substring(&self, i: usize, j: usize) -> Result<ParentDistance> {
        if i == 0 || j > self.0.len() || i > j + 1 {
            return Err(Error::OutOfRange {
                position: if i == 0 { 0 } else { j },
                len: self.0.len(),
            });
        }
        let dist = (1..=j + 1 - i)
            .map(|k| substring_char(&self.0, i - 1, k))
            .collect();
        Ok(ParentDistance(dist))
    }
}

/// Character `k` (1-indexed) of the parent-distance string of the substring
/// beginning at 0-indexed `start`, read off the whole string's distances.
#[inline]
pub(crate) fn substring_char(dist: &[usize], start: usize, k: usize) -> usize {
    let d = dist[start + k - 1];
    if d >= k {
        0
    } else {
        d
    }
}

/// Checks the first-entry, range and non-crossing conditions by replaying the
/// rightmost spine of the tree being described.
pub(crate) fn validate(dist: &[usize]) -> Result<()> {
    let mut spine: Vec<usize> = Vec::new();
    for (i, &d) in dist.iter().enumerate() {
        if d > i {
            return Err(Error::MalformedParentDistance {
                position: i + 1,
                reason: "distance reaches before the start of the string",
            });
        }
        if d == 0 {
            spine.clear();
        } else {
            let parent = i - d;
            while let Some(&top) = spine.last() {
                if top == parent {
                    break;
                }
                spine.pop();
            }
            if spine.is_empty() {
                return Err(Error::MalformedParentDistance {
                    position: i + 1,
                    reason: "parent pointer crosses an earlier one",
                });
            }
        }
        spine.push(i);
    }
    Ok(())
}

impl Deref for ParentDistance {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for ParentDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", d)?;
        }
        Ok(())
    }
}

impl FromStr for ParentDistance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let dist = s
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| Error::ParseParentDistance {
                    token: tok.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        ParentDistance::new(dist)
    }
}

/// Computes the parent-distance representation with a stack of candidate
/// parents, which always holds a non-decreasing subsequence of `s`.
pub fn parent_distance(s: &[i64]) -> ParentDistance {
    parent_distance_counted(s).0
}

pub fn parent_distance_counted(s: &[i64]) -> (ParentDistance, StackCounters) {
    let mut counters = StackCounters::default();
    let mut stack: Vec<(i64, usize)> = Vec::with_capacity(s.len().min(1024));
    let mut dist = Vec::with_capacity(s.len());
    for (i, &c) in s.iter().enumerate() {
        while let Some(&(value, _)) = stack.last() {
            if value <= c {
                break;
            }
            stack.pop();
            counters.pops += 1;
        }
        dist.push(match stack.last() {
            Some(&(_, index)) => i - index,
            None => 0,
        });
        stack.push((c, i));
        counters.pushes += 1;
    }
    (ParentDistance(dist), counters)
}

/// Whether `a` and `b` have the same Cartesian tree.
pub fn ct_equal(a: &[i64], b: &[i64]) -> bool {
    a.len() == b.len() && parent_distance(a) == parent_distance(b)
}
