//! Cartesian tree matching over integer sequences.
//!
//! Two sequences *match* when their Cartesian trees have the same shape, so
//! only the relative order of the values matters, and only as far as the tree
//! records it. This crate works almost entirely on the parent-distance
//! representation of a sequence ([`ParentDistance`]), an integer string that
//! is in bijection with the Cartesian tree and whose substrings can be
//! re-derived in constant time.
//!
//! The matchers:
//!
//! * [`single`]: one pattern, KMP-style failure function and a streaming
//!   search that keeps `O(m)` state.
//! * [`signature`]: the same search driven by the pop-count signature
//!   instead of parent distances.
//! * [`multi`]: many patterns at once through an Aho-Corasick automaton over
//!   parent-distance strings.
//! * [`suffixtree`]: a compacted trie over every suffix's parent-distance
//!   string, for repeated queries against one text.
//!
//! [`testkit`] holds the brute-force oracles the test suites compare against.
//!
//! All positions in the public API are 1-indexed.
//!
//! ```
//! use cartmatch::single;
//!
//! let text = [41, 36, 15, 8, 41, 23, 28, 16, 26, 22, 56, 29, 12, 61];
//! let pattern = [6, 2, 5, 1, 4, 3, 7];
//! assert_eq!(single::search(text, &pattern).unwrap(), vec![5]);
//! ```

mod error;
pub mod multi;
mod pd;
pub mod signature;
pub mod single;
pub mod suffixtree;
pub mod testkit;
mod tree;

pub use crate::error::{Error, Result};
pub use crate::pd::{ct_equal, parent_distance, parent_distance_counted, ParentDistance, StackCounters};
pub use crate::tree::CartesianTree;
