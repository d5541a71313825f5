//! Brute-force oracles and seeded instance generators.
//!
//! Nothing here touches the stack-based constructions used by the matchers:
//! trees are built straight from the recursive definition (minimum at the
//! root, leftmost on ties, recurse on both sides) and compared node by node.
//! Everything is quadratic or worse and meant for short inputs.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Environment variable that pins the seed of randomized tests and benches.
pub const SEED_ENV: &str = "CARTMATCH_SEED";

/// Shape of a Cartesian tree, with values erased.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    Empty,
    Node(Box<Shape>, Box<Shape>),
}

/// Cartesian tree shape of `s` from the recursive definition.
pub fn naive_tree(s: &[i64]) -> Shape {
    let Some(min) = s.iter().min() else {
        return Shape::Empty;
    };
    let root = s.iter().position(|v| v == min).unwrap();
    Shape::Node(
        Box::new(naive_tree(&s[..root])),
        Box::new(naive_tree(&s[root + 1..])),
    )
}

pub fn naive_match(a: &[i64], b: &[i64]) -> bool {
    a.len() == b.len() && naive_tree(a) == naive_tree(b)
}

/// Every 1-indexed window start whose tree equals the pattern's.
pub fn naive_search(text: &[i64], pattern: &[i64]) -> Vec<usize> {
    let m = pattern.len();
    if m == 0 || m > text.len() {
        return Vec::new();
    }
    let target = naive_tree(pattern);
    (0..=text.len() - m)
        .filter(|&i| naive_tree(&text[i..i + m]) == target)
        .map(|i| i + 1)
        .collect()
}

/// Failure function by trying every `k < q`, longest first.
pub fn naive_failure(pattern: &[i64]) -> Vec<usize> {
    (1..=pattern.len())
        .map(|q| {
            (1..q)
                .rev()
                .find(|&k| naive_match(&pattern[..k], &pattern[q - k..q]))
                .unwrap_or(0)
        })
        .collect()
}

/// Parent distances by scanning back from each position.
pub fn naive_pd(s: &[i64]) -> Vec<usize> {
    (0..s.len())
        .map(|i| {
            let mut best = None;
            for j in 0..i {
                if s[j] <= s[i] {
                    best = Some(j);
                }
            }
            best.map_or(0, |j| i - j)
        })
        .collect()
}

/// Reads [`SEED_ENV`], falling back to `default`.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
}

/// Deterministic source of random integer strings over `0..alphabet_size`.
#[derive(Debug, Clone)]
pub struct InstanceGenerator {
    rng: ChaCha8Rng,
    alphabet_size: u32,
    min_len: usize,
    max_len: usize,
}

impl InstanceGenerator {
    pub fn new(seed: u64, alphabet_size: u32, min_len: usize, max_len: usize) -> Self {
        assert!(alphabet_size >= 1, "alphabet must be nonempty");
        assert!(min_len <= max_len, "empty length range");
        InstanceGenerator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            alphabet_size,
            min_len,
            max_len,
        }
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    /// A string with a length drawn from the configured bounds.
    pub fn string(&mut self) -> Vec<i64> {
        let len = self.rng.gen_range(self.min_len..=self.max_len);
        self.string_of_len(len)
    }

    pub fn string_of_len(&mut self, len: usize) -> Vec<i64> {
        let sigma = self.alphabet_size as i64;
        (0..len).map(|_| self.rng.gen_range(0..sigma)).collect()
    }

    pub fn len_between(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    /// A uniformly chosen window of `text` of length `len`, so that patterns
    /// have at least one occurrence more often than chance would give.
    pub fn window_of(&mut self, text: &[i64], len: usize) -> Vec<i64> {
        assert!(len <= text.len());
        let start = self.rng.gen_range(0..=text.len() - len);
        text[start..start + len].to_vec()
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }
}
