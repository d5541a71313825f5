//! Cartesian tree signatures.
//!
//! The signature `L` of a sequence records, for every position, how many
//! entries the parent-distance stack pops when that position arrives. It
//! determines the Cartesian tree and packs into fewer than `2n` bits. The
//! companion array `D` remembers, for every popped position, how far ahead
//! its popper sits; with it the first character can be removed in constant
//! time, which is all a KMP-style matcher needs.

use std::collections::VecDeque;
use std::fmt;

use bitvec::prelude::*;

use crate::error::{Error, Result};

/// Pop counts `L` plus popper distances `D` of a sequence.
#[derive(Debug, Clone, Default)]
pub struct CartesianSignature {
    pops: VecDeque<usize>,
    dist: VecDeque<usize>,
    work: u64,
}

impl PartialEq for CartesianSignature {
    fn eq(&self, other: &Self) -> bool {
        self.pops == other.pops && self.dist == other.dist
    }
}

impl Eq for CartesianSignature {}

impl CartesianSignature {
    pub fn of(s: &[i64]) -> Self {
        let mut window = SignatureWindow::new();
        for &c in s {
            window.push(c);
        }
        window.sig
    }

    pub fn len(&self) -> usize {
        self.pops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pops.is_empty()
    }

    pub fn pops(&self) -> Vec<usize> {
        self.pops.iter().copied().collect()
    }

    pub fn distances(&self) -> Vec<usize> {
        self.dist.iter().copied().collect()
    }

    /// Removes the first character, leaving the signature of `S[2..n]`.
    pub fn delete_front(&mut self) -> Result<()> {
        let d = self.dist.pop_front().ok_or(Error::EmptySignature)?;
        if d > 0 {
            self.pops[d] -= 1;
            self.work += 1;
        }
        self.pops.pop_front();
        self.work += 2;
        Ok(())
    }

    /// Primitive deque operations performed so far by [`delete_front`].
    ///
    /// [`delete_front`]: CartesianSignature::delete_front
    pub fn work(&self) -> u64 {
        self.work
    }

    pub fn bits(&self) -> SignatureBits {
        encode_bits(self.pops.iter().copied())
    }
}

pub fn signature(s: &[i64]) -> CartesianSignature {
    CartesianSignature::of(s)
}

/// `1^L[1] 0 1^L[2] 0 ... 1^L[n] 0`, packed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureBits(BitVec<u64, Lsb0>);

pub fn encode_bits<I>(pops: I) -> SignatureBits
where
    I: IntoIterator<Item = usize>,
{
    let mut bits = BitVec::new();
    for l in pops {
        for _ in 0..l {
            bits.push(true);
        }
        bits.push(false);
    }
    SignatureBits(bits)
}

impl SignatureBits {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Pop counts back from the bits: the length of each run of ones.
    pub fn decode(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut run = 0;
        for bit in self.0.iter().by_vals() {
            if bit {
                run += 1;
            } else {
                out.push(run);
                run = 0;
            }
        }
        out
    }
}

impl fmt::Display for SignatureBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bit in self.0.iter().by_vals() {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Signature of a sliding window: characters enter at the back and leave at
/// the front. Keeps the parent-distance stack of the window alongside.
#[derive(Debug, Clone, Default)]
pub struct SignatureWindow {
    sig: CartesianSignature,
    stack: VecDeque<(i64, usize)>,
    start: usize,
    end: usize,
}

impl SignatureWindow {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends `c` and returns its pop count.
    pub fn push(&mut self, c: i64) -> usize {
        let i = self.end;
        let mut popped = 0;
        while let Some(&(value, index)) = self.stack.back() {
            if value <= c {
                break;
            }
            self.stack.pop_back();
            self.sig.dist[index - self.start] = i - index;
            popped += 1;
        }
        self.sig.pops.push_back(popped);
        self.sig.dist.push_back(0);
        self.stack.push_back((c, i));
        self.end += 1;
        popped
    }

    pub fn delete_front(&mut self) -> Result<()> {
        self.sig.delete_front()?;
        if let Some(&(_, index)) = self.stack.front() {
            if index == self.start {
                self.stack.pop_front();
            }
        }
        self.start += 1;
        Ok(())
    }

    /// Pop count of the last character, relative to the current window.
    pub fn last_pops(&self) -> Option<usize> {
        self.sig.pops.back().copied()
    }

    pub fn len(&self) -> usize {
        self.sig.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sig.is_empty()
    }

    pub fn signature(&self) -> &CartesianSignature {
        &self.sig
    }

    fn shrink_to(&mut self, len: usize) {
        while self.len() > len {
            // cannot fail: the window is nonempty
            let _ = self.delete_front();
        }
    }
}

/// Pattern preprocessed for [`SignatureMatcher`]: its pop counts and its
/// failure function, both derived from signatures only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignaturePattern {
    pops: Vec<usize>,
    pi: Vec<usize>,
}

impl SignaturePattern {
    pub fn new(pattern: &[i64]) -> Result<Self> {
        let (&first, rest) = pattern.split_first().ok_or(Error::EmptyPattern)?;
        let pops = CartesianSignature::of(pattern).pops();
        let mut pi = vec![0; pattern.len()];
        let mut window = SignatureWindow::new();
        window.push(first);
        window.delete_front()?;
        let mut len = 0;
        for (i, &c) in rest.iter().enumerate() {
            len = extend(&mut window, len, c, &pops, &pi);
            pi[i + 1] = len;
        }
        Ok(SignaturePattern { pops, pi })
    }

    pub fn pi(&self) -> &[usize] {
        &self.pi
    }

    pub fn len(&self) -> usize {
        self.pops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pops.is_empty()
    }
}

/// One KMP step over signatures: `window` holds the `len` characters matched
/// so far; returns the matched length after `c`.
fn extend(window: &mut SignatureWindow, mut len: usize, c: i64, pops: &[usize], pi: &[usize]) -> usize {
    window.push(c);
    while len != 0 {
        if window.last_pops() == Some(pops[len]) {
            break;
        }
        len = pi[len - 1];
        window.shrink_to(len + 1);
    }
    if len == 0 {
        window.shrink_to(1);
    }
    len + 1
}

/// Streaming matcher driven by the window signature instead of a
/// parent-distance deque.
#[derive(Debug, Clone)]
pub struct SignatureMatcher<'a> {
    pattern: &'a SignaturePattern,
    window: SignatureWindow,
    len: usize,
    pos: usize,
}

impl<'a> SignatureMatcher<'a> {
    pub fn new(pattern: &'a SignaturePattern) -> Self {
        SignatureMatcher {
            pattern,
            window: SignatureWindow::new(),
            len: 0,
            pos: 0,
        }
    }

    pub fn advance(&mut self, c: i64) -> Option<usize> {
        self.pos += 1;
        let m = self.pattern.len();
        self.len = extend(&mut self.window, self.len, c, &self.pattern.pops, &self.pattern.pi);
        if self.len == m {
            self.len = self.pattern.pi[m - 1];
            self.window.shrink_to(self.len);
            Some(self.pos + 1 - m)
        } else {
            None
        }
    }

    pub fn window(&self) -> &SignatureWindow {
        &self.window
    }
}

pub fn signature_search<I>(text: I, pattern: &[i64]) -> Result<Vec<usize>>
where
    I: IntoIterator<Item = i64>,
{
    let pattern = SignaturePattern::new(pattern)?;
    let mut matcher = SignatureMatcher::new(&pattern);
    Ok(text.into_iter().filter_map(|c| matcher.advance(c)).collect())
}
