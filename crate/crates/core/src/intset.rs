//! Finite sets of non-negative integers backed by a bit-vector.
//!
//! Every set-label, edge label and ground set in the toolkit is an [`IntSet`].
//! Sets are plain values: cloning is cheap for the small universes the
//! solver works in, and every operation is pure.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Default exclusive upper bound on set elements.
pub const DEFAULT_UNIVERSE: u32 = 4096;

const WORD_BITS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntSetError {
    #[error("sumset element {max_sum} does not fit below universe bound {bound}")]
    UniverseOverflow { max_sum: u64, bound: u32 },
    #[error("element {value} does not fit below universe bound {bound}")]
    ElementOutOfUniverse { value: u32, bound: u32 },
    #[error("sumset operand is empty")]
    EmptyOperand,
    #[error("duplicate element {0}")]
    DuplicateElement(u32),
    #[error("invalid subset size range {min}..={max} for a ground set of {len} elements")]
    InvalidSizeRange { min: usize, max: usize, len: usize },
}

/// Exclusive upper bound on the integers a computation may produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Universe(u32);

impl Universe {
    pub const fn new(bound: u32) -> Self {
        Universe(bound)
    }

    pub const fn bound(self) -> u32 {
        self.0
    }

    pub fn check(self, set: &IntSet) -> Result<(), IntSetError> {
        match set.last() {
            Some(v) if v >= self.0 => Err(IntSetError::ElementOutOfUniverse {
                value: v,
                bound: self.0,
            }),
            _ => Ok(()),
        }
    }
}

impl Default for Universe {
    fn default() -> Self {
        Universe(DEFAULT_UNIVERSE)
    }
}

/// A finite set of non-negative integers.
///
/// Stored as little-endian 64-bit words with no trailing zero words, so
/// structural equality is set equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct IntSet {
    words: Vec<u64>,
}

impl IntSet {
    pub fn new() -> Self {
        IntSet { words: Vec::new() }
    }

    pub fn singleton(value: u32) -> Self {
        let mut s = IntSet::new();
        s.insert(value);
        s
    }

    /// The segment `{lo, lo+1, ..., hi}`; empty when `lo > hi`.
    pub fn range_inclusive(lo: u32, hi: u32) -> Self {
        (lo..=hi).collect()
    }

    /// Builds a set from `values`, rejecting duplicates and anything at or
    /// above the universe bound.
    pub fn try_from_values<I>(values: I, universe: Universe) -> Result<Self, IntSetError>
    where
        I: IntoIterator<Item = u32>,
    {
        let mut s = IntSet::new();
        for v in values {
            if v >= universe.bound() {
                return Err(IntSetError::ElementOutOfUniverse {
                    value: v,
                    bound: universe.bound(),
                });
            }
            if !s.insert(v) {
                return Err(IntSetError::DuplicateElement(v));
            }
        }
        Ok(s)
    }

    /// Inserts `value`, returning `false` if it was already present.
    pub fn insert(&mut self, value: u32) -> bool {
        let (w, b) = (value as usize / WORD_BITS, value as usize % WORD_BITS);
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn contains(&self, value: u32) -> bool {
        let (w, b) = (value as usize / WORD_BITS, value as usize % WORD_BITS);
        self.words.get(w).is_some_and(|word| word & (1 << b) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_singleton(&self) -> bool {
        self.len() == 1
    }

    pub fn first(&self) -> Option<u32> {
        self.iter().next()
    }

    pub fn last(&self) -> Option<u32> {
        let last = self.words.last()?;
        let top = WORD_BITS - 1 - last.leading_zeros() as usize;
        Some(((self.words.len() - 1) * WORD_BITS + top) as u32)
    }

    /// Elements in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &IntSet) -> bool {
        self.words.len() <= other.words.len()
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &IntSet) -> IntSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn union_with(&mut self, other: &IntSet) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Every element increased by `k`.
    pub fn shifted_up(&self, k: u32) -> IntSet {
        if self.is_empty() {
            return IntSet::new();
        }
        let (word_shift, bit_shift) = (k as usize / WORD_BITS, k as usize % WORD_BITS);
        let mut words = vec![0u64; self.words.len() + word_shift + 1];
        for (i, &w) in self.words.iter().enumerate() {
            words[i + word_shift] |= w << bit_shift;
            if bit_shift != 0 {
                words[i + word_shift + 1] |= w >> (WORD_BITS - bit_shift);
            }
        }
        let mut out = IntSet { words };
        out.trim();
        out
    }

    /// The sumset `{a + b : a in self, b in other}` under the default universe.
    pub fn sumset(&self, other: &IntSet) -> Result<IntSet, IntSetError> {
        self.sumset_in(other, Universe::default())
    }

    /// The sumset, computed by OR-ing one shifted copy of the larger operand
    /// per element of the smaller one.
    pub fn sumset_in(&self, other: &IntSet, universe: Universe) -> Result<IntSet, IntSetError> {
        let (Some(a_max), Some(b_max)) = (self.last(), other.last()) else {
            return Err(IntSetError::EmptyOperand);
        };
        let max_sum = a_max as u64 + b_max as u64;
        if max_sum >= universe.bound() as u64 {
            return Err(IntSetError::UniverseOverflow {
                max_sum,
                bound: universe.bound(),
            });
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = IntSet::new();
        for x in small.iter() {
            out.union_with(&large.shifted_up(x));
        }
        Ok(out)
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

impl FromIterator<u32> for IntSet {
    fn from_iter<T: IntoIterator<Item = u32>>(iter: T) -> Self {
        let mut s = IntSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<const N: usize> From<[u32; N]> for IntSet {
    fn from(values: [u32; N]) -> Self {
        values.into_iter().collect()
    }
}

impl<'a> IntoIterator for &'a IntSet {
    type Item = u32;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

/// Ascending iterator over the elements of an [`IntSet`].
pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some((self.index * WORD_BITS + bit) as u32);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

/// Sets order by their ascending element lists, lexicographically.
impl Ord for IntSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for IntSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.iter().join(","))
    }
}

impl Serialize for IntSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for IntSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let values = Vec::<u32>::deserialize(deserializer)?;
        IntSet::try_from_values(values, Universe::default()).map_err(serde::de::Error::custom)
    }
}

/// Every subset of `ground` with cardinality in `size_min..=size_max`, each
/// exactly once: smaller subsets first, then lexicographically by ascending
/// element lists.
pub fn subsets_of(
    ground: &IntSet,
    size_min: usize,
    size_max: usize,
) -> Result<impl Iterator<Item = IntSet>, IntSetError> {
    let elements = ground.to_vec();
    if size_min == 0 || size_min > size_max || size_max > elements.len() {
        return Err(IntSetError::InvalidSizeRange {
            min: size_min,
            max: size_max,
            len: elements.len(),
        });
    }
    Ok((size_min..=size_max).flat_map(move |k| {
        elements
            .clone()
            .into_iter()
            .combinations(k)
            .map(IntSet::from_iter)
    }))
}
