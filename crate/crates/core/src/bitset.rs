//! Fixed-universe node sets backed by `u64` words.
//!
//! Every set knows its universe size `0..n` and stores one bit per node, so
//! membership tests, unions, and "unique white neighbor" queries in the
//! forcing engine are single-word operations for the graph sizes this crate
//! targets.

use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};

const WORD_BITS: usize = 64;

/// A set of node ids drawn from a fixed universe `0..universe`.
///
/// Binary operations panic if the two sets have different universes; that is
/// always a programming error, never a data error.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NodeSet {
    universe: usize,
    words: Vec<u64>,
}

/// Result of [`NodeSet::diff_one`]: how many elements `self \ other` has,
/// up to the distinction that matters for forcing (zero, exactly one, more).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiffOne {
    /// `self \ other` is empty.
    None,
    /// `self \ other` contains exactly this element.
    One(usize),
    /// `self \ other` has two or more elements.
    Many,
}

impl NodeSet {
    /// The empty set over universe `0..universe`.
    pub fn new(universe: usize) -> Self {
        NodeSet {
            universe,
            words: vec![0; universe.div_ceil(WORD_BITS)],
        }
    }

    /// The full set `{0, 1, .., universe-1}`.
    pub fn full(universe: usize) -> Self {
        let mut set = NodeSet::new(universe);
        for word in &mut set.words {
            *word = u64::MAX;
        }
        set.mask_tail();
        set
    }

    /// Builds a set from the given ids.
    ///
    /// Panics if any id is outside the universe.
    pub fn from_ids(universe: usize, ids: impl IntoIterator<Item = usize>) -> Self {
        let mut set = NodeSet::new(universe);
        for id in ids {
            set.insert(id);
        }
        set
    }

    /// Number of valid ids; elements are always `< universe`.
    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Membership test. Panics if `id >= universe`.
    pub fn contains(&self, id: usize) -> bool {
        assert!(
            id < self.universe,
            "id {} outside universe {}",
            id,
            self.universe
        );
        self.words[id / WORD_BITS] & (1 << (id % WORD_BITS)) != 0
    }

    /// Adds `id`; returns whether it was newly inserted.
    /// Panics if `id >= universe`.
    pub fn insert(&mut self, id: usize) -> bool {
        assert!(
            id < self.universe,
            "id {} outside universe {}",
            id,
            self.universe
        );
        let word = &mut self.words[id / WORD_BITS];
        let bit = 1 << (id % WORD_BITS);
        let fresh = *word & bit == 0;
        *word |= bit;
        fresh
    }

    /// Removes `id`; returns whether it was present.
    /// Panics if `id >= universe`.
    pub fn remove(&mut self, id: usize) -> bool {
        assert!(
            id < self.universe,
            "id {} outside universe {}",
            id,
            self.universe
        );
        let word = &mut self.words[id / WORD_BITS];
        let bit = 1 << (id % WORD_BITS);
        let present = *word & bit != 0;
        *word &= !bit;
        present
    }

    /// Removes every element.
    pub fn clear(&mut self) {
        self.words.fill(0);
    }

    /// Smallest element, if any.
    pub fn first(&self) -> Option<usize> {
        for (i, &word) in self.words.iter().enumerate() {
            if word != 0 {
                return Some(i * WORD_BITS + word.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Ascending iterator over the elements.
    pub fn iter(&self) -> Ids<'_> {
        Ids {
            words: &self.words,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Elements in ascending order as a vector.
    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// In-place union: `self ∪= other`.
    pub fn union_with(&mut self, other: &NodeSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// In-place intersection: `self ∩= other`.
    pub fn intersect_with(&mut self, other: &NodeSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    /// In-place difference: `self \= other`.
    pub fn subtract(&mut self, other: &NodeSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    /// The complement within the universe.
    pub fn complement(&self) -> NodeSet {
        let mut out = self.clone();
        for word in &mut out.words {
            *word = !*word;
        }
        out.mask_tail();
        out
    }

    pub fn is_subset_of(&self, other: &NodeSet) -> bool {
        self.check_universe(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &NodeSet) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Classifies `self \ other` as empty, a single element, or larger.
    ///
    /// This is the forcing engine's core query: a black node may force when
    /// `neighbors \ black` is exactly one node.
    pub fn diff_one(&self, other: &NodeSet) -> DiffOne {
        self.check_universe(other);
        let mut found: Option<usize> = None;
        for (i, (a, b)) in self.words.iter().zip(&other.words).enumerate() {
            let mut diff = a & !b;
            if diff == 0 {
                continue;
            }
            if found.is_some() || diff & (diff - 1) != 0 {
                return DiffOne::Many;
            }
            let id = i * WORD_BITS + diff.trailing_zeros() as usize;
            diff &= diff - 1;
            debug_assert_eq!(diff, 0);
            found = Some(id);
        }
        match found {
            Some(id) => DiffOne::One(id),
            None => DiffOne::None,
        }
    }

    fn check_universe(&self, other: &NodeSet) {
        assert_eq!(
            self.universe, other.universe,
            "node sets have different universes"
        );
    }

    /// Zeroes the padding bits above `universe` in the last word.
    fn mask_tail(&mut self) {
        let rem = self.universe % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1 << rem) - 1;
            }
        }
    }
}

/// Ascending iterator over a [`NodeSet`].
pub struct Ids<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for Ids<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.word_idx * WORD_BITS + bit)
    }
}

impl<'a> IntoIterator for &'a NodeSet {
    type Item = usize;
    type IntoIter = Ids<'a>;

    fn into_iter(self) -> Ids<'a> {
        self.iter()
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, id) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", id)?;
        }
        write!(f, "}}")
    }
}

impl Serialize for NodeSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for id in self.iter() {
            seq.serialize_element(&id)?;
        }
        seq.end()
    }
}
