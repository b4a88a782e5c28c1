//! Finite sets of variable indices, stored as a bit mask.
//!
//! A [`VarSet`] is the exponent support of a multiaffine monomial and doubles
//! as the set type for permutation statistics (descent tops, excedances).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest representable index.
pub const MAX_INDEX: usize = 63;

/// A set of positive variable indices in `1..=63`.
///
/// Ordering is the canonical monomial order: by cardinality first, then
/// lexicographically on the ascending index lists.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VarSet(u64);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn new<I: IntoIterator<Item = usize>>(indices: I) -> Result<Self> {
        let mut set = VarSet::EMPTY;
        for i in indices {
            set.insert(i)?;
        }
        Ok(set)
    }

    /// The contiguous range `[lo, hi]`; empty when `lo > hi`.
    pub fn range(lo: usize, hi: usize) -> Result<Self> {
        if lo > hi {
            return Ok(VarSet::EMPTY);
        }
        check_index(lo)?;
        check_index(hi)?;
        let top = if hi == 63 {
            u64::MAX
        } else {
            (1u64 << (hi + 1)) - 1
        };
        Ok(VarSet(top & !((1u64 << lo) - 1)))
    }

    pub fn singleton(i: usize) -> Result<Self> {
        check_index(i)?;
        Ok(VarSet(1 << i))
    }

    /// Raw mask; bit `i` is set iff index `i` is a member. Bit 0 is always clear.
    pub fn bits(self) -> u64 {
        self.0
    }

    pub(crate) fn from_bits(bits: u64) -> Self {
        debug_assert_eq!(bits & 1, 0);
        VarSet(bits)
    }

    pub fn insert(&mut self, i: usize) -> Result<()> {
        check_index(i)?;
        self.0 |= 1 << i;
        Ok(())
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=MAX_INDEX).contains(&i) && self.0 & (1 << i) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VarSet) -> VarSet {
        VarSet(self.0 & other.0)
    }

    pub fn difference(self, other: VarSet) -> VarSet {
        VarSet(self.0 & !other.0)
    }

    /// `[lo, hi] \ self`.
    pub fn complement_in(self, lo: usize, hi: usize) -> Result<VarSet> {
        Ok(VarSet::range(lo, hi)?.difference(self))
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Applies `f` to every member.
    pub fn map<F: FnMut(usize) -> usize>(self, mut f: F) -> Result<VarSet> {
        VarSet::new(self.iter().map(&mut f))
    }

    /// All subsets, in increasing order of their bit pattern.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }
}

fn check_index(i: usize) -> Result<()> {
    if i == 0 || i > MAX_INDEX {
        return Err(Error::BadIndex(i));
    }
    Ok(())
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = VarSet;

    fn next(&mut self) -> Option<VarSet> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some((cur | !self.mask).wrapping_add(1) & self.mask)
        };
        Some(VarSet(cur))
    }
}

impl IntoIterator for VarSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl Ord for VarSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                // With equal cardinality, whoever owns the lowest differing
                // index has the lexicographically smaller list.
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for VarSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// Accepts `2,4`, `{2,4}`, `2 4`, and the empty forms `` / `{}`.
impl FromStr for VarSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim();
        let inner = inner
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .unwrap_or(inner);
        let mut set = VarSet::EMPTY;
        for tok in inner.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let i: usize = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad index {tok:?} in set {s:?}")))?;
            set.insert(i)?;
        }
        Ok(set)
    }
}

impl Serialize for VarSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VarSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let indices = Vec::<usize>::deserialize(deserializer)?;
        VarSet::new(indices).map_err(serde::de::Error::custom)
    }
}
