//! Permutations in one-line notation, lexicographic enumeration of the
//! symmetric group, and the descent-top / ascent-top / excedance statistics.

use std::fmt;
use std::io::{self, BufRead, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{check_cap, Error, Result};
use crate::varset::{VarSet, MAX_INDEX};

/// Largest `m` for which `S_m` may be enumerated.
pub const MAX_ENUMERATION: usize = 12;

/// Largest `m` for which member lists (rather than counts) are returned.
pub const MAX_MATERIALIZED: usize = 10;

/// A permutation of `[m]`; `σ(i)` is the `i`-th entry (1-based) of the one-line form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

/// The three set-valued statistics of a permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StatSets {
    pub descent_tops: VarSet,
    pub ascent_tops: VarSet,
    pub excedances: VarSet,
}

impl Perm {
    /// Validates a one-line sequence.
    pub fn from_oneline(values: Vec<usize>) -> Result<Self> {
        let m = values.len();
        check_cap("permutation length", m, 0, MAX_INDEX)?;
        let mut seen = VarSet::EMPTY;
        for &v in &values {
            if v == 0 || v > m {
                return Err(Error::ValueOutOfRange { value: v, len: m });
            }
            if seen.contains(v) {
                return Err(Error::DuplicateValue(v));
            }
            seen.insert(v)?;
        }
        debug_assert_eq!(seen.len(), m);
        Ok(Perm(values))
    }

    pub(crate) fn from_oneline_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Perm::from_oneline(values.clone()).is_ok(), "{values:?}");
        Perm(values)
    }

    pub fn identity(m: usize) -> Self {
        Perm((1..=m).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn oneline(&self) -> &[usize] {
        &self.0
    }

    pub fn into_oneline(self) -> Vec<usize> {
        self.0
    }

    /// `σ(i)` for 1-based `i`.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// 1-based position of `value`.
    pub fn position(&self, value: usize) -> Option<usize> {
        self.0.iter().position(|&v| v == value).map(|p| p + 1)
    }

    /// `{σ_i : σ_i > σ_{i+1}}`.
    pub fn descent_top_set(&self) -> VarSet {
        let bits = self
            .0
            .windows(2)
            .filter(|w| w[0] > w[1])
            .fold(0u64, |acc, w| acc | 1 << w[0]);
        VarSet::from_bits(bits)
    }

    /// `{σ_{i+1} : σ_i < σ_{i+1}}`.
    pub fn ascent_top_set(&self) -> VarSet {
        let bits = self
            .0
            .windows(2)
            .filter(|w| w[0] < w[1])
            .fold(0u64, |acc, w| acc | 1 << w[1]);
        VarSet::from_bits(bits)
    }

    /// `{σ(i) : σ(i) > i}`.
    pub fn excedance_set(&self) -> VarSet {
        let bits = self
            .0
            .iter()
            .enumerate()
            .filter(|&(i, &v)| v > i + 1)
            .fold(0u64, |acc, (_, &v)| acc | 1 << v);
        VarSet::from_bits(bits)
    }

    pub fn stats(&self) -> StatSets {
        StatSets {
            descent_tops: self.descent_top_set(),
            ascent_tops: self.ascent_top_set(),
            excedances: self.excedance_set(),
        }
    }

    /// Lexicographic successor in place; false (and unchanged) at the last permutation.
    fn advance(values: &mut [usize]) -> bool {
        let Some(i) = values.windows(2).rposition(|w| w[0] < w[1]) else {
            return false;
        };
        let j = values
            .iter()
            .rposition(|&v| v > values[i])
            .expect("pivot has a successor");
        values.swap(i, j);
        values[i + 1..].reverse();
        true
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Space-separated one-line values, e.g. `3 1 2`.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad permutation entry {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Perm::from_oneline(values)
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.oneline())
    }
}

/// Writes one permutation per line.
pub fn write_perms<W: Write>(mut out: W, perms: &[Perm]) -> io::Result<()> {
    for p in perms {
        writeln!(out, "{p}")?;
    }
    Ok(())
}

/// Reads one permutation per line; blank lines are skipped.
pub fn read_perms<R: BufRead>(input: R) -> Result<Vec<Perm>> {
    let mut perms = Vec::new();
    for (k, line) in input.lines().enumerate() {
        let line = line.map_err(|e| Error::Parse(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let p = line
            .parse()
            .map_err(|e| Error::Parse(format!("line {}: {e}", k + 1)))?;
        perms.push(p);
    }
    Ok(perms)
}

fn check_order(m: usize) -> Result<()> {
    check_cap("symmetric group order m", m, 1, MAX_ENUMERATION)
}

/// Visits every permutation of `[m]` in lexicographic order.
pub fn for_each_perm<F: FnMut(&Perm)>(m: usize, mut visitor: F) -> Result<()> {
    check_order(m)?;
    for first in 1..=m {
        visit_partition(m, first, &mut visitor);
    }
    Ok(())
}

/// Visits, in lexicographic order, the `(m-1)!` permutations with `σ(1) = first`.
pub fn for_each_perm_starting_with<F: FnMut(&Perm)>(
    m: usize,
    first: usize,
    mut visitor: F,
) -> Result<()> {
    check_order(m)?;
    if first == 0 || first > m {
        return Err(Error::ValueOutOfRange {
            value: first,
            len: m,
        });
    }
    visit_partition(m, first, &mut visitor);
    Ok(())
}

fn visit_partition<F: FnMut(&Perm)>(m: usize, first: usize, visitor: &mut F) {
    let mut values = Vec::with_capacity(m);
    values.push(first);
    values.extend((1..=m).filter(|&v| v != first));
    let mut perm = Perm(values);
    loop {
        visitor(&perm);
        if !Perm::advance(&mut perm.0[1..]) {
            break;
        }
    }
}

/// Folds each first-entry partition of `S_m` independently and returns the
/// partial results ordered by first entry. Partitions run on the current
/// rayon pool; a single-threaded pool takes the plain sequential path.
pub fn fold_partitions<T, I, F>(m: usize, init: I, fold: F) -> Result<Vec<T>>
where
    T: Send,
    I: Fn() -> T + Sync,
    F: Fn(&mut T, &Perm) + Sync,
{
    check_order(m)?;
    let run = |first: usize| {
        let mut acc = init();
        visit_partition(m, first, &mut |p: &Perm| fold(&mut acc, p));
        acc
    };
    if rayon::current_num_threads() <= 1 {
        Ok((1..=m).map(run).collect())
    } else {
        Ok((1..=m).into_par_iter().map(run).collect())
    }
}

/// Counts of each value of a set statistic over `S_m`, indexed by
/// `set.bits() >> 2` (the statistic must live in `[2, m]`).
pub fn statistic_histogram(m: usize, stat: fn(&Perm) -> VarSet) -> Result<Vec<u64>> {
    check_order(m)?;
    let size = 1usize << (m - 1);
    let parts = fold_partitions(
        m,
        || vec![0u64; size],
        |hist, p| hist[(stat(p).bits() >> 2) as usize] += 1,
    )?;
    Ok(parts.into_iter().fold(vec![0u64; size], |mut acc, part| {
        for (a, b) in acc.iter_mut().zip(part) {
            *a += b;
        }
        acc
    }))
}

pub(crate) fn check_subset(s: VarSet, lo: usize, hi: usize) -> Result<()> {
    if !s.is_subset(VarSet::range(lo, hi)?) {
        return Err(Error::SetOutOfRange {
            set: s.to_string(),
            lo,
            hi,
        });
    }
    Ok(())
}

fn count_where<P: Fn(&Perm) -> bool + Sync>(m: usize, pred: P) -> Result<u64> {
    let parts = fold_partitions(m, || 0u64, |n, p| *n += u64::from(pred(p)))?;
    Ok(parts.into_iter().sum())
}

/// `R(n, S)`: members of `S_{n+1}` whose descent-top set is exactly `S`,
/// in lexicographic order. Only for `n + 1 <= MAX_MATERIALIZED`; use
/// [`count_r`] beyond that.
pub fn enumerate_r(n: usize, s: VarSet) -> Result<Vec<Perm>> {
    let m = n + 1;
    check_cap(
        "symmetric group order m (materialized)",
        m,
        1,
        MAX_MATERIALIZED,
    )?;
    check_subset(s, 2, m)?;
    let parts = fold_partitions(m, Vec::new, |acc, p| {
        if p.descent_top_set() == s {
            acc.push(p.clone());
        }
    })?;
    Ok(parts.into_iter().flatten().collect())
}

/// `|R(n, S)|` by enumeration.
pub fn count_r(n: usize, s: VarSet) -> Result<u64> {
    let m = n + 1;
    check_order(m)?;
    check_subset(s, 2, m)?;
    count_where(m, |p| p.descent_top_set() == s)
}

/// `|X(S_m)|`: members of `S_m` whose descent tops all lie in `X`.
pub fn enumerate_x(m: usize, x: VarSet) -> Result<u64> {
    check_order(m)?;
    check_subset(x, 2, m)?;
    count_where(m, |p| p.descent_top_set().is_subset(x))
}

/// `|r(n, X)|`: members of `S_{n+1}` whose excedance set is exactly `X`.
pub fn enumerate_r_exc(n: usize, x: VarSet) -> Result<u64> {
    let m = n + 1;
    check_order(m)?;
    check_subset(x, 2, m)?;
    count_where(m, |p| p.excedance_set() == x)
}

/// `A^{a→b}`: the members with `σ(a) = b`, order preserved.
pub fn conditioned(perms: &[Perm], a: usize, b: usize) -> Result<Vec<Perm>> {
    for p in perms {
        let m = p.len();
        if a == 0 || a > m {
            return Err(Error::ValueOutOfRange { value: a, len: m });
        }
        if b == 0 || b > m {
            return Err(Error::ValueOutOfRange { value: b, len: m });
        }
    }
    Ok(perms.iter().filter(|p| p.at(a) == b).cloned().collect())
}
