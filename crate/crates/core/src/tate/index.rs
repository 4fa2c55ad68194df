//! Multi-indices, the graded-lexicographic order and minimal elements.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

/// An exponent vector `(i₁, …, iₙ)`.
///
/// `Ord` is the graded-lexicographic order `⪯`: total degree first, then
/// the first differing entry. Indices of different lengths are never
/// compared by the algebra; [`graded_lex_cmp`] rejects them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> MultiIndex {
        MultiIndex(entries)
    }

    pub fn zero(n: usize) -> MultiIndex {
        MultiIndex(alloc::vec![0; n])
    }

    /// The `k`-th unit vector.
    pub fn unit(n: usize, k: usize) -> MultiIndex {
        let mut v = alloc::vec![0; n];
        v[k] = 1;
        MultiIndex(v)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&i| i == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Componentwise `self ≤ other`.
    pub fn divides(&self, other: &MultiIndex) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, defined when `other ≤ self`.
    pub fn sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if !other.divides(self) {
            return None;
        }
        Some(MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// Componentwise maximum.
    pub fn lcm(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.len().cmp(&other.0.len()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// `⪯` on indices of equal length.
pub fn graded_lex_cmp(a: &MultiIndex, b: &MultiIndex) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch);
    }
    Ok(a.cmp(b))
}

/// Elements of `set` that are minimal for the componentwise order, sorted
/// by `⪯`. Duplicates are collapsed.
pub fn minimal_indices(set: &[MultiIndex]) -> Vec<MultiIndex> {
    let mut sorted: Vec<&MultiIndex> = set.iter().collect();
    sorted.sort();
    sorted.dedup();
    let mut out: Vec<MultiIndex> = Vec::new();
    // an element can only be dominated by one of smaller total degree or
    // itself, so a single pass in ⪯ order suffices
    for i in sorted {
        if !out.iter().any(|m| m.divides(i)) {
            out.push(i.clone());
        }
    }
    out
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            match e {
                1 => write!(f, "T{}", k + 1)?,
                _ => write!(f, "T{}^{}", k + 1, e)?,
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}
