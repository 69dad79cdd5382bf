//! Sorted, duplicate-free finite sets of positive integers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FiniteSet(Vec<u64>);

impl FiniteSet {
    pub fn empty() -> Self {
        FiniteSet(Vec::new())
    }

    /// Builds a set from arbitrary values; sorts and removes duplicates.
    /// Rejects 0, which is never an element.
    pub fn new(mut values: Vec<u64>) -> Result<Self> {
        if values.contains(&0) {
            return Err(Error::Input("0 is not a natural number here".into()));
        }
        values.sort_unstable();
        values.dedup();
        Ok(FiniteSet(values))
    }

    /// Wraps a vector that is already strictly increasing and free of 0.
    pub fn from_sorted(values: Vec<u64>) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(values.first().is_none_or(|&v| v >= 1));
        FiniteSet(values)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.0.binary_search(&n).is_ok()
    }

    pub fn min(&self) -> Option<u64> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.0.last().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &FiniteSet) -> bool {
        self.iter().all(|x| other.contains(x))
    }

    pub fn union(&self, other: &FiniteSet) -> FiniteSet {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        v.dedup();
        FiniteSet(v)
    }

    pub fn difference(&self, other: &FiniteSet) -> FiniteSet {
        FiniteSet(self.iter().filter(|&x| !other.contains(x)).collect())
    }

    /// `k * self`, or `None` on overflow.
    pub fn dilate(&self, k: u64) -> Option<FiniteSet> {
        self.iter()
            .map(|x| x.checked_mul(k))
            .collect::<Option<Vec<_>>>()
            .map(FiniteSet)
    }
}

impl std::fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl<'a> IntoIterator for &'a FiniteSet {
    type Item = u64;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, u64>>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_input() {
        let s = FiniteSet::new(vec![5, 1, 5, 3]).unwrap();
        assert_eq!(s.as_slice(), &[1, 3, 5]);
        assert!(FiniteSet::new(vec![0, 1]).is_err());
        assert_eq!(s.to_string(), "{1,3,5}");
    }

    #[test]
    fn dilation_overflow() {
        let s = FiniteSet::new(vec![2, u64::MAX / 2 + 1]).unwrap();
        assert!(s.dilate(2).is_none());
        assert_eq!(
            FiniteSet::new(vec![2, 3]).unwrap().dilate(6).unwrap().as_slice(),
            &[12, 18]
        );
    }
}
