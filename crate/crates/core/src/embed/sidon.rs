//! Greedy sequences with pairwise distinct differences.

use std::collections::HashSet;

/// The greedy sequence starting at 1 in which every new term is the least
/// integer above the previous one keeping all pairwise differences distinct.
pub fn sidon_sequence(len: usize) -> Vec<u64> {
    let mut terms: Vec<u64> = Vec::with_capacity(len);
    let mut diffs: HashSet<u64> = HashSet::new();
    let mut x = 0u64;
    while terms.len() < len {
        x += 1;
        let fresh: Vec<u64> = terms.iter().map(|&t| x - t).collect();
        let distinct = fresh.iter().all(|d| !diffs.contains(d));
        if distinct {
            diffs.extend(fresh);
            terms.push(x);
        }
    }
    terms
}

/// True when all differences `s[i] - s[j]` with `j < i` are distinct.
pub fn has_distinct_differences(s: &[u64]) -> bool {
    let mut seen = HashSet::new();
    for i in 0..s.len() {
        for j in 0..i {
            if s[i] <= s[j] || !seen.insert(s[i] - s[j]) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn greedy_prefix() {
        assert_eq!(sidon_sequence(2), vec![1, 2]);
        assert_eq!(sidon_sequence(6), vec![1, 2, 4, 8, 13, 21]);
        assert!(has_distinct_differences(&sidon_sequence(30)));
        assert!(!has_distinct_differences(&[1, 2, 3]));
    }
}
