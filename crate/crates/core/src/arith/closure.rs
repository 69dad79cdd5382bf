//! Divisibility closures and strong antichains.

use super::gcd;
use crate::error::{Error, Result};
use crate::finite_set::FiniteSet;

/// Elements of `[1, h]` that are multiples of some member of `s`.
pub fn up_closure(s: &FiniteSet, h: u64) -> FiniteSet {
    let mut mark = vec![false; h as usize + 1];
    for a in s.iter().filter(|&a| a <= h) {
        if mark[a as usize] {
            // Multiples of a are already covered by a divisor of a.
            continue;
        }
        let mut m = a;
        while m <= h {
            mark[m as usize] = true;
            m += a;
        }
    }
    FiniteSet::from_sorted((1..=h).filter(|&n| mark[n as usize]).collect())
}

/// Divisors of members of `s` that lie in `[1, h]`.
pub fn down_closure(s: &FiniteSet, h: u64) -> FiniteSet {
    let mut out = Vec::new();
    for a in s.iter() {
        let mut d = 1u64;
        while d.saturating_mul(d) <= a {
            if a % d == 0 {
                for x in [d, a / d] {
                    if x <= h {
                        out.push(x);
                    }
                }
            }
            d += 1;
        }
    }
    out.sort_unstable();
    out.dedup();
    FiniteSet::from_sorted(out)
}

/// True iff the members are pairwise coprime. Rejects the element 1.
pub fn is_strong_antichain(s: &FiniteSet) -> Result<bool> {
    if s.contains(1) {
        return Err(Error::Input(
            "1 cannot belong to a strong antichain".into(),
        ));
    }
    let v = s.as_slice();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if gcd(v[i], v[j]) != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of a bounded backtracking search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    /// The whole space was searched.
    Absent,
    /// The step budget ran out first.
    Exhausted,
}

/// Lexicographically least pairwise-coprime `s`-subset of `candidates`
/// (taken in their given order), skipping the element 1.
pub fn extract_strong_antichain_from(
    candidates: &[u64],
    s: usize,
    budget: u64,
) -> Search<FiniteSet> {
    let cands: Vec<u64> = candidates.iter().copied().filter(|&c| c >= 2).collect();
    if s == 0 {
        return Search::Found(FiniteSet::empty());
    }
    let mut chosen: Vec<u64> = Vec::with_capacity(s);
    let mut steps = 0u64;
    fn rec(
        cands: &[u64],
        start: usize,
        s: usize,
        chosen: &mut Vec<u64>,
        steps: &mut u64,
        budget: u64,
    ) -> Option<bool> {
        if chosen.len() == s {
            return Some(true);
        }
        for i in start..cands.len() {
            if cands.len() - i < s - chosen.len() {
                break;
            }
            *steps += 1;
            if *steps > budget {
                return None;
            }
            let c = cands[i];
            if chosen.iter().all(|&x| gcd(x, c) == 1) {
                chosen.push(c);
                match rec(cands, i + 1, s, chosen, steps, budget) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {
                        chosen.pop();
                    }
                }
            }
        }
        Some(false)
    }
    match rec(&cands, 0, s, &mut chosen, &mut steps, budget) {
        Some(true) => Search::Found(FiniteSet::new(chosen).expect("nonzero")),
        Some(false) => Search::Absent,
        None => Search::Exhausted,
    }
}
