//! Growth sequences and prime subsequences.

use serde::{Deserialize, Serialize};

use crate::arith::Sieve;
use crate::error::{Error, Result};

fn overflow(what: &str) -> Error {
    Error::Overflow(format!("{what} exceeds 64 bits"))
}

/// `a_1 = 1`, `a_n` = least multiple of `n` exceeding the sum of the earlier terms.
pub fn gen_exgamma(count: usize) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(count);
    let mut sum: u64 = 0;
    for n in 1..=count as u64 {
        let a = if n == 1 {
            1
        } else {
            (sum / n).checked_add(1).and_then(|q| q.checked_mul(n)).ok_or_else(|| overflow("exgamma term"))?
        };
        sum = sum.checked_add(a).ok_or_else(|| overflow("exgamma sum"))?;
        out.push(a);
    }
    Ok(out)
}

/// `a_1 = 1`, `a_n = n + (sum of earlier terms) + 1`.
pub fn gen_fastgrowth(count: usize) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(count);
    let mut sum: u64 = 0;
    for n in 1..=count as u64 {
        let a = if n == 1 {
            1
        } else {
            sum.checked_add(n + 1).ok_or_else(|| overflow("fastgrowth term"))?
        };
        sum = sum.checked_add(a).ok_or_else(|| overflow("fastgrowth sum"))?;
        out.push(a);
    }
    Ok(out)
}

/// Which primes to take, with `p_1 = 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeIndexRule {
    /// Indices 1, 3, 5, ...
    Odd,
    /// Indices 2, 4, 6, ...
    Even,
    All,
    /// Explicit 1-based indices.
    Indices(Vec<usize>),
}

impl PrimeIndexRule {
    pub fn selects(&self, index: usize) -> bool {
        match self {
            PrimeIndexRule::Odd => index % 2 == 1,
            PrimeIndexRule::Even => index.is_multiple_of(2),
            PrimeIndexRule::All => true,
            PrimeIndexRule::Indices(v) => v.contains(&index),
        }
    }

    /// The complementary rule (primes not selected), for parity rules.
    pub fn complement(&self) -> Option<PrimeIndexRule> {
        match self {
            PrimeIndexRule::Odd => Some(PrimeIndexRule::Even),
            PrimeIndexRule::Even => Some(PrimeIndexRule::Odd),
            _ => None,
        }
    }
}

/// Primes `p_1 = 2, p_2 = 3, ...` with indices, in order.
pub fn indexed_primes(sieve: &Sieve) -> impl Iterator<Item = (usize, u64)> + '_ {
    (2u64..).filter(move |&n| sieve.is_prime(n)).enumerate().map(|(i, p)| (i + 1, p))
}

/// The first `count` primes selected by `rule` (all listed indices for
/// an explicit rule), plus the next selected prime when the rule is infinite.
pub fn select_primes(sieve: &Sieve, rule: &PrimeIndexRule, count: usize) -> (Vec<u64>, Option<u64>) {
    if let PrimeIndexRule::Indices(idx) = rule {
        let mut sorted = idx.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let max = sorted.last().copied().unwrap_or(0);
        let primes: Vec<u64> = indexed_primes(sieve)
            .take_while(|&(i, _)| i <= max)
            .filter(|&(i, _)| rule.selects(i))
            .map(|(_, p)| p)
            .collect();
        return (primes, None);
    }
    let mut it = indexed_primes(sieve).filter(|&(i, _)| rule.selects(i)).map(|(_, p)| p);
    let primes: Vec<u64> = it.by_ref().take(count).collect();
    (primes, it.next())
}

/// The `i`-th prime, `p_1 = 2`.
pub fn nth_prime(sieve: &Sieve, i: usize) -> u64 {
    sieve.nth_prime(i)
}
