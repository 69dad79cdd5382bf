//! Smallest-prime-factor sieve with an exact fallback above its limit.

use super::primality::{factor_pairs, is_prime_u64};
use crate::error::{Error, Result};

/// Largest sieve limit accepted by [`Sieve::new`].
pub const MAX_SIEVE_LIMIT: u64 = 50_000_000;

/// A prime factorization stored as sorted `(prime, exponent)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Factorization {
    pub pairs: Vec<(u64, u32)>,
}

impl Factorization {
    /// Total number of prime factors counted with multiplicity.
    pub fn omega(&self) -> u32 {
        self.pairs.iter().map(|&(_, e)| e).sum()
    }

    pub fn distinct(&self) -> usize {
        self.pairs.len()
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.pairs
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// Recomputes the integer; `None` on overflow.
    pub fn value(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for &(p, e) in &self.pairs {
            acc = acc.checked_mul(p.checked_pow(e)?)?;
        }
        Some(acc)
    }
}

/// Smallest-prime-factor table for `2..=limit`.
///
/// Queries above the limit are answered exactly by trial division and
/// Pollard-rho, so every method is total on `n >= 1`.
#[derive(Clone)]
pub struct Sieve {
    limit: u64,
    spf: Vec<u32>,
}

impl std::fmt::Debug for Sieve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Sieve").field("limit", &self.limit).finish()
    }
}

impl Sieve {
    pub fn new(limit: u64) -> Result<Self> {
        if limit > MAX_SIEVE_LIMIT {
            return Err(Error::resource("sieve limit", MAX_SIEVE_LIMIT));
        }
        let n = limit.max(1) as usize;
        let mut spf = vec![0u32; n + 1];
        let mut i = 2usize;
        while i <= n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                if i * i <= n {
                    let mut j = i * i;
                    while j <= n {
                        if spf[j] == 0 {
                            spf[j] = i as u32;
                        }
                        j += i;
                    }
                }
            }
            i += 1;
        }
        Ok(Sieve { limit, spf })
    }

    /// Rebuilds a sieve from a previously serialized table.
    ///
    /// Runs linear-time structural checks: `spf[n]` divides `n`, is a fixed
    /// point of the table, and does not exceed the entry of `n / spf[n]`.
    /// These catch truncation and most corruption; callers that persist
    /// tables should add their own digest for full integrity.
    pub fn from_table(limit: u64, spf: Vec<u32>) -> Result<Self> {
        if limit > MAX_SIEVE_LIMIT {
            return Err(Error::resource("sieve limit", MAX_SIEVE_LIMIT));
        }
        if spf.len() as u64 != limit.max(1) + 1 {
            return Err(Error::Input("sieve table has the wrong length".into()));
        }
        let bad = || Error::Input("sieve table contents are invalid".into());
        if spf[0] != 0 || spf[1] != 0 {
            return Err(bad());
        }
        for n in 2..spf.len() {
            let p = spf[n] as usize;
            if p < 2 || p > n || n % p != 0 || spf[p] as usize != p {
                return Err(bad());
            }
            let rest = n / p;
            if rest >= 2 && (spf[rest] as usize) < p {
                return Err(bad());
            }
        }
        Ok(Sieve { limit, spf })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn table(&self) -> &[u32] {
        &self.spf
    }

    /// Smallest prime factor of `n >= 2`.
    pub fn spf(&self, n: u64) -> u64 {
        assert!(n >= 2, "spf is defined for n >= 2");
        if n <= self.limit {
            self.spf[n as usize] as u64
        } else {
            factor_pairs(n)[0].0
        }
    }

    pub fn is_prime(&self, n: u64) -> bool {
        if n < 2 {
            return false;
        }
        if n <= self.limit {
            self.spf[n as usize] as u64 == n
        } else {
            is_prime_u64(n)
        }
    }

    pub fn factorize(&self, n: u64) -> Factorization {
        assert!(n >= 1, "factorization is defined for n >= 1");
        if n > self.limit {
            return Factorization { pairs: factor_pairs(n) };
        }
        let mut m = n;
        let mut pairs: Vec<(u64, u32)> = Vec::new();
        while m > 1 {
            let p = self.spf[m as usize] as u64;
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            pairs.push((p, e));
        }
        Factorization { pairs }
    }

    /// Number of prime factors with multiplicity; `omega(1) == 0`.
    pub fn omega(&self, n: u64) -> u32 {
        assert!(n >= 1, "omega is defined for n >= 1");
        if n > self.limit {
            return self.factorize(n).omega();
        }
        let mut m = n;
        let mut count = 0;
        while m > 1 {
            m /= self.spf[m as usize] as u64;
            count += 1;
        }
        count
    }

    /// Primes in `[lo, hi]`, ascending.
    pub fn primes_in(&self, lo: u64, hi: u64) -> Vec<u64> {
        (lo.max(2)..=hi).filter(|&n| self.is_prime(n)).collect()
    }

    /// The `i`-th prime with `nth_prime(1) == 2`.
    pub fn nth_prime(&self, i: usize) -> u64 {
        assert!(i >= 1, "prime indices start at 1");
        let mut count = 0;
        let mut n = 1u64;
        loop {
            n += 1;
            if self.is_prime(n) {
                count += 1;
                if count == i {
                    return n;
                }
            }
        }
    }
}
