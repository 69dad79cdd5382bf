//! Exact primality and factorization for the whole `u64` range.
//!
//! Small factors are removed by trial division against a fixed table of
//! primes below 2^16. What remains is either 1, a prime, or a product of
//! primes above 2^16; the latter is split with Brent's variant of Pollard's
//! rho. Primality uses Miller-Rabin with a base set that is proven
//! deterministic for every 64-bit input, so no answer here is probabilistic.

use std::sync::OnceLock;

const TRIAL_LIMIT: u64 = 1 << 16;

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        let mut primes = Vec::new();
        for i in 2..=n {
            if !composite[i] {
                primes.push(i as u64);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

// Bases from Jim Sinclair's set; correct for all n < 2^64.
const MR_BASES: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &small_primes()[..12] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    if n < 41 * 41 {
        return true;
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'bases: for &b in &MR_BASES {
        let a = b % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Finds a nontrivial divisor of an odd composite `n`.
fn brent_split(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut y = 2u64;
        let mut r = 1u64;
        let mut q = 1u64;
        let mut g = 1u64;
        let mut x = y;
        let mut ys = y;
        const BLOCK: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BLOCK.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BLOCK;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = brent_split(n);
    split_large(d, out);
    split_large(n / d, out);
}

/// Prime factorization as sorted `(prime, exponent)` pairs.
pub fn factor_pairs(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorization is defined for n >= 1");
    let mut pairs: Vec<(u64, u32)> = Vec::new();
    for &p in small_primes() {
        if p * p > n {
            break;
        }
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            pairs.push((p, e));
        }
    }
    if n == 1 {
        return pairs;
    }
    // Every remaining prime factor exceeds the trial bound.
    if n < TRIAL_LIMIT * TRIAL_LIMIT {
        pairs.push((n, 1));
        return pairs;
    }
    let mut big = Vec::new();
    split_large(n, &mut big);
    big.sort_unstable();
    for p in big {
        match pairs.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => pairs.push((p, 1)),
        }
    }
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_is_prime(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn miller_rabin_matches_trial_division_below_100k() {
        for n in 0..100_000u64 {
            assert_eq!(is_prime_u64(n), trial_is_prime(n), "n = {n}");
        }
    }

    #[test]
    fn large_primes_and_semiprimes() {
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(18_446_744_073_709_551_615));
        // Strong pseudoprime to several small bases.
        assert!(!is_prime_u64(3_825_123_056_546_413_051));
        let p = 4_294_967_291u64;
        let q = 4_294_967_279u64;
        assert_eq!(factor_pairs(p * q), vec![(q, 1), (p, 1)]);
    }

    #[test]
    fn powers_and_mixed() {
        assert_eq!(factor_pairs(1), vec![]);
        assert_eq!(factor_pairs((1u64 << 40) * 3), vec![(2, 40), (3, 1)]);
        let n = 999_983u64 * 999_983 * 7;
        assert_eq!(factor_pairs(n), vec![(7, 1), (999_983, 2)]);
    }
}
