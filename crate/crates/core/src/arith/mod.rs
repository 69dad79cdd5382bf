//! Prime and divisor arithmetic.

pub mod closure;
pub mod crt;
pub mod primality;
pub mod sieve;

pub use closure::{
    down_closure, extract_strong_antichain_from, is_strong_antichain, up_closure, Search,
};
pub use crt::{crt_solve, nth_power_completion};
pub use primality::{factor_pairs, is_prime_u64};
pub use sieve::{Factorization, Sieve, MAX_SIEVE_LIMIT};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `lcm(a, b)`, or `None` on overflow.
pub fn lcm(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd(a, b)).checked_mul(b)
}

/// Largest `r` with `r * r <= n`.
pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.saturating_mul(r) > n {
        r -= 1;
    }
    while (r + 1).saturating_mul(r + 1) <= n {
        r += 1;
    }
    r
}

/// Integer `k`-th root when `n` is a perfect `k`-th power.
pub fn exact_root(n: u64, k: u32) -> Option<u64> {
    let mut r = (n as f64).powf(1.0 / k as f64).round() as u64;
    r = r.saturating_sub(1);
    for c in r..r + 3 {
        match c.checked_pow(k) {
            Some(v) if v == n => return Some(c),
            Some(v) if v > n => return None,
            None => return None,
            _ => {}
        }
    }
    None
}
