//! Congruence systems and n-th power completion.

use super::sieve::Sieve;
use crate::error::{Error, Result};

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Smallest positive `x` with `x ≡ r (mod m)` for every `(r, m)`.
///
/// Moduli need not be coprime. Returns `Ok(None)` when the system is
/// inconsistent and an overflow error when the combined modulus leaves
/// the `u64` range.
pub fn crt_solve(congruences: &[(u64, u64)]) -> Result<Option<u64>> {
    let mut x: u128 = 0;
    let mut m: u128 = 1;
    for &(r, mi) in congruences {
        if mi < 2 {
            return Err(Error::ParameterRange(format!(
                "congruence modulus must be at least 2, got {mi}"
            )));
        }
        let mi = mi as u128;
        let r = (r as u128) % mi;
        let (g, p, _) = ext_gcd(m as i128, mi as i128);
        let g = g as u128;
        let diff = (r as i128 - (x % mi) as i128).rem_euclid(mi as i128) as u128;
        if !diff.is_multiple_of(g) {
            return Ok(None);
        }
        let step = mi / g;
        let lcm = m
            .checked_mul(step)
            .filter(|&l| l <= u64::MAX as u128)
            .ok_or_else(|| Error::Overflow("combined CRT modulus exceeds 64 bits".into()))?;
        // t = (diff / g) * p mod step, then x += m * t.
        let p = (p.rem_euclid(step as i128)) as u128;
        let t = ((diff / g) % step) * p % step;
        x = (x + m * t) % lcm;
        m = lcm;
    }
    if congruences.is_empty() {
        return Ok(Some(1));
    }
    Ok(Some(if x == 0 { m as u64 } else { x as u64 }))
}

/// The unique `l` with every prime exponent in `[0, n-1]` such that `d * l`
/// is a perfect `n`-th power.
pub fn nth_power_completion(sieve: &Sieve, d: u64, n: u32) -> Result<u64> {
    if d == 0 || n < 2 {
        return Err(Error::ParameterRange(format!(
            "need d >= 1 and n >= 2, got d={d}, n={n}"
        )));
    }
    let mut l: u64 = 1;
    for (p, e) in sieve.factorize(d).pairs {
        let need = (n - e % n) % n;
        l = p
            .checked_pow(need)
            .and_then(|f| l.checked_mul(f))
            .ok_or_else(|| Error::Overflow(format!("completion of {d} to an {n}-th power")))?;
    }
    Ok(l)
}
