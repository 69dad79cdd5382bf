//! Finite families built from primes, blocks and chains.

use serde::{Deserialize, Serialize};

use super::sequences::nth_prime;
use crate::arith::Sieve;
use crate::error::{Error, Result};
use crate::finite_set::FiniteSet;
use crate::setlang::LazySet;

/// Consecutive blocks `F_n` of length `n` and the skipped multiples `a_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThickNonMaxStar {
    pub blocks: Vec<Vec<u64>>,
    pub avoided: Vec<u64>,
}

impl ThickNonMaxStar {
    pub fn members(&self) -> Vec<u64> {
        self.blocks.iter().flatten().copied().collect()
    }

    /// Everything up to here is decided: the next block starts above it.
    pub fn known_horizon(&self) -> u64 {
        self.avoided.last().copied().unwrap_or(1)
    }
}

/// `F_n = {a_{n-1}+1, ..., a_{n-1}+n}` and `a_n` the least multiple of `n`
/// above `max F_n`, starting from `a_0 = 1`.
pub fn gen_thick_nonmaxstar(n_max: usize) -> Result<ThickNonMaxStar> {
    let mut blocks = Vec::with_capacity(n_max);
    let mut avoided = Vec::with_capacity(n_max);
    let mut prev: u64 = 1;
    for n in 1..=n_max as u64 {
        let top = prev.checked_add(n).ok_or_else(|| Error::Overflow("block end".into()))?;
        blocks.push((prev + 1..=top).collect::<Vec<_>>());
        let a = (top / n + 1) * n;
        avoided.push(a);
        prev = a;
    }
    Ok(ThickNonMaxStar { blocks, avoided })
}

/// The pair of function tables `f(n) = p_{2n}^2 p_{2n+1}`, `g(n) = p_{2n} p_{2n+1}^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MjFuncs {
    pub f: Vec<u64>,
    pub g: Vec<u64>,
}

impl MjFuncs {
    pub fn as_family(&self) -> Vec<Vec<u64>> {
        vec![self.f.clone(), self.g.clone()]
    }
}

pub fn gen_mj_funcs(sieve: &Sieve, h_max: usize) -> Result<MjFuncs> {
    if h_max == 0 {
        return Err(Error::ParameterRange("h_max must be at least 1".into()));
    }
    let mut f = Vec::with_capacity(h_max);
    let mut g = Vec::with_capacity(h_max);
    for n in 1..=h_max {
        let p = nth_prime(sieve, 2 * n);
        let q = nth_prime(sieve, 2 * n + 1);
        let ov = || Error::Overflow(format!("function value at n={n}"));
        f.push(p.checked_mul(p).and_then(|x| x.checked_mul(q)).ok_or_else(ov)?);
        g.push(q.checked_mul(q).and_then(|x| x.checked_mul(p)).ok_or_else(ov)?);
    }
    Ok(MjFuncs { f, g })
}

/// One factor block: `n` distinct primes from `primes`, each to the power `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductBlock {
    pub primes: Vec<u64>,
    pub k: u32,
    pub n: usize,
}

fn choose_products(
    blocks: &[ProductBlock],
    bi: usize,
    start: usize,
    left: usize,
    used: &mut Vec<u64>,
    acc: u64,
    limit: u64,
    out: &mut Vec<u64>,
) {
    if bi == blocks.len() {
        out.push(acc);
        return;
    }
    let b = &blocks[bi];
    if left == 0 {
        let next_n = blocks.get(bi + 1).map_or(0, |nb| nb.n);
        choose_products(blocks, bi + 1, 0, next_n, used, acc, limit, out);
        return;
    }
    for i in start..b.primes.len() {
        let p = b.primes[i];
        if used.contains(&p) {
            continue;
        }
        let Some(next) = p.checked_pow(b.k).and_then(|pk| acc.checked_mul(pk)) else {
            continue;
        };
        if next > limit {
            continue;
        }
        used.push(p);
        choose_products(blocks, bi, i + 1, left - 1, used, next, limit, out);
        used.pop();
    }
}

/// Products over blocks of `n_i` distinct primes from `A_i`, each raised to
/// `k_i`, that are at most `limit`. Blocks over the same prime set draw
/// distinct primes; otherwise the prime sets must be disjoint.
pub fn gen_prophier(blocks: &[ProductBlock], sieve: &Sieve, limit: u64) -> Result<FiniteSet> {
    let mut normalized = blocks.to_vec();
    for b in &mut normalized {
        b.primes.sort_unstable();
        b.primes.dedup();
        if b.k == 0 {
            return Err(Error::ParameterRange("block exponents must be at least 1".into()));
        }
        if let Some(&q) = b.primes.iter().find(|&&q| !sieve.is_prime(q)) {
            return Err(Error::Input(format!("{q} is not prime")));
        }
        if b.primes.len() < b.n {
            return Err(Error::Input(format!(
                "a block asks for {} distinct primes from a set of {}",
                b.n,
                b.primes.len()
            )));
        }
    }
    for i in 0..normalized.len() {
        for j in i + 1..normalized.len() {
            let (a, b) = (&normalized[i].primes, &normalized[j].primes);
            if a != b && a.iter().any(|p| b.contains(p)) {
                return Err(Error::Input("block prime sets must be disjoint or identical".into()));
            }
        }
    }
    let mut out = Vec::new();
    if normalized.is_empty() {
        return Ok(FiniteSet::empty());
    }
    let first_n = normalized[0].n;
    choose_products(&normalized, 0, 0, first_n, &mut Vec::new(), 1, limit, &mut out);
    FiniteSet::new(out)
}

/// Products `q_1 ⋯ q_n <= limit` of primes `q_1 <= ... <= q_n` whose entry
/// at each 1-based position `positions[j]` equals `primes[j]`.
pub fn gen_levelfix(n: usize, positions: &[usize], primes: &[u64], sieve: &Sieve, limit: u64) -> Result<FiniteSet> {
    if positions.len() != primes.len() {
        return Err(Error::Input("positions and primes must have the same length".into()));
    }
    if positions.windows(2).any(|w| w[0] >= w[1]) || positions.iter().any(|&i| i == 0 || i > n) {
        return Err(Error::ParameterRange(format!(
            "positions must be strictly increasing within 1..={n}"
        )));
    }
    if let Some(&q) = primes.iter().find(|&&q| !sieve.is_prime(q)) {
        return Err(Error::Input(format!("{q} is not prime")));
    }
    let fixed = |i: usize| positions.iter().position(|&p| p == i).map(|j| primes[j]);
    let mut out = Vec::new();
    fn rec(
        i: usize,
        n: usize,
        prev: u64,
        acc: u64,
        limit: u64,
        fixed: &dyn Fn(usize) -> Option<u64>,
        sieve: &Sieve,
        out: &mut Vec<u64>,
    ) {
        if i > n {
            out.push(acc);
            return;
        }
        // The remaining n - i + 1 factors are each at least the current one.
        let remaining = (n - i + 1) as u32;
        let fits = |q: u64| q.checked_pow(remaining).and_then(|v| v.checked_mul(acc)).is_some_and(|v| v <= limit);
        match fixed(i) {
            Some(q) => {
                if q >= prev && fits(q) {
                    rec(i + 1, n, q, acc * q, limit, fixed, sieve, out);
                }
            }
            None => {
                let mut q = prev.max(2);
                while fits(q) {
                    if sieve.is_prime(q) {
                        rec(i + 1, n, q, acc * q, limit, fixed, sieve, out);
                    }
                    q += 1;
                }
            }
        }
    }
    rec(1, n, 2, 1, limit, &fixed, sieve, &mut out);
    FiniteSet::new(out)
}

/// Result of the pseudointersection construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pseudointersection {
    pub ys: Vec<u64>,
    /// False when some chain member ran out of elements below the horizon.
    pub complete: bool,
}

/// `y_n` = least known member of `X_n` above `y_{n-1}`, for `n = 1..=count`.
/// The chain `X_0 ⊇ X_1 ⊇ ...` is checked to be decreasing on the horizon.
pub fn pseudointersection(chain: &[LazySet], count: usize) -> Result<Pseudointersection> {
    if chain.len() < count + 1 {
        return Err(Error::ParameterRange(format!(
            "a pseudointersection of length {count} needs {} chain members",
            count + 1
        )));
    }
    for (i, w) in chain.windows(2).enumerate() {
        if let Some(&x) = w[1].elements().iter().find(|&&x| w[0].member(x) == Some(false)) {
            return Err(Error::Input(format!(
                "chain is not decreasing: {x} lies in X{} but not in X{i}",
                i + 1
            )));
        }
    }
    let mut ys = Vec::with_capacity(count);
    let mut prev = 0u64;
    for x in &chain[1..=count] {
        let e = x.elements();
        match e.get(e.partition_point(|&v| v <= prev)) {
            Some(&y) => {
                ys.push(y);
                prev = y;
            }
            None => return Ok(Pseudointersection { ys, complete: false }),
        }
    }
    Ok(Pseudointersection { ys, complete: true })
}
