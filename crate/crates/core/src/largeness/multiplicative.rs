//! Piecewise syndeticity with quotients in place of shifts.

use super::member_bitmap;
use crate::error::{Error, Result};
use crate::setlang::LazySet;
use crate::verdict::{Certificate, Direction, Verdict};

/// Largest quotient bound (all subsets of `{1, ..., t_max}` are tried).
pub const MAX_QUOTIENT_BOUND: u64 = 12;

/// For each `j <= n`, the mask of `t <= t_max` with `t·k·j` a known member.
fn needed_masks(bits: &[bool], k: u64, n: u64, t_max: u64, h: u64) -> Option<Vec<u32>> {
    (1..=n)
        .map(|j| {
            let x = k * j;
            let mask = (1..=t_max)
                .filter(|&t| x.checked_mul(t).is_some_and(|y| y <= h && bits[y as usize]))
                .fold(0u32, |m, t| m | 1 << (t - 1));
            (mask != 0).then_some(mask)
        })
        .collect()
}

/// Subsets of `{1..t_max}` ordered by size, then lexicographically.
fn subsets_by_size(t_max: u64) -> Vec<(u32, Vec<u64>)> {
    let mut all: Vec<(u32, Vec<u64>)> = (1u32..(1 << t_max))
        .map(|mask| (mask, (0..t_max).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect()))
        .collect();
    all.sort_by(|a, b| a.1.len().cmp(&b.1.len()).then_with(|| a.1.cmp(&b.1)));
    all
}

/// Least `k`, and for it the least (by size, then lexicographically)
/// `F ⊆ {1, ..., t_max}`, such that the union of `A/t` over `t ∈ F`
/// contains `k·{1, ..., n}`, using known members up to `h`.
pub fn m_pcws_check(a: &LazySet, t_max: u64, n: u64, h: u64) -> Result<Verdict> {
    if n == 0 || n > h {
        return Err(Error::ParameterRange(format!("run length must be in [1, {h}], got {n}")));
    }
    if t_max == 0 || t_max > MAX_QUOTIENT_BOUND {
        return Err(Error::ParameterRange(format!(
            "quotient bound must be in [1, {MAX_QUOTIENT_BOUND}], got {t_max}"
        )));
    }
    let bits = member_bitmap(a.elements_upto(h), h);
    for k in 1..=h / n {
        // Some F works for this k exactly when every j has a usable t.
        let Some(masks) = needed_masks(&bits, k, n, t_max, h) else { continue };
        let (_, f) = subsets_by_size(t_max)
            .into_iter()
            .find(|(m, _)| masks.iter().all(|need| need & m != 0))
            .expect("the full divisor set hits every mask");
        return Ok(Verdict::proved(Certificate::QuotientDilation { divisors: f, k, length: n }));
    }
    Ok(Verdict::evidence(
        Direction::Against,
        format!("no k·{{1..{n}}} in the union of quotients by 1..={t_max} up to {h}"),
    ))
}
