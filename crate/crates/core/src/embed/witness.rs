//! Dilation witnesses: `k · F ⊆ B`.

use serde::{Deserialize, Serialize};

use super::refute::{fe_refute_level, fe_refute_residue};
use crate::error::{Error, Result};
use crate::finite_set::FiniteSet;
use crate::setlang::LazySet;
use crate::verdict::{Certificate, Direction, Verdict};

/// Largest finite target the exact finite decision will materialize.
const MAX_FINITE_TARGET_SCAN: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeWitness {
    pub k: u64,
    pub f: FiniteSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FeRefutation {
    Exhausted { k_max: u64 },
    FiniteTarget { bound: u64, max_k: u64 },
    Level { pair: (u64, u64), levels: (u32, u32), delta: i64, allowed: Vec<i64> },
    Residue { m: u64 },
}

impl FeRefutation {
    /// Whether the refutation is exact (not merely a finished search).
    pub fn is_exact(&self) -> bool {
        !matches!(self, FeRefutation::Exhausted { .. })
    }

    pub fn certificate(&self) -> Certificate {
        match self.clone() {
            FeRefutation::Exhausted { k_max } => Certificate::Exhausted { k_max },
            FeRefutation::FiniteTarget { bound, max_k } => Certificate::FiniteTarget { bound, max_k },
            FeRefutation::Level { pair, levels, delta, allowed } => {
                Certificate::Level { pair, levels, delta, allowed }
            }
            FeRefutation::Residue { m } => Certificate::Residue { m },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum FeOutcome {
    Embedded(FeWitness),
    NotEmbedded(FeRefutation),
}

impl FeOutcome {
    pub fn witness(&self) -> Option<&FeWitness> {
        match self {
            FeOutcome::Embedded(w) => Some(w),
            FeOutcome::NotEmbedded(_) => None,
        }
    }

    pub fn k(&self) -> Option<u64> {
        self.witness().map(|w| w.k)
    }
}

fn check_source(f: &FiniteSet) -> Result<()> {
    if f.is_empty() {
        return Err(Error::Input("the source set F must be nonempty".into()));
    }
    Ok(())
}

/// All members of a finite, exactly known set.
pub(crate) fn finite_members(b: &LazySet) -> Result<Vec<u64>> {
    let sup = b.sup().expect("finite target");
    if sup <= b.horizon() {
        return Ok(b.elements().to_vec());
    }
    if sup - b.horizon() > MAX_FINITE_TARGET_SCAN {
        return Err(Error::resource("finite target scan above the horizon", MAX_FINITE_TARGET_SCAN));
    }
    let mut v = b.elements().to_vec();
    for n in b.horizon() + 1..=sup {
        if b.member_checked(n)? {
            v.push(n);
        }
    }
    Ok(v)
}

/// Exact decision against a finite sorted target: the least `k` with
/// `k·F ⊆ target`. Only `k = b / min F` for `b` in the target can work.
pub fn fe_witness_finite(f: &FiniteSet, target: &[u64]) -> Result<FeOutcome> {
    check_source(f)?;
    let m0 = f.min().expect("nonempty");
    let bound = target.last().copied().unwrap_or(0);
    for &b in target {
        if b % m0 != 0 {
            continue;
        }
        let k = b / m0;
        let fits = f.iter().all(|x| x.checked_mul(k).is_some_and(|y| target.binary_search(&y).is_ok()));
        if fits {
            return Ok(FeOutcome::Embedded(FeWitness { k, f: f.clone() }));
        }
    }
    Ok(FeOutcome::NotEmbedded(FeRefutation::FiniteTarget { bound, max_k: bound / m0 }))
}

/// Least `k <= k_max` with `k·F ⊆ B`.
///
/// When `B` is finite and exactly known, every `k` up to `max(B) / min(F)`
/// is decided and `k_max` is not used. Otherwise each `k` is rejected as
/// soon as some `k·f` is known not to be in `B`; a `k` that cannot be
/// rejected but has an undetermined member yields a precision error.
pub fn fe_witness(f: &FiniteSet, b: &LazySet, k_max: u64) -> Result<FeOutcome> {
    check_source(f)?;
    if b.is_finite_exact() {
        return fe_witness_finite(f, &finite_members(b)?);
    }
    'k: for k in 1..=k_max {
        let mut unknown: Option<u64> = None;
        for x in f.iter() {
            let y = x
                .checked_mul(k)
                .ok_or_else(|| Error::Overflow(format!("{k}·{x}")))?;
            match b.member(y) {
                Some(true) => {}
                Some(false) => continue 'k,
                None => {
                    unknown.get_or_insert(y);
                }
            }
        }
        if let Some(required) = unknown {
            return Err(Error::Precision { required, available: b.exact_horizon() });
        }
        return Ok(FeOutcome::Embedded(FeWitness { k, f: f.clone() }));
    }
    Ok(FeOutcome::NotEmbedded(FeRefutation::Exhausted { k_max }))
}

/// Sorted quotient `B/a = {b/a : b ∈ B, a | b}` of a finite target.
fn finite_quotient(target: &[u64], a: u64) -> Vec<u64> {
    target.iter().filter(|&&b| b % a == 0).map(|&b| b / a).collect()
}

/// Membership status of `k` in `B/a`.
fn quotient_status(b: &LazySet, a: u64, k: u64) -> Result<Option<bool>> {
    let y = a.checked_mul(k).ok_or_else(|| Error::Overflow(format!("{k}·{a}")))?;
    Ok(b.member(y))
}

/// Least `k >= from` that is possibly in `B/a` (member or undetermined).
fn next_candidate(b: &LazySet, a: u64, from: u64, k_max: u64) -> Result<Option<u64>> {
    let mut k = from;
    // Inside the completely enumerated range, walk the element list.
    let enum_h = b.enum_horizon();
    if let Some(start) = a.checked_mul(k) {
        if start <= enum_h {
            let els = b.elements();
            let lo = els.partition_point(|&e| e < start);
            for &e in &els[lo..] {
                if e > enum_h {
                    break;
                }
                if e % a == 0 {
                    let q = e / a;
                    return Ok((q <= k_max).then_some(q));
                }
            }
            k = enum_h / a + 1;
        }
    }
    while k <= k_max {
        if quotient_status(b, a, k)? != Some(false) {
            return Ok(Some(k));
        }
        k += 1;
    }
    Ok(None)
}

/// Intersects the quotients `B/a` over `a ∈ F` within `[1, k_max]` and
/// returns the least element. Computed independently of [`fe_witness`] and
/// must agree with it on every input, errors included.
pub fn fe_fip_oracle(f: &FiniteSet, b: &LazySet, k_max: u64) -> Result<FeOutcome> {
    check_source(f)?;
    if b.is_finite_exact() {
        let target = finite_members(b)?;
        let bound = target.last().copied().unwrap_or(0);
        let m0 = f.min().expect("nonempty");
        let mut acc = finite_quotient(&target, f.as_slice()[0]);
        for a in f.iter().skip(1) {
            let q = finite_quotient(&target, a);
            acc.retain(|k| q.binary_search(k).is_ok());
        }
        return Ok(match acc.first() {
            Some(&k) => FeOutcome::Embedded(FeWitness { k, f: f.clone() }),
            None => FeOutcome::NotEmbedded(FeRefutation::FiniteTarget { bound, max_k: bound / m0 }),
        });
    }
    // Leapfrog join of the candidate streams.
    let mut k = 1u64;
    'outer: loop {
        for a in f.iter() {
            match next_candidate(b, a, k, k_max)? {
                None => return Ok(FeOutcome::NotEmbedded(FeRefutation::Exhausted { k_max })),
                Some(c) if c > k => {
                    k = c;
                    continue 'outer;
                }
                Some(_) => {}
            }
        }
        break;
    }
    for a in f.iter() {
        if quotient_status(b, a, k)?.is_none() {
            return Err(Error::Precision { required: a * k, available: b.exact_horizon() });
        }
    }
    Ok(FeOutcome::Embedded(FeWitness { k, f: f.clone() }))
}

/// Checks `A ≤_fe B` on the first `p` elements of `A`.
///
/// A witness for the prefix covers every subset of it with the same `k`.
/// Failure is exact when the target is finite or a structural refuter
/// applies, and bounded evidence otherwise.
pub fn fe_prefix_check(a: &LazySet, b: &LazySet, p: usize, k_max: u64) -> Result<Verdict> {
    let f = a.first_elements(p);
    if f.is_empty() {
        if a.sup() == Some(0) {
            return Ok(Verdict::proved(Certificate::EmptySet));
        }
        return Ok(Verdict::evidence(
            Direction::For,
            format!("no element of the source below {}", a.horizon()),
        ));
    }
    // Structural refuters first: they settle the question without a k-scan.
    if let Some(res) = fe_refute_residue(&f, b) {
        return Ok(Verdict::refuted(res.certificate()));
    }
    if let Ok(Some(lv)) = fe_refute_level(a, b, a.horizon()) {
        return Ok(Verdict::refuted(lv.certificate()));
    }
    match fe_witness(&f, b, k_max)? {
        FeOutcome::Embedded(w) => Ok(Verdict::proved(Certificate::Dilation { k: w.k, prefix: w.f })),
        FeOutcome::NotEmbedded(r) if r.is_exact() => Ok(Verdict::refuted(r.certificate())),
        FeOutcome::NotEmbedded(r) => Ok(Verdict::evidence_with(
            Direction::Against,
            format!("first {} elements of the source, k <= {k_max}", f.len()),
            r.certificate(),
        )),
    }
}

/// Searches `k` with `k·{1..n} ⊆ A` and `k·n <= H`.
pub fn mthick_check(a: &LazySet, n: u64, h: u64) -> Verdict {
    if n == 0 {
        return Verdict::proved(Certificate::Dilation { k: 1, prefix: FiniteSet::empty() });
    }
    for k in 1..=h / n {
        if (1..=n).all(|i| a.member(i * k) == Some(true)) {
            return Verdict::proved(Certificate::Dilation {
                k,
                prefix: FiniteSet::from_sorted((1..=n).collect()),
            });
        }
    }
    Verdict::evidence(Direction::Against, format!("no k <= {} with k·{{1..{n}}} inside", h / n))
}
