//! Exact refuters for finite embeddability.

use std::collections::BTreeSet;

use super::witness::FeRefutation;
use crate::error::{Error, Result};
use crate::finite_set::FiniteSet;
use crate::setlang::LazySet;

/// Least `m ∈ F` such that `B` provably contains no multiple of `m`.
/// Then `k·m ∉ B` for every `k`, so no dilation of `F` fits.
pub fn fe_refute_residue(f: &FiniteSet, b: &LazySet) -> Option<FeRefutation> {
    f.iter().find(|&m| b.avoids_multiples_of(m)).map(|m| FeRefutation::Residue { m })
}

/// All differences `s - t` over levels `s, t` in the profile.
pub fn level_differences(levels: &BTreeSet<u32>) -> BTreeSet<i64> {
    let mut d = BTreeSet::new();
    for &s in levels {
        for &t in levels {
            d.insert(s as i64 - t as i64);
        }
    }
    d
}

fn profile(b: &LazySet) -> Result<&BTreeSet<u32>> {
    b.level_profile().ok_or_else(|| {
        Error::Inapplicable("the target is not a union of levels (possibly intersected with other sets)".into())
    })
}

fn certificate(x: u64, y: u64, lx: u32, ly: u32, allowed: &BTreeSet<i64>) -> FeRefutation {
    FeRefutation::Level {
        pair: (x, y),
        levels: (lx, ly),
        delta: ly as i64 - lx as i64,
        allowed: allowed.iter().copied().collect(),
    }
}

/// Level refutation over the members of a finite sorted list: the
/// lexicographically least pair `x <= y` whose level difference
/// `Ω(y) - Ω(x)` is not a difference of two levels `B` can occupy.
/// Dilation by `k` adds `Ω(k)` to both levels, so the difference is invariant.
fn refute_members(members: &[u64], b: &LazySet) -> Result<Option<FeRefutation>> {
    let levels = profile(b)?;
    let allowed = level_differences(levels);
    let sieve = b.sieve();
    let omegas: Vec<u32> = members.iter().map(|&x| sieve.omega(x)).collect();
    // Last index at which each level occurs.
    let mut last = std::collections::BTreeMap::new();
    for (i, &l) in omegas.iter().enumerate() {
        last.insert(l, i);
    }
    for (i, &x) in members.iter().enumerate() {
        let lx = omegas[i];
        let bad = |ly: u32| !allowed.contains(&(ly as i64 - lx as i64));
        if !last.iter().any(|(&ly, &j)| j >= i && bad(ly)) {
            continue;
        }
        for j in i..members.len() {
            if bad(omegas[j]) {
                return Ok(Some(certificate(x, members[j], lx, omegas[j], &allowed)));
            }
        }
    }
    Ok(None)
}

/// Level refutation of `A ≤_fe B` using the known members of `A` up to `h`.
/// Fails with an inapplicability error when `B` has no level profile.
pub fn fe_refute_level(a: &LazySet, b: &LazySet, h: u64) -> Result<Option<FeRefutation>> {
    refute_members(a.elements_upto(h), b)
}

/// Level refutation for an explicit finite source set.
pub fn fe_refute_level_finite(f: &FiniteSet, b: &LazySet) -> Result<Option<FeRefutation>> {
    refute_members(f.as_slice(), b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setlang::Evaluator;

    #[test]
    fn level_examples() {
        let ev = Evaluator::new(1000).unwrap();
        let a = ev.parse_eval("{6,8}").unwrap();
        let b = ev.parse_eval("union(level(2),level(5))").unwrap();
        match fe_refute_level(&a, &b, 1000).unwrap() {
            Some(FeRefutation::Level { delta, allowed, pair, .. }) => {
                assert_eq!(delta, 1);
                assert_eq!(pair, (6, 8));
                assert_eq!(allowed, vec![-3, 0, 3]);
            }
            other => panic!("{other:?}"),
        }
        let a = ev.parse_eval("inter(level(2),mult(3))").unwrap();
        let b = ev.parse_eval("level(7)").unwrap();
        assert_eq!(fe_refute_level(&a, &b, 1000).unwrap(), None);
        let a = ev.parse_eval("{2,4}").unwrap();
        let b = ev.parse_eval("level(3)").unwrap();
        assert!(matches!(
            fe_refute_level(&a, &b, 1000).unwrap(),
            Some(FeRefutation::Level { delta: 1, .. })
        ));
        let b = ev.parse_eval("mult(3)").unwrap();
        assert!(matches!(fe_refute_level(&a, &b, 1000), Err(Error::Inapplicable(_))));
    }

    #[test]
    fn residue_examples() {
        let ev = Evaluator::new(1000).unwrap();
        let f = |v: &[u64]| FiniteSet::new(v.to_vec()).unwrap();
        let b = ev.parse_eval("compl(mult(2))").unwrap();
        assert_eq!(fe_refute_residue(&f(&[2, 5]), &b), Some(FeRefutation::Residue { m: 2 }));
        let b = ev.parse_eval("mult(3)").unwrap();
        assert_eq!(fe_refute_residue(&f(&[3]), &b), None);
        let b = ev.parse_eval("ap(1,6)").unwrap();
        assert_eq!(fe_refute_residue(&f(&[6]), &b), Some(FeRefutation::Residue { m: 6 }));
    }
}
