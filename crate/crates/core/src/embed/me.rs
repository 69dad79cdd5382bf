//! Embeddability restricted to `m`-element subsets.

use super::refute::{fe_refute_level_finite, fe_refute_residue};
use super::witness::{fe_witness, FeOutcome};
use crate::error::{Error, Result};
use crate::finite_set::FiniteSet;
use crate::setlang::LazySet;
use crate::verdict::{Certificate, Direction, Verdict};

/// Cap on the number of `m`-subsets examined.
pub const MAX_SUBSETS: u64 = 1_000_000;

fn binomial(n: u64, k: u64) -> Option<u64> {
    let k = k.min(n.saturating_sub(k));
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Least `k <= k_max` with `a·k` a known member of `b`.
fn multiple_witness(a: u64, b: &LazySet, k_max: u64) -> Option<u64> {
    if let Some(&e) = b.elements().iter().find(|&&e| e % a == 0) {
        return Some(e / a);
    }
    (1..=k_max).find(|&k| a.checked_mul(k).and_then(|y| b.member(y)) == Some(true))
}

/// Checks `A ≤_me B` on `A ∩ [1, h]`.
///
/// For `m = 1` this is containment of `A ∩ [1, h]` in the divisor closure
/// of `B`. For larger `m` every `m`-subset is searched for a dilation.
pub fn me_check(a: &LazySet, b: &LazySet, m: usize, h: u64, k_max: u64) -> Result<Verdict> {
    if m == 0 {
        return Err(Error::ParameterRange("m must be at least 1".into()));
    }
    let elems = a.elements_upto(h);
    if m == 1 {
        let mut pairs = Vec::with_capacity(elems.len());
        let mut undecided = None;
        for &x in elems {
            match b.divides_member(x) {
                Some(false) => return Ok(Verdict::refuted(Certificate::NotDivisor { element: x })),
                Some(true) => match multiple_witness(x, b, k_max) {
                    Some(k) => pairs.push((x, k)),
                    None => {
                        undecided.get_or_insert(x);
                    }
                },
                None => {
                    undecided.get_or_insert(x);
                }
            }
        }
        return Ok(match undecided {
            None => Verdict::proved(Certificate::DivisorClosure { pairs }),
            Some(x) => Verdict::evidence(
                Direction::Against,
                format!("no multiple of {x} found in the target (k <= {k_max})"),
            ),
        });
    }
    let n = elems.len() as u64;
    let total = binomial(n, m as u64).unwrap_or(u64::MAX);
    if total > MAX_SUBSETS {
        return Err(Error::Resource {
            what: format!("{total} subsets of size {m}; use a smaller horizon"),
            limit: MAX_SUBSETS,
        });
    }
    if (n as usize) < m {
        return Ok(Verdict::evidence(
            Direction::For,
            format!("fewer than {m} elements of the source up to {h}"),
        ));
    }
    let mut idx: Vec<usize> = (0..m).collect();
    let mut count = 0u64;
    let mut hardest: Option<(FiniteSet, u64)> = None;
    let mut failing: Option<FiniteSet> = None;
    loop {
        let f = FiniteSet::from_sorted(idx.iter().map(|&i| elems[i]).collect());
        count += 1;
        match fe_witness(&f, b, k_max)? {
            FeOutcome::Embedded(w) => {
                if hardest.as_ref().is_none_or(|(_, k)| w.k > *k) {
                    hardest = Some((f, w.k));
                }
            }
            FeOutcome::NotEmbedded(r) => {
                if r.is_exact() {
                    return Ok(Verdict::refuted(r.certificate()));
                }
                if let Some(res) = fe_refute_residue(&f, b) {
                    return Ok(Verdict::refuted(res.certificate()));
                }
                if let Ok(Some(lv)) = fe_refute_level_finite(&f, b) {
                    return Ok(Verdict::refuted(lv.certificate()));
                }
                failing.get_or_insert(f);
            }
        }
        // Next combination in lexicographic order.
        let mut i = m;
        loop {
            if i == 0 {
                let verdict = match failing {
                    Some(f) => Verdict::evidence(
                        Direction::Against,
                        format!("no k <= {k_max} for the subset {f}"),
                    ),
                    None => {
                        let (f, k) = hardest.expect("at least one subset");
                        if count == 1 {
                            Verdict::proved(Certificate::Dilation { k, prefix: f })
                        } else {
                            Verdict::proved(Certificate::SubsetDilations { subsets: count, max_k: k, hardest: f })
                        }
                    }
                };
                return Ok(verdict);
            }
            i -= 1;
            if idx[i] < elems.len() - m + i {
                idx[i] += 1;
                for j in i + 1..m {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setlang::Evaluator;

    #[test]
    fn me_examples() {
        let ev = Evaluator::new(1000).unwrap();
        let a = ev.parse_eval("{4,9}").unwrap();
        let b = ev.parse_eval("mult(36)").unwrap();
        assert!(me_check(&a, &b, 1, 1000, 100).unwrap().is_proved());
        let a = ev.parse_eval("{2,3}").unwrap();
        let b = ev.parse_eval("mult(6)").unwrap();
        match me_check(&a, &b, 2, 1000, 100).unwrap() {
            Verdict::Proved { certificate: Certificate::Dilation { k, .. } } => assert_eq!(k, 6),
            v => panic!("{v:?}"),
        }
        let a = ev.parse_eval("{5}").unwrap();
        let b = ev.parse_eval("compl(mult(5))").unwrap();
        assert!(me_check(&a, &b, 1, 1000, 100).unwrap().is_refuted());
    }

    #[test]
    fn subset_cap() {
        let ev = Evaluator::new(1000).unwrap();
        let a = ev.parse_eval("N").unwrap();
        assert!(matches!(me_check(&a, &a, 3, 1000, 10), Err(Error::Resource { .. })));
    }
}
