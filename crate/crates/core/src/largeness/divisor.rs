//! Divisibility-based largeness: MAX, MAX*, their antichain analogues,
//! and the congruence construction of runs inside `C↑`.

use serde::{Deserialize, Serialize};

use super::member_bitmap;
use crate::arith::{crt_solve, extract_strong_antichain_from, is_prime_u64, is_strong_antichain, isqrt, Search};
use crate::error::{Error, Result};
use crate::finite_set::FiniteSet;
use crate::setlang::LazySet;
use crate::verdict::{Certificate, Direction, Verdict};

/// Step budget for antichain extraction.
pub const ANTICHAIN_BUDGET: u64 = 5_000_000;

/// Membership of `x <= h` from the bitmap when listed completely there,
/// otherwise from the set itself.
fn member_at(a: &LazySet, bits: &[bool], x: u64) -> Option<bool> {
    if x <= a.enum_horizon() && (x as usize) < bits.len() {
        Some(bits[x as usize])
    } else {
        a.member(x)
    }
}

/// For each `n <= n_max`, a member divisible by `n`.
///
/// Witnesses come from the members up to `h`, then from members certified
/// by listed data in the expression (such as generated terms above `h`).
pub fn max_check(a: &LazySet, n_max: u64, h: u64) -> Result<Verdict> {
    if n_max == 0 {
        return Err(Error::ParameterRange("MAX divisor bound must be positive".into()));
    }
    let elements = a.elements_upto(h);
    let bits = member_bitmap(elements, h);
    let top = elements.last().copied().unwrap_or(0);
    let listed: Vec<u64> = a
        .listed_members()
        .into_iter()
        .filter(|&x| x > h && a.member(x) == Some(true))
        .collect();
    let mut witnesses = Vec::with_capacity(n_max.min(1 << 20) as usize);
    for n in 1..=n_max {
        let below = (1..=top / n).map(|j| j * n).find(|&x| bits[x as usize]);
        let found = below.or_else(|| listed.iter().copied().find(|x| x % n == 0));
        match found {
            Some(x) => witnesses.push((n, x)),
            None => {
                if a.avoids_multiples_of(n) || a.divides_member(n) == Some(false) {
                    return Ok(Verdict::refuted(Certificate::Residue { m: n }));
                }
                return Ok(Verdict::evidence_with(
                    Direction::Against,
                    format!("{n} divides no member found up to {h}"),
                    Certificate::DivisorTable { up_to: n - 1, witnesses },
                ));
            }
        }
    }
    Ok(Verdict::proved(Certificate::DivisorTable { up_to: n_max, witnesses }))
}

/// Some `a <= a_max` all of whose multiples up to `h` are members.
/// Otherwise, for each `a`, the least multiple that is not a member.
pub fn maxstar_check(a: &LazySet, a_max: u64, h: u64) -> Result<Verdict> {
    if a_max == 0 || a_max > h {
        return Err(Error::ParameterRange(format!("dilation bound must be in [1, {h}], got {a_max}")));
    }
    let bits = member_bitmap(a.elements_upto(h), h);
    let mut table = Vec::new();
    // Largest decided prefix of multiples, for an `a` with no counterexample.
    let mut partial: Option<(u64, u64)> = None;
    for d in 1..=a_max {
        let mut last_ok = 0;
        let mut outcome = None;
        for x in (d..=h).step_by(d as usize) {
            match member_at(a, &bits, x) {
                Some(true) => last_ok = x,
                Some(false) => {
                    outcome = Some(Some(x));
                    break;
                }
                None => {
                    outcome = Some(None);
                    break;
                }
            }
        }
        match outcome {
            None => return Ok(Verdict::proved(Certificate::Multiples { a: d, checked_up_to: h })),
            Some(Some(x)) => table.push((d, x)),
            Some(None) => {
                if partial.is_none_or(|(_, up)| last_ok > up) {
                    partial = Some((d, last_ok));
                }
            }
        }
    }
    Ok(match partial {
        None => Verdict::refuted(Certificate::Counterexamples { table }),
        Some((d, up)) => Verdict::evidence_with(
            Direction::For,
            format!("multiples of {d} are members up to {up}; membership above is undetermined"),
            Certificate::Multiples { a: d, checked_up_to: up },
        ),
    })
}

/// Candidates `c ∈ [2, isqrt(h)]` satisfying `keep`, primes first when
/// `primes_first` is set, otherwise ascending.
fn candidates(h: u64, primes_first: bool, keep: impl Fn(u64) -> bool) -> Vec<u64> {
    let all: Vec<u64> = (2..=isqrt(h)).filter(|&c| keep(c)).collect();
    if !primes_first {
        return all;
    }
    let (mut p, c): (Vec<u64>, Vec<u64>) = all.into_iter().partition(|&c| is_prime_u64(c));
    p.extend(c);
    p
}

fn antichain_verdict(
    found: Search<FiniteSet>,
    s: usize,
    hit: Direction,
    hit_bound: String,
    miss_bound: String,
) -> Verdict {
    let miss = match hit {
        Direction::For => Direction::Against,
        Direction::Against => Direction::For,
    };
    match found {
        Search::Found(c) => Verdict::evidence_with(hit, hit_bound, Certificate::Antichain { elements: c, strength: s }),
        Search::Absent => Verdict::evidence(miss, miss_bound),
        Search::Exhausted => Verdict::evidence(miss, format!("{miss_bound} (search budget {ANTICHAIN_BUDGET} exhausted)")),
    }
}

fn check_strength(s: usize) -> Result<()> {
    if s < 2 {
        return Err(Error::ParameterRange(format!("antichain strength must be at least 2, got {s}")));
    }
    Ok(())
}

/// A strong antichain `C` of size `s` none of whose members divides a
/// member of `A ∩ [1, h]`: evidence that `A` is not an NMAX set.
pub fn nmax_refute(a: &LazySet, s: usize, h: u64) -> Result<Verdict> {
    check_strength(s)?;
    let elements = a.elements_upto(h);
    let bits = member_bitmap(elements, h);
    let top = elements.last().copied().unwrap_or(0);
    let cands = candidates(h, true, |c| (1..=top / c).all(|j| !bits[(j * c) as usize]));
    let found = extract_strong_antichain_from(&cands, s, ANTICHAIN_BUDGET);
    Ok(antichain_verdict(
        found,
        s,
        Direction::Against,
        format!("strong antichain of size {s} dividing no member up to {h}"),
        format!("no strong antichain of size {s} in [2, {}] avoids the members up to {h}", isqrt(h)),
    ))
}

/// A strong antichain `C` of size `s` with `C↑ ∩ [1, h] ⊆ A`: evidence
/// that `A` is an NMAX* set.
pub fn nmaxstar_check(a: &LazySet, s: usize, h: u64) -> Result<Verdict> {
    check_strength(s)?;
    let bits = member_bitmap(a.elements_upto(h), h);
    let cands = candidates(h, false, |c| (c..=h).step_by(c as usize).all(|x| member_at(a, &bits, x) == Some(true)));
    let found = extract_strong_antichain_from(&cands, s, ANTICHAIN_BUDGET);
    Ok(antichain_verdict(
        found,
        s,
        Direction::For,
        format!("strong antichain of size {s} whose multiples up to {h} are members"),
        format!("no strong antichain of size {s} in [2, {}] has all multiples up to {h} in the set", isqrt(h)),
    ))
}

/// Solution of `x ≡ -m (mod c_m)`, `m = 1..n`: the run `{x+1, ..., x+n}`
/// has `c_m | x+m`, so it lies in `C↑`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrtRun {
    pub moduli: Vec<u64>,
    pub residues: Vec<u64>,
    pub x: u64,
}

impl CrtRun {
    pub fn run(&self) -> Vec<u64> {
        (1..=self.moduli.len() as u64).map(|m| self.x + m).collect()
    }

    /// Re-checks every divisibility `c_m | x + m`.
    pub fn verify(&self) -> bool {
        self.moduli.iter().zip(1u64..).all(|(&c, m)| (self.x + m).is_multiple_of(c))
    }

    pub fn certificate(&self) -> Certificate {
        Certificate::Crt { moduli: self.moduli.clone(), residues: self.residues.clone(), x: self.x }
    }
}

/// Uses the `n` least members of the strong antichain `c`.
pub fn crt_thickness_demo(c: &FiniteSet, n: usize) -> Result<CrtRun> {
    if !is_strong_antichain(c)? {
        return Err(Error::Input(format!("{c} is not pairwise coprime")));
    }
    if n == 0 || n > c.len() {
        return Err(Error::ParameterRange(format!("run length must be in [1, {}], got {n}", c.len())));
    }
    let moduli: Vec<u64> = c.iter().take(n).collect();
    let residues: Vec<u64> = moduli.iter().zip(1u64..).map(|(&cm, m)| (cm - m % cm) % cm).collect();
    let system: Vec<(u64, u64)> = residues.iter().copied().zip(moduli.iter().copied()).collect();
    let x = crt_solve(&system)?.ok_or_else(|| Error::Input("coprime moduli always have a solution".into()))?;
    let run = CrtRun { moduli, residues, x };
    debug_assert!(run.verify());
    Ok(run)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setlang::Evaluator;

    #[test]
    fn max_examples() {
        let ev = Evaluator::new(1_000_000).unwrap();
        let eg = ev.parse_eval("construct(exgamma,25)").unwrap();
        assert!(max_check(&eg, 20, 1_000_000).unwrap().is_proved());
        let odd = ev.parse_eval("odd").unwrap();
        assert_eq!(max_check(&odd, 2, 1000).unwrap(), Verdict::refuted(Certificate::Residue { m: 2 }));
        let n = ev.parse_eval("N").unwrap();
        assert!(max_check(&n, 50, 1000).unwrap().is_proved());
    }

    #[test]
    fn maxstar_examples() {
        let ev = Evaluator::new(5000).unwrap();
        let m2 = ev.parse_eval("mult(2)").unwrap();
        assert_eq!(maxstar_check(&m2, 10, 5000).unwrap(), Verdict::proved(Certificate::Multiples { a: 2, checked_up_to: 5000 }));
        let t = ev.parse_eval("construct(thick_nonmaxstar,20)").unwrap();
        match maxstar_check(&t, 20, 5000).unwrap() {
            Verdict::Refuted { certificate: Certificate::Counterexamples { table } } => {
                assert_eq!(table.len(), 20);
                assert!(table.iter().all(|&(a, x)| x % a == 0 && t.member(x) == Some(false)));
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn antichain_examples() {
        let ev = Evaluator::new(10_000).unwrap();
        let fp = ev.parse_eval("construct(fp_primes,odd,6)").unwrap();
        let v = nmax_refute(&fp, 4, 10_000).unwrap();
        assert_eq!(
            v.certificate(),
            Some(&Certificate::Antichain { elements: FiniteSet::from_sorted(vec![3, 7, 13, 19]), strength: 4 })
        );
        let n = ev.parse_eval("N").unwrap();
        assert_eq!(nmax_refute(&n, 2, 10_000).unwrap().direction(), Some(Direction::For));
        let odd = ev.at_horizon(100).unwrap().parse_eval("odd").unwrap();
        assert_eq!(nmax_refute(&odd, 3, 100).unwrap().direction(), Some(Direction::For));

        let up = ev.parse_eval("up({3,5,7,11})").unwrap();
        assert_eq!(
            nmaxstar_check(&up, 4, 10_000).unwrap().certificate(),
            Some(&Certificate::Antichain { elements: FiniteSet::from_sorted(vec![3, 5, 7, 11]), strength: 4 })
        );
        let odd = ev.parse_eval("odd").unwrap();
        assert_eq!(nmaxstar_check(&odd, 2, 10_000).unwrap().direction(), Some(Direction::Against));
    }

    #[test]
    fn crt_examples() {
        let r = crt_thickness_demo(&FiniteSet::from_sorted(vec![3, 5, 7]), 3).unwrap();
        assert_eq!(r.x, 53);
        assert_eq!(r.run(), vec![54, 55, 56]);
        assert_eq!(crt_thickness_demo(&FiniteSet::from_sorted(vec![2, 3]), 2).unwrap().x, 1);
        assert_eq!(crt_thickness_demo(&FiniteSet::from_sorted(vec![9]), 1).unwrap().x, 8);
        assert!(crt_thickness_demo(&FiniteSet::from_sorted(vec![4, 6]), 2).is_err());
    }
}
