//! Runs, shifted runs, IP sets, their duals and J sets.

use super::member_bitmap;
use crate::error::{Error, Result};
use crate::setlang::{Evaluator, LazySet, SetExpr, MAX_SEQUENCE_LEN};
use crate::verdict::{Certificate, Direction, Mode, Verdict};

/// Step budget for the IP depth-first search.
pub const IP_SEARCH_BUDGET: u64 = 20_000_000;

/// Largest index bound for J sets (all nonempty subsets are tried).
pub const MAX_J_INDEX: usize = 20;

/// `(start, length)` of the first run of at least `n` set bits in
/// `bits[1..]`, where the run is `{start+1, ..., start+length}`.
fn first_run(bits: &[bool], n: u64) -> Option<u64> {
    let mut cur = 0u64;
    for x in 1..bits.len() {
        if bits[x] {
            cur += 1;
            if cur >= n {
                return Some(x as u64 - n);
            }
        } else {
            cur = 0;
        }
    }
    None
}

/// The earliest longest run: `(start, length)`.
fn longest_run(bits: &[bool]) -> (u64, u64) {
    let (mut best, mut best_start, mut cur) = (0u64, 0u64, 0u64);
    for x in 1..bits.len() {
        if bits[x] {
            cur += 1;
            if cur > best {
                best = cur;
                best_start = x as u64 - cur;
            }
        } else {
            cur = 0;
        }
    }
    (best_start, best)
}

/// Marks `x <= h` with `x + t` a known member for some `t <= t_max`.
fn shifted_union(a: &LazySet, t_max: u64, h: u64) -> Vec<bool> {
    let bits = member_bitmap(a.elements_upto(h), h);
    let mut out = vec![false; bits.len()];
    for x in 1..bits.len() {
        out[x] = (0..=t_max).any(|t| bits.get(x + t as usize).copied().unwrap_or(false));
    }
    out
}

/// Earliest longest run `(start, length)` in the union of `A - t`,
/// `t = 0..=t_max`, using known members up to `h`.
pub fn longest_shifted_run(a: &LazySet, t_max: u64, h: u64) -> (u64, u64) {
    longest_run(&shifted_union(a, t_max, h))
}

fn check_run_length(n: u64, h: u64) -> Result<()> {
    if n == 0 || n > h {
        return Err(Error::ParameterRange(format!("run length must be in [1, {h}], got {n}")));
    }
    Ok(())
}

/// A run `{m+1, ..., m+n}` inside `A ∩ [1, h]`.
pub fn a_thick_check(a: &LazySet, n: u64, h: u64) -> Result<Verdict> {
    check_run_length(n, h)?;
    let bits = member_bitmap(a.elements_upto(h), h);
    if let Some(start) = first_run(&bits, n) {
        return Ok(Verdict::proved(Certificate::Interval { start, length: n }));
    }
    for p in a.periodic_form().into_iter().chain(std::iter::once(a.upper_bound())) {
        if let Some(longest) = p.longest_run() {
            if longest < n {
                return Ok(Verdict::refuted(Certificate::RunBound {
                    longest,
                    offset: p.offset(),
                    period: p.period(),
                }));
            }
        }
    }
    let (start, length) = longest_run(&bits);
    Ok(Verdict::evidence_with(
        Direction::Against,
        format!("no run of length {n} in [1, {}]", h.min(a.exact_horizon())),
        Certificate::Interval { start, length },
    ))
}

/// A run of length `n` in the union of `A - t` over `t ∈ {0, ..., t'}` for
/// the least `t' <= t_max` that has one.
pub fn a_pcws_check(a: &LazySet, t_max: u64, n: u64, h: u64) -> Result<Verdict> {
    check_run_length(n, h)?;
    if t_max > h {
        return Err(Error::ParameterRange(format!("shift bound {t_max} exceeds the horizon {h}")));
    }
    for t in 0..=t_max {
        let bits = shifted_union(a, t, h);
        if let Some(start) = first_run(&bits, n) {
            return Ok(Verdict::proved(Certificate::ShiftedInterval {
                shifts: (0..=t).collect(),
                start,
                length: n,
            }));
        }
    }
    let (start, length) = longest_shifted_run(a, t_max, h);
    Ok(Verdict::evidence_with(
        Direction::Against,
        format!("no run of length {n} in the shifts by 0..={t_max} up to {}", h.min(a.exact_horizon())),
        Certificate::ShiftedInterval { shifts: (0..=t_max).collect(), start, length },
    ))
}

fn combine(mode: Mode, x: u64, y: u64) -> Option<u64> {
    match mode {
        Mode::Additive => x.checked_add(y),
        Mode::Multiplicative => x.checked_mul(y),
    }
}

enum Dfs {
    Found,
    Dead,
    OutOfBudget,
}

struct IpSearch<'a> {
    bits: &'a [bool],
    elements: &'a [u64],
    h: u64,
    mode: Mode,
    len: usize,
    steps: u64,
}

impl IpSearch<'_> {
    fn member(&self, x: u64) -> bool {
        x <= self.h && self.bits[x as usize]
    }

    /// Extends `chosen` (with combinations `combos`) to `len` terms.
    fn rec(&mut self, chosen: &mut Vec<u64>, combos: &mut Vec<u64>) -> Dfs {
        if chosen.len() == self.len {
            return Dfs::Found;
        }
        let last = chosen.last().copied().unwrap_or(0);
        let from = self.elements.partition_point(|&e| e <= last);
        for i in from..self.elements.len() {
            let x = self.elements[i];
            self.steps += 1;
            if self.steps > IP_SEARCH_BUDGET {
                return Dfs::OutOfBudget;
            }
            // The largest new combination must stay within the horizon.
            let top = combos.iter().copied().max().map_or(Some(x), |m| combine(self.mode, m, x));
            match top {
                Some(t) if t <= self.h => {}
                _ => {
                    if self.mode == Mode::Additive || x > 1 {
                        // Larger x only make it worse.
                        break;
                    }
                    continue;
                }
            }
            let fresh: Option<Vec<u64>> = combos.iter().map(|&c| combine(self.mode, c, x)).collect();
            let Some(fresh) = fresh else { continue };
            if !fresh.iter().all(|&v| self.member(v)) {
                continue;
            }
            let before = combos.len();
            combos.push(x);
            combos.extend(fresh);
            chosen.push(x);
            match self.rec(chosen, combos) {
                Dfs::Found => return Dfs::Found,
                Dfs::OutOfBudget => return Dfs::OutOfBudget,
                Dfs::Dead => {
                    chosen.pop();
                    combos.truncate(before);
                }
            }
        }
        Dfs::Dead
    }
}

/// Lexicographically least `x_1 < ... < x_L` whose nonempty subset sums
/// (or products) all lie in the known part of `A ∩ [1, h]`.
pub fn ip_search(a: &LazySet, len: usize, h: u64, mode: Mode) -> Result<Verdict> {
    if len == 0 || len > MAX_SEQUENCE_LEN {
        return Err(Error::ParameterRange(format!(
            "IP length must be in [1, {MAX_SEQUENCE_LEN}], got {len}"
        )));
    }
    let elements = a.elements_upto(h);
    let bits = member_bitmap(elements, h);
    let mut search = IpSearch { bits: &bits, elements, h, mode, len, steps: 0 };
    let mut chosen = Vec::with_capacity(len);
    let mut combos = Vec::with_capacity(1 << len.min(16));
    let op = if mode == Mode::Additive { "sums" } else { "products" };
    Ok(match search.rec(&mut chosen, &mut combos) {
        Dfs::Found => Verdict::proved(Certificate::Sequence { mode, terms: chosen }),
        Dfs::Dead => Verdict::evidence(
            Direction::Against,
            format!("no {len} generators with all finite {op} in the set up to {h}"),
        ),
        Dfs::OutOfBudget => Verdict::evidence(
            Direction::Against,
            format!("search budget of {IP_SEARCH_BUDGET} steps exhausted (length {len}, {op}, H={h})"),
        ),
    })
}

/// The dual check: `A` meets every IP set exactly when its complement
/// contains none. Needs an exactly known set.
pub fn ip_star_check(a: &LazySet, len: usize, h: u64, mode: Mode) -> Result<Verdict> {
    if !a.is_exact() {
        return Err(Error::Inapplicable(format!(
            "the dual check needs an exactly known set; '{}' is only known up to {}",
            a.expr(),
            a.exact_horizon()
        )));
    }
    let ev = Evaluator::with_sieve(a.horizon(), a.sieve().clone())?;
    let comp = ev.eval(&SetExpr::compl(a.expr().clone()))?;
    Ok(match ip_search(&comp, len, h, mode)? {
        Verdict::Proved { certificate: Certificate::Sequence { mode, terms } } => {
            Verdict::refuted(Certificate::ComplementSequence { mode, terms })
        }
        Verdict::BoundedEvidence { bound, .. } => {
            Verdict::evidence(Direction::For, format!("complement: {bound}"))
        }
        other => other,
    })
}

/// Anchor `a <= a_max` and nonempty `H' ⊆ {1, ..., h_max}` with
/// `a + Σ_{i∈H'} f(i)` (or `a · Π f(i)`) in `A` for every table `f`.
/// Tables are 1-indexed: `f[0]` is `f(1)`.
pub fn j_check(a: &LazySet, funcs: &[Vec<u64>], a_max: u64, h_max: usize, mode: Mode) -> Result<Verdict> {
    if funcs.is_empty() {
        return Err(Error::ParameterRange("J check needs at least one function table".into()));
    }
    if h_max == 0 || h_max > MAX_J_INDEX {
        return Err(Error::Resource {
            what: format!("2^{h_max} index sets"),
            limit: 1 << MAX_J_INDEX,
        });
    }
    if let Some(f) = funcs.iter().find(|f| f.len() < h_max) {
        return Err(Error::ParameterRange(format!(
            "function table has {} entries, need {h_max}",
            f.len()
        )));
    }
    // Per mask and table: the combined value, or None on overflow.
    let masks = 1u32..(1u32 << h_max);
    let combined: Vec<Vec<Option<u64>>> = masks
        .clone()
        .map(|mask| {
            funcs
                .iter()
                .map(|f| {
                    let mut acc = if mode == Mode::Additive { 0u64 } else { 1u64 };
                    for (i, &v) in f.iter().take(h_max).enumerate() {
                        if mask & (1 << i) != 0 {
                            acc = combine(mode, acc, v)?;
                        }
                    }
                    Some(acc)
                })
                .collect()
        })
        .collect();
    let mut undetermined = 0u64;
    for anchor in 1..=a_max {
        for (mi, mask) in masks.clone().enumerate() {
            let mut all = true;
            let mut unknown = false;
            for c in &combined[mi] {
                let v = c.and_then(|c| combine(mode, anchor, c));
                match v.and_then(|v| a.member(v)) {
                    Some(true) => {}
                    Some(false) => {
                        all = false;
                        break;
                    }
                    None => unknown = true,
                }
            }
            if all && !unknown {
                let indices = (0..h_max).filter(|i| mask & (1 << i) != 0).map(|i| i as u64 + 1).collect();
                return Ok(Verdict::proved(Certificate::JAnchor { mode, a: anchor, indices }));
            }
            if all && unknown {
                undetermined += 1;
            }
        }
    }
    let mut bound = format!("no anchor a <= {a_max} with an index set inside {{1..{h_max}}}");
    if undetermined > 0 {
        bound.push_str(&format!("; {undetermined} combinations undetermined"));
    }
    Ok(Verdict::evidence(Direction::Against, bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev() -> Evaluator {
        Evaluator::new(2000).unwrap()
    }

    #[test]
    fn thick_examples() {
        let e = ev();
        let n = e.parse_eval("N").unwrap();
        assert_eq!(
            a_thick_check(&n, 10, 2000).unwrap(),
            Verdict::proved(Certificate::Interval { start: 0, length: 10 })
        );
        let m2 = e.parse_eval("mult(2)").unwrap();
        assert!(a_thick_check(&m2, 2, 2000).unwrap().is_refuted());
        let t = e.parse_eval("construct(thick_nonmaxstar,8)").unwrap();
        assert!(a_thick_check(&t, 6, 2000).unwrap().is_proved());
    }

    #[test]
    fn pcws_examples() {
        let e = ev();
        let odd = e.parse_eval("odd").unwrap();
        match a_pcws_check(&odd, 1, 50, 2000).unwrap() {
            Verdict::Proved { certificate: Certificate::ShiftedInterval { shifts, start, .. } } => {
                assert_eq!(shifts, vec![0, 1]);
                assert_eq!(start, 0);
            }
            v => panic!("{v:?}"),
        }
        let n = e.parse_eval("N").unwrap();
        assert!(a_pcws_check(&n, 0, 5, 2000).unwrap().is_proved());
    }

    #[test]
    fn ip_examples() {
        let e = ev();
        let m3 = e.parse_eval("mult(3)").unwrap();
        assert_eq!(
            ip_search(&m3, 2, 2000, Mode::Additive).unwrap(),
            Verdict::proved(Certificate::Sequence { mode: Mode::Additive, terms: vec![3, 6] })
        );
        let eg = e.parse_eval("construct(exgamma,20)").unwrap();
        assert!(ip_search(&eg, 2, 2000, Mode::Additive).unwrap().is_bounded());
        let fp = e.parse_eval("construct(fp_primes,odd,4)").unwrap();
        assert!(ip_search(&fp, 3, 2000, Mode::Multiplicative).unwrap().is_proved());
    }

    #[test]
    fn ip_star_examples() {
        let e = ev();
        let c3 = e.parse_eval("compl(mult(3))").unwrap();
        assert!(ip_star_check(&c3, 2, 2000, Mode::Additive).unwrap().is_refuted());
        let n = e.parse_eval("N").unwrap();
        assert_eq!(ip_star_check(&n, 2, 2000, Mode::Additive).unwrap().direction(), Some(Direction::For));
        let m2 = e.parse_eval("mult(2)").unwrap();
        assert!(ip_star_check(&m2, 1, 2000, Mode::Additive).unwrap().is_refuted());
        assert!(ip_star_check(&m2, 2, 2000, Mode::Additive).unwrap().is_bounded());
        let eg = e.parse_eval("construct(exgamma,20)").unwrap();
        assert!(matches!(ip_star_check(&eg, 2, 2000, Mode::Additive), Err(Error::Inapplicable(_))));
    }

    #[test]
    fn j_examples() {
        let e = ev();
        let m2 = e.parse_eval("mult(2)").unwrap();
        assert_eq!(
            j_check(&m2, &[vec![2], vec![4]], 10, 1, Mode::Additive).unwrap(),
            Verdict::proved(Certificate::JAnchor { mode: Mode::Additive, a: 2, indices: vec![1] })
        );
        let n = e.parse_eval("N").unwrap();
        assert_eq!(
            j_check(&n, &[vec![3, 5]], 10, 2, Mode::Multiplicative).unwrap(),
            Verdict::proved(Certificate::JAnchor { mode: Mode::Multiplicative, a: 1, indices: vec![1] })
        );
    }
}
