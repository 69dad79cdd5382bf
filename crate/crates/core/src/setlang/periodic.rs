//! Eventually periodic sets, used as sound lower/upper bounds on a set.
//!
//! A value with offset `t` and period `p` stores explicit membership for
//! `1..=t+p`; beyond that, `n` behaves like the unique `m` in `(t, t+p]`
//! with `m ≡ n (mod p)`.

use crate::arith::{gcd, lcm};

/// Largest `t + p` a periodic value may use; larger results collapse to
/// the trivial bound.
pub const MAX_SPAN: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Periodic {
    t: u64,
    p: u64,
    bits: Vec<bool>,
}

impl Periodic {
    pub fn empty() -> Self {
        Periodic { t: 0, p: 1, bits: vec![false] }
    }

    pub fn all() -> Self {
        Periodic { t: 0, p: 1, bits: vec![true] }
    }

    /// Tabulates `f` on `1..=t+p`; `None` if the span exceeds the cap.
    pub fn tabulate(t: u64, p: u64, f: impl Fn(u64) -> bool) -> Option<Self> {
        let span = t.checked_add(p)?;
        if p == 0 || span > MAX_SPAN {
            return None;
        }
        Some(Periodic { t, p, bits: (1..=span).map(f).collect() })
    }

    /// A finite set, given sorted.
    pub fn finite(members: &[u64]) -> Option<Self> {
        let t = members.last().copied().unwrap_or(0);
        Self::tabulate(t, 1, |n| members.binary_search(&n).is_ok())
    }

    /// `members ∪ (h, ∞)`.
    pub fn finite_then_all(members: &[u64], h: u64) -> Option<Self> {
        Self::tabulate(h, 1, |n| n > h || members.binary_search(&n).is_ok())
    }

    pub fn offset(&self) -> u64 {
        self.t
    }

    pub fn period(&self) -> u64 {
        self.p
    }

    pub fn contains(&self, n: u64) -> bool {
        self.contains_wide(n as u128)
    }

    fn contains_wide(&self, n: u128) -> bool {
        debug_assert!(n >= 1);
        let (t, p) = (self.t as u128, self.p as u128);
        if n <= t + p {
            self.bits[(n - 1) as usize]
        } else {
            self.bits[(t + (n - t - 1) % p) as usize]
        }
    }

    fn periodic_part(&self) -> impl Iterator<Item = u64> + '_ {
        (self.t + 1..=self.t + self.p).filter(|&n| self.contains(n))
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    /// True when the set is infinite.
    pub fn is_infinite(&self) -> bool {
        self.periodic_part().next().is_some()
    }

    fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Option<Self> {
        let t = self.t.max(other.t);
        let p = lcm(self.p, other.p)?;
        Self::tabulate(t, p, |n| op(self.contains(n), other.contains(n)))
    }

    pub fn union(&self, other: &Self) -> Option<Self> {
        self.combine(other, |a, b| a || b)
    }

    pub fn inter(&self, other: &Self) -> Option<Self> {
        self.combine(other, |a, b| a && b)
    }

    pub fn compl(&self) -> Self {
        Periodic { t: self.t, p: self.p, bits: self.bits.iter().map(|b| !b).collect() }
    }

    /// `k · self`.
    pub fn dilate(&self, k: u64) -> Option<Self> {
        let t = self.t.checked_mul(k)?;
        let p = self.p.checked_mul(k)?;
        Self::tabulate(t, p, |n| n % k == 0 && self.contains(n / k))
    }

    /// `self / m = {n : m·n ∈ self}`.
    pub fn quot(&self, m: u64) -> Option<Self> {
        Self::tabulate(self.t / m, self.p, |n| self.contains_wide(n as u128 * m as u128))
    }

    /// `self − s = {n : n + s ∈ self}`.
    pub fn shift(&self, s: u64) -> Option<Self> {
        Self::tabulate(self.t.saturating_sub(s), self.p, |n| {
            self.contains_wide(n as u128 + s as u128)
        })
    }

    /// Divisor closure. Always eventually periodic with the same offset and period.
    pub fn down(&self) -> Option<Self> {
        let residues: Vec<u64> = self.periodic_part().collect();
        let p = self.p;
        // For each divisor g of p, whether some periodic member is ≡ 0 mod g.
        // A member r + jp is divisible by n iff gcd(n, p) divides r.
        let divs: Vec<u64> = (1..=p).filter(|g| p.is_multiple_of(*g)).collect();
        let hit: Vec<(u64, bool)> =
            divs.iter().map(|&g| (g, residues.iter().any(|r| r % g == 0))).collect();
        let lookup = |g: u64| hit.iter().find(|&&(d, _)| d == g).is_some_and(|&(_, b)| b);
        let mut small_divisor = vec![false; self.t as usize + 1];
        for a in (1..=self.t).filter(|&a| self.contains(a)) {
            let mut d = 1;
            while d * d <= a {
                if a % d == 0 {
                    small_divisor[d as usize] = true;
                    small_divisor[(a / d) as usize] = true;
                }
                d += 1;
            }
        }
        Self::tabulate(self.t, p, |n| {
            lookup(gcd(n, p)) || (n <= self.t && small_divisor[n as usize])
        })
    }

    /// Multiple closure, as `(lower, upper)` bounds; both are equal when the
    /// closure is determined by the minimal elements below the span.
    pub fn up(&self) -> (Self, Self) {
        let span = self.t + self.p;
        let mut minimal: Vec<u64> = Vec::new();
        let mut period = 1u64;
        for n in 1..=span {
            if self.contains(n) && !minimal.iter().any(|&m| n % m == 0) {
                minimal.push(n);
                match lcm(period, n) {
                    Some(l) if l <= MAX_SPAN => period = l,
                    _ => return (Self::empty(), Self::all()),
                }
            }
        }
        let closure = match Self::tabulate(0, period, |n| minimal.iter().any(|&m| n % m == 0)) {
            Some(c) => c,
            None => return (Self::empty(), Self::all()),
        };
        match closure.contains_set(self) {
            Some(true) => (closure.clone(), closure),
            _ => (closure, Self::all()),
        }
    }

    /// Whether `other ⊆ self`; `None` if the check exceeds the cap.
    pub fn contains_set(&self, other: &Self) -> Option<bool> {
        let t = self.t.max(other.t);
        let p = lcm(self.p, other.p)?;
        if t + p > MAX_SPAN {
            return None;
        }
        Some((1..=t + p).all(|n| !other.contains(n) || self.contains(n)))
    }

    pub fn same_set(&self, other: &Self) -> bool {
        self.contains_set(other) == Some(true) && other.contains_set(self) == Some(true)
    }

    /// Whether the set has no multiple of `m`.
    pub fn avoids_multiples_of(&self, m: u64) -> Option<bool> {
        let limit = self.t.checked_add(lcm(self.p, m)?)?;
        if limit / m > MAX_SPAN {
            return None;
        }
        Some((1..=limit / m).all(|j| !self.contains(j * m)))
    }

    /// Longest run of consecutive members; `None` means unbounded.
    pub fn longest_run(&self) -> Option<u64> {
        if self.periodic_part().count() as u64 == self.p {
            return None;
        }
        let mut best = 0;
        let mut cur = 0;
        for n in 1..=self.t + 2 * self.p {
            if self.contains(n) {
                cur += 1;
                best = best.max(cur);
            } else {
                cur = 0;
            }
        }
        Some(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(p: &Periodic, upto: u64) -> Vec<u64> {
        (1..=upto).filter(|&n| p.contains(n)).collect()
    }

    fn mult(k: u64) -> Periodic {
        Periodic::tabulate(0, k, |n| n % k == 0).unwrap()
    }

    fn ap(a: u64, d: u64) -> Periodic {
        Periodic::tabulate(a - 1, d, |n| n >= a && (n - a).is_multiple_of(d)).unwrap()
    }

    #[test]
    fn operations_match_pointwise_definitions() {
        let a = ap(3, 4).union(&Periodic::finite(&[2, 5]).unwrap()).unwrap();
        let b = mult(6);
        let h = 400;
        for n in 1..=h {
            assert_eq!(a.union(&b).unwrap().contains(n), a.contains(n) || b.contains(n));
            assert_eq!(a.inter(&b).unwrap().contains(n), a.contains(n) && b.contains(n));
            assert_eq!(a.compl().contains(n), !a.contains(n));
            assert_eq!(a.dilate(3).unwrap().contains(n), n % 3 == 0 && a.contains(n / 3));
            assert_eq!(a.quot(3).unwrap().contains(n), a.contains(3 * n));
            assert_eq!(a.shift(7).unwrap().contains(n), a.contains(n + 7));
            let down = (1..=4 * h).any(|m| m % n == 0 && a.contains(m));
            assert_eq!(a.down().unwrap().contains(n), down, "down at {n}");
        }
    }

    #[test]
    fn up_closure_of_finite_set_is_exact() {
        let f = Periodic::finite(&[3, 5, 7, 11]).unwrap();
        let (lo, hi) = f.up();
        assert!(lo.same_set(&hi));
        assert_eq!(
            brute(&lo, 30),
            (1..=30u64).filter(|n| [3, 5, 7, 11].iter().any(|c| n % c == 0)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn runs_and_avoidance() {
        assert_eq!(mult(2).longest_run(), Some(1));
        assert_eq!(Periodic::all().longest_run(), None);
        assert_eq!(ap(1, 2).avoids_multiples_of(2), Some(true));
        assert_eq!(ap(1, 2).avoids_multiples_of(3), Some(false));
        assert_eq!(ap(1, 6).avoids_multiples_of(6), Some(true));
    }
}
