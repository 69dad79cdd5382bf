//! Exact audit of up-closed and down-closed families in the divisor
//! poset on `{1, ..., n}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest universe accepted.
pub const MAX_ATLAS_N: u64 = 20;

/// Universes up to this size are audited over every subset by default.
pub const EXHAUSTIVE_DEFAULT: u64 = 14;

/// Subsets audited when a universe is sampled.
pub const SAMPLE_SIZE: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasReport {
    pub n: u64,
    /// Up-closed subsets, enumerated from antichains.
    pub up_closed: u64,
    /// Up-closed subsets counted by filtering all `2^n` subsets.
    pub up_closed_brute_force: u64,
    /// Down-closed subsets, counted by filtering all `2^n` subsets.
    pub down_closed: u64,
    /// Complements of the up-closed sets are exactly the down-closed sets.
    pub complement_bijection: bool,
    pub exhaustive: bool,
    pub subsets_checked: u64,
    /// `A` lies in no proper down-closed set iff `A↓` is the universe.
    pub max_violations: u64,
    /// `A` contains a nonempty up-closed set iff `A ⊇ a↑` for some `a`.
    pub maxstar_violations: u64,
    /// MAX*(A) iff not MAX(complement of A).
    pub duality_violations: u64,
}

impl AtlasReport {
    pub fn passed(&self) -> bool {
        self.up_closed == self.up_closed_brute_force
            && self.up_closed == self.down_closed
            && self.complement_bijection
            && self.max_violations == 0
            && self.maxstar_violations == 0
            && self.duality_violations == 0
    }
}

struct Poset {
    n: u32,
    full: u32,
    /// `up[a]`: multiples of `a` in the universe, as a mask (bit `a-1`).
    up: Vec<u32>,
    /// `down[a]`: divisors of `a`.
    down: Vec<u32>,
}

impl Poset {
    fn new(n: u32) -> Self {
        let mut up = vec![0u32; n as usize + 1];
        let mut down = vec![0u32; n as usize + 1];
        for a in 1..=n {
            for m in (a..=n).step_by(a as usize) {
                up[a as usize] |= 1 << (m - 1);
                down[m as usize] |= 1 << (a - 1);
            }
        }
        Poset { n, full: if n == 32 { u32::MAX } else { (1u32 << n) - 1 }, up, down }
    }

    fn members(&self, s: u32) -> impl Iterator<Item = u32> + '_ {
        (1..=self.n).filter(move |a| s & (1 << (a - 1)) != 0)
    }

    fn up_closure(&self, s: u32) -> u32 {
        self.members(s).fold(0, |acc, a| acc | self.up[a as usize])
    }

    fn down_closure(&self, s: u32) -> u32 {
        self.members(s).fold(0, |acc, a| acc | self.down[a as usize])
    }

    fn is_up_closed(&self, s: u32) -> bool {
        self.members(s).all(|a| self.up[a as usize] & !s == 0)
    }

    fn is_down_closed(&self, s: u32) -> bool {
        self.members(s).all(|a| self.down[a as usize] & !s == 0)
    }

    /// Up-closed sets generated by antichains, built by adding elements in
    /// increasing order with no divisibility between them.
    fn up_closed_from_antichains(&self) -> Vec<u32> {
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        self.antichains(1, &mut chosen, &mut out);
        out.sort_unstable();
        out
    }

    fn antichains(&self, from: u32, chosen: &mut Vec<u32>, out: &mut Vec<u32>) {
        let mask = chosen.iter().fold(0u32, |m, &a| m | 1 << (a - 1));
        out.push(self.up_closure(mask));
        for a in from..=self.n {
            // Elements are added in increasing order, so only `c | a` can occur.
            if chosen.iter().all(|&c| a % c != 0) {
                chosen.push(a);
                self.antichains(a + 1, chosen, out);
                chosen.pop();
            }
        }
    }
}

/// Deterministic subset sample: a fixed 64-bit linear congruential stream.
fn sample_masks(n: u32, count: usize) -> Vec<u32> {
    let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
    let full = (1u64 << n) - 1;
    let mut out = vec![0, full as u32];
    while out.len() < count {
        state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
        out.push(((state >> 32) & full) as u32);
    }
    out
}

/// Audits the finite MAX and MAX* characterizations and their duality on
/// the divisor poset of `{1, ..., n}`. With `exhaustive` (the default for
/// `n <= 14`) every subset is checked, otherwise a fixed sample.
pub fn poset_atlas(n: u64, exhaustive: Option<bool>) -> Result<AtlasReport> {
    if n == 0 || n > MAX_ATLAS_N {
        return Err(Error::ParameterRange(format!("atlas universe must be in [1, {MAX_ATLAS_N}], got {n}")));
    }
    let exhaustive = exhaustive.unwrap_or(n <= EXHAUSTIVE_DEFAULT);
    let p = Poset::new(n as u32);
    let up_sets = p.up_closed_from_antichains();
    let mut up_bf = Vec::new();
    let mut down_bf = Vec::new();
    for s in 0..=p.full {
        if p.is_up_closed(s) {
            up_bf.push(s);
        }
        if p.is_down_closed(s) {
            down_bf.push(s);
        }
    }
    let mut complements: Vec<u32> = up_sets.iter().map(|&u| p.full & !u).collect();
    complements.sort_unstable();
    let complement_bijection = complements == down_bf;

    let proper_down: Vec<u32> = down_bf.iter().copied().filter(|&d| d != p.full).collect();
    let nonempty_up: Vec<u32> = up_sets.iter().copied().filter(|&u| u != 0).collect();
    let is_max = |s: u32| p.down_closure(s) == p.full;
    let is_maxstar = |s: u32| (1..=p.n).any(|a| p.up[a as usize] & !s == 0);

    let subsets: Vec<u32> = if exhaustive { (0..=p.full).collect() } else { sample_masks(p.n, SAMPLE_SIZE) };
    let (mut max_v, mut maxstar_v, mut dual_v) = (0, 0, 0);
    for &s in &subsets {
        let in_no_proper_down = !proper_down.iter().any(|&d| s & !d == 0);
        if in_no_proper_down != is_max(s) {
            max_v += 1;
        }
        let contains_up = nonempty_up.iter().any(|&u| u & !s == 0);
        if contains_up != is_maxstar(s) {
            maxstar_v += 1;
        }
        if is_maxstar(s) == is_max(p.full & !s) {
            dual_v += 1;
        }
    }
    Ok(AtlasReport {
        n,
        up_closed: up_sets.len() as u64,
        up_closed_brute_force: up_bf.len() as u64,
        down_closed: down_bf.len() as u64,
        complement_bijection,
        exhaustive,
        subsets_checked: subsets.len() as u64,
        max_violations: max_v,
        maxstar_violations: maxstar_v,
        duality_violations: dual_v,
    })
}
