//! Strictly decreasing chains of sets under finite embeddability.
//!
//! Level 0 is all of ℕ. Level `n + 1` is built from level `n` by keeping
//! its second-least element and then repeatedly adding the least later
//! element such that none of the blocked pairs `F_0, ..., F_n` and the
//! pair of the two least elements of level `n` has a dilation inside the
//! set built so far. Every level is generated lazily, so deeper levels
//! pull as many elements from shallower ones as they need.

use serde::{Deserialize, Serialize};

use super::witness::{fe_witness_finite, FeOutcome, FeRefutation};
use crate::error::{Error, Result};
use crate::finite_set::FiniteSet;

/// Cap on candidates examined across all levels.
pub const MAX_CHAIN_CANDIDATES: u64 = 2_000_000;

/// The `i`-th pair (0-based) in colexicographic order:
/// `{1,2}, {1,3}, {2,3}, {1,4}, {2,4}, {3,4}, ...`.
pub fn colex_pair(i: u64) -> (u64, u64) {
    // Largest b with (b-1)(b-2)/2 <= i, b >= 2.
    let mut b = 2u64;
    while b * (b - 1) / 2 <= i {
        b += 1;
    }
    let start = (b - 1) * (b - 2) / 2;
    (i - start + 1, b)
}

/// One blocked set refuted against a level prefix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRefutation {
    /// The level whose prefix is the target.
    pub level: usize,
    pub blocked: FiniteSet,
    pub target: FiniteSet,
    /// Largest `k` that could possibly work: `max(target) / min(blocked)`.
    pub max_k: u64,
}

impl ChainRefutation {
    /// Re-decides the refutation by trying every `k` up to `max_k`.
    pub fn verify(&self) -> bool {
        (1..=self.max_k).all(|k| {
            !self
                .blocked
                .iter()
                .all(|x| x.checked_mul(k).is_some_and(|y| self.target.contains(y)))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chain {
    /// Prefixes of `A_0, ..., A_depth`, each with `per_level` elements.
    pub levels: Vec<FiniteSet>,
    /// `pairs[n]` is `F_n`, blocked from level `n + 1` on.
    pub pairs: Vec<(u64, u64)>,
    pub refutations: Vec<ChainRefutation>,
}

impl Chain {
    /// Checks strict nesting of the prefixes and re-verifies every refutation.
    pub fn verify(&self) -> bool {
        let nested = self.levels.windows(2).all(|w| {
            // Each lower level is a subset of the one above, restricted to the
            // part of the upper level that has been listed.
            let upper_max = w[0].max().unwrap_or(0);
            w[1].iter().filter(|&x| x <= upper_max).all(|x| w[0].contains(x))
                && w[1] != w[0]
                && w[1].min() > w[0].min()
        });
        nested && self.refutations.iter().all(ChainRefutation::verify)
    }
}

struct Level {
    elements: Vec<u64>,
    /// Index into the parent of the next candidate to examine.
    cursor: usize,
    /// Blocked sets for this level: `F_0..F_{n-1}` and the parent's two least elements.
    blocked: Vec<FiniteSet>,
}

struct Builder {
    levels: Vec<Level>,
    examined: u64,
}

impl Builder {
    fn element(&mut self, level: usize, idx: usize) -> Result<u64> {
        if level == 0 {
            return Ok(idx as u64 + 1);
        }
        while self.levels[level - 1].elements.len() <= idx {
            self.extend(level)?;
        }
        Ok(self.levels[level - 1].elements[idx])
    }

    /// Initializes level `level` (1-based; `levels[level - 1]`).
    fn open(&mut self, level: usize, pairs: &[(u64, u64)]) -> Result<()> {
        let a0 = self.element(level - 1, 0)?;
        let a1 = self.element(level - 1, 1)?;
        let mut blocked: Vec<FiniteSet> = pairs[..level]
            .iter()
            .map(|&(x, y)| FiniteSet::from_sorted(vec![x, y]))
            .collect();
        let own = FiniteSet::from_sorted(vec![a0, a1]);
        if !blocked.contains(&own) {
            blocked.push(own);
        }
        self.levels.push(Level { elements: vec![a1], cursor: 2, blocked });
        Ok(())
    }

    fn extend(&mut self, level: usize) -> Result<()> {
        loop {
            let cursor = self.levels[level - 1].cursor;
            let cand = self.element(level - 1, cursor)?;
            self.levels[level - 1].cursor += 1;
            self.examined += 1;
            if self.examined > MAX_CHAIN_CANDIDATES {
                return Err(Error::resource("chain candidates examined", MAX_CHAIN_CANDIDATES));
            }
            let lv = &self.levels[level - 1];
            let mut target = lv.elements.clone();
            target.push(cand);
            let mut ok = true;
            for f in &lv.blocked {
                if matches!(fe_witness_finite(f, &target)?, FeOutcome::Embedded(_)) {
                    ok = false;
                    break;
                }
            }
            if ok {
                self.levels[level - 1].elements.push(cand);
                return Ok(());
            }
        }
    }
}

/// Builds prefixes of the chain `A_0 ⊋ A_1 ⊋ ... ⊋ A_depth`, each with
/// `per_level` elements, with the refutation of every blocked set against
/// every level prefix that must avoid it.
pub fn decreasing_chain(depth: usize, per_level: usize) -> Result<Chain> {
    if per_level < 3 {
        return Err(Error::ParameterRange("per_level must be at least 3".into()));
    }
    let pairs: Vec<(u64, u64)> = (0..depth as u64).map(colex_pair).collect();
    let mut b = Builder { levels: Vec::with_capacity(depth), examined: 0 };
    for level in 1..=depth {
        b.open(level, &pairs)?;
    }
    let mut levels = vec![FiniteSet::from_sorted((1..=per_level as u64).collect())];
    let mut refutations = Vec::new();
    for level in 1..=depth {
        for i in 0..per_level {
            b.element(level, i)?;
        }
        let prefix = b.levels[level - 1].elements[..per_level].to_vec();
        for f in &b.levels[level - 1].blocked {
            match fe_witness_finite(f, &prefix)? {
                FeOutcome::NotEmbedded(FeRefutation::FiniteTarget { max_k, .. }) => {
                    refutations.push(ChainRefutation {
                        level,
                        blocked: f.clone(),
                        target: FiniteSet::from_sorted(prefix.clone()),
                        max_k,
                    });
                }
                other => {
                    return Err(Error::Input(format!(
                        "blocked set {f} embeds into level {level}: {other:?}"
                    )))
                }
            }
        }
        levels.push(FiniteSet::from_sorted(prefix));
    }
    Ok(Chain { levels, pairs, refutations })
}
