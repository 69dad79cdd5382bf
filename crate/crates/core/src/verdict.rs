//! Three-valued results with machine-checkable certificates.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::finite_set::FiniteSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    For,
    Against,
}

/// Additive (sums, shifts) or multiplicative (products, dilations).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Additive,
    Multiplicative,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `k · prefix ⊆ B`.
    Dilation { k: u64, prefix: FiniteSet },
    /// `{start+1, ..., start+length} ⊆ A`.
    Interval { start: u64, length: u64 },
    /// The run `{start+1, ..., start+length}` lies in the union of `A - t` over `shifts`.
    ShiftedInterval { shifts: Vec<u64>, start: u64, length: u64 },
    /// `k · {1, ..., length}` lies in the union of `A / t` over `divisors`.
    QuotientDilation { divisors: Vec<u64>, k: u64, length: u64 },
    /// Generators whose nonempty finite sums (or products) all lie in the set.
    Sequence { mode: Mode, terms: Vec<u64> },
    /// For each `n <= up_to`, a member divisible by `n`.
    DivisorTable { up_to: u64, witnesses: Vec<(u64, u64)> },
    /// Every multiple of `a` up to `checked_up_to` is a member.
    Multiples { a: u64, checked_up_to: u64 },
    /// For each candidate `a`, a multiple of `a` that is not a member.
    Counterexamples { table: Vec<(u64, u64)> },
    /// A pairwise coprime set; `strength` is its size.
    Antichain { elements: FiniteSet, strength: usize },
    /// Anchor `a` and index set for a J-set witness.
    JAnchor { mode: Mode, a: u64, indices: Vec<u64> },
    /// The set has no multiple of `m`, while `m` belongs to the source.
    Residue { m: u64 },
    /// The target is finite with maximum `bound`; every `k` up to `max_k` fails.
    FiniteTarget { bound: u64, max_k: u64 },
    /// Every `k <= k_max` fails.
    Exhausted { k_max: u64 },
    /// `Ω(pair.0) - Ω(pair.1) = delta` is not a difference of two levels the target can occupy.
    Level { pair: (u64, u64), levels: (u32, u32), delta: i64, allowed: Vec<i64> },
    /// Smallest positive solution of `x ≡ residues[i] (mod moduli[i])`.
    Crt { moduli: Vec<u64>, residues: Vec<u64>, x: u64 },
    /// The complement contains the finite sums (or products) of `terms`.
    ComplementSequence { mode: Mode, terms: Vec<u64> },
    /// Every examined subset embeds; `hardest` needed the largest factor.
    SubsetDilations { subsets: u64, max_k: u64, hardest: FiniteSet },
    /// For each member `a` examined, a `k` with `a·k` in the target.
    DivisorClosure { pairs: Vec<(u64, u64)> },
    /// An exact periodic description shows runs never exceed `longest`.
    RunBound { longest: u64, offset: u64, period: u64 },
    /// A member with no multiple in the target's divisor closure.
    NotDivisor { element: u64 },
    /// The set has no members.
    EmptySet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Proved { certificate: Certificate },
    Refuted { certificate: Certificate },
    /// Searched up to the stated bounds without settling the claim.
    /// `evidence` optionally records what the search found.
    BoundedEvidence {
        direction: Direction,
        bound: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        evidence: Option<Certificate>,
    },
}

impl Verdict {
    pub fn proved(certificate: Certificate) -> Self {
        Verdict::Proved { certificate }
    }

    pub fn refuted(certificate: Certificate) -> Self {
        Verdict::Refuted { certificate }
    }

    pub fn evidence(direction: Direction, bound: impl Into<String>) -> Self {
        Verdict::BoundedEvidence { direction, bound: bound.into(), evidence: None }
    }

    pub fn evidence_with(direction: Direction, bound: impl Into<String>, cert: Certificate) -> Self {
        Verdict::BoundedEvidence { direction, bound: bound.into(), evidence: Some(cert) }
    }

    pub fn is_proved(&self) -> bool {
        matches!(self, Verdict::Proved { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted { .. })
    }

    pub fn is_bounded(&self) -> bool {
        matches!(self, Verdict::BoundedEvidence { .. })
    }

    pub fn direction(&self) -> Option<Direction> {
        match self {
            Verdict::BoundedEvidence { direction, .. } => Some(*direction),
            _ => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Proved { certificate } | Verdict::Refuted { certificate } => Some(certificate),
            Verdict::BoundedEvidence { evidence, .. } => evidence.as_ref(),
        }
    }

    /// 0 proved, 1 refuted, 2 bounded evidence.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Proved { .. } => 0,
            Verdict::Refuted { .. } => 1,
            Verdict::BoundedEvidence { .. } => 2,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Proved { .. } => "proved",
            Verdict::Refuted { .. } => "refuted",
            Verdict::BoundedEvidence { direction: Direction::For, .. } => "bounded evidence (for)",
            Verdict::BoundedEvidence { direction: Direction::Against, .. } => "bounded evidence (against)",
        }
    }
}

fn pairs(v: &[(u64, u64)], sep: &str) -> String {
    let shown: Vec<String> = v.iter().take(12).map(|(a, b)| format!("{a}{sep}{b}")).collect();
    let more = if v.len() > 12 { format!(", ... ({} total)", v.len()) } else { String::new() };
    format!("{}{more}", shown.join(", "))
}

fn list(v: &[u64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Dilation { k, prefix } => write!(f, "k={k} maps {prefix} into the target"),
            Certificate::Interval { start, length } => {
                write!(f, "run {}..{} (m={start})", start + 1, start + length)
            }
            Certificate::ShiftedInterval { shifts, start, length } => write!(
                f,
                "run {}..{} in the union of shifts {{{}}}",
                start + 1,
                start + length,
                list(shifts)
            ),
            Certificate::QuotientDilation { divisors, k, length } => write!(
                f,
                "k={k} maps {{1..{length}}} into the union of quotients by {{{}}}",
                list(divisors)
            ),
            Certificate::Sequence { mode, terms } => {
                let op = if *mode == Mode::Additive { "sums" } else { "products" };
                write!(f, "all finite {op} of ({}) are members", list(terms))
            }
            Certificate::DivisorTable { up_to, witnesses } => {
                write!(f, "every n <= {up_to} divides a member: {}", pairs(witnesses, " | "))
            }
            Certificate::Multiples { a, checked_up_to } => {
                write!(f, "every multiple of {a} up to {checked_up_to} is a member")
            }
            Certificate::Counterexamples { table } => {
                write!(f, "non-member multiples: {}", pairs(table, " -> "))
            }
            Certificate::Antichain { elements, strength } => {
                write!(f, "strong antichain {elements} (strength {strength})")
            }
            Certificate::JAnchor { a, indices, .. } => write!(f, "anchor a={a}, indices {{{}}}", list(indices)),
            Certificate::Residue { m } => write!(f, "residue: the target has no multiple of {m}"),
            Certificate::FiniteTarget { bound, max_k } => {
                write!(f, "finite target (max {bound}); every k <= {max_k} fails")
            }
            Certificate::Exhausted { k_max } => write!(f, "no k <= {k_max} works"),
            Certificate::Level { pair, levels, delta, allowed } => write!(
                f,
                "levels of {} and {} are {} and {}; difference {delta} not in {{{}}}",
                pair.0,
                pair.1,
                levels.0,
                levels.1,
                allowed.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
            ),
            Certificate::Crt { moduli, residues, x } => write!(
                f,
                "x={x} solves x ≡ ({}) mod ({})",
                list(residues),
                list(moduli)
            ),
            Certificate::ComplementSequence { mode, terms } => {
                let op = if *mode == Mode::Additive { "sums" } else { "products" };
                write!(f, "the complement contains all finite {op} of ({})", list(terms))
            }
            Certificate::SubsetDilations { subsets, max_k, hardest } => write!(
                f,
                "all {subsets} subsets embed; largest factor k={max_k} for {hardest}"
            ),
            Certificate::DivisorClosure { pairs: p } => write!(f, "a·k in target: {}", pairs(p, " * ")),
            Certificate::RunBound { longest, offset, period } => write!(
                f,
                "eventually periodic (offset {offset}, period {period}); longest run {longest}"
            ),
            Certificate::NotDivisor { element } => {
                write!(f, "{element} divides no member of the target")
            }
            Certificate::EmptySet => write!(f, "the set is empty"),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Proved { certificate } => write!(f, "proved: {certificate}"),
            Verdict::Refuted { certificate } => write!(f, "refuted: {certificate}"),
            Verdict::BoundedEvidence { bound, evidence, .. } => {
                write!(f, "{} [{bound}]", self.label())?;
                if let Some(c) = evidence {
                    write!(f, "; {c}")?;
                }
                Ok(())
            }
        }
    }
}
