//! Evaluated sets and the evaluator.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::ast::{SeqSpec, SetExpr, MAX_SEQUENCE_LEN};
use super::node::{with_first_member, Ctx, Kind, Node, NodeData, UNBOUNDED};
use super::parser::parse;
use super::periodic::Periodic;
use crate::arith::Sieve;
use crate::constructions;
use crate::error::{Error, Result};
use crate::finite_set::FiniteSet;

/// Largest horizon an evaluator accepts.
pub const MAX_HORIZON: u64 = crate::arith::MAX_SIEVE_LIMIT;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    /// Membership is decided for every natural number.
    Exact,
    /// Membership is decided only up to the exact horizon (plus known members).
    Prefix,
}

/// A set evaluated at a horizon `H`: membership queries plus the sorted
/// list of known members in `[1, H]`.
#[derive(Clone)]
pub struct LazySet {
    inner: Arc<Inner>,
}

struct Inner {
    expr: SetExpr,
    node: Node,
    horizon: u64,
    elements: Vec<u64>,
    sieve: Arc<Sieve>,
}

impl std::fmt::Debug for LazySet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LazySet")
            .field("expr", &self.inner.expr.to_string())
            .field("horizon", &self.inner.horizon)
            .field("exact_horizon", &self.exact_horizon())
            .finish()
    }
}

impl LazySet {
    pub fn expr(&self) -> &SetExpr {
        &self.inner.expr
    }

    pub fn horizon(&self) -> u64 {
        self.inner.horizon
    }

    pub fn sieve(&self) -> &Arc<Sieve> {
        &self.inner.sieve
    }

    /// Every `n` up to this value has a decided membership. `u64::MAX`
    /// means unbounded.
    pub fn exact_horizon(&self) -> u64 {
        self.inner.node.meta.exact
    }

    /// Up to here the element list is complete.
    pub fn enum_horizon(&self) -> u64 {
        self.inner.horizon.min(self.exact_horizon())
    }

    pub fn exactness(&self) -> Exactness {
        if self.exact_horizon() == UNBOUNDED {
            Exactness::Exact
        } else {
            Exactness::Prefix
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exactness() == Exactness::Exact
    }

    /// Known upper bound on the elements, when the set is provably finite.
    pub fn sup(&self) -> Option<u64> {
        self.inner.node.meta.sup
    }

    /// Finite and completely known.
    pub fn is_finite_exact(&self) -> bool {
        self.is_exact() && self.sup().is_some()
    }

    /// Known members in `[1, H]`, sorted.
    pub fn elements(&self) -> &[u64] {
        &self.inner.elements
    }

    /// Known members in `[1, x]`.
    pub fn elements_upto(&self, x: u64) -> &[u64] {
        let e = &self.inner.elements;
        &e[..e.partition_point(|&v| v <= x)]
    }

    pub fn first_elements(&self, p: usize) -> FiniteSet {
        FiniteSet::from_sorted(self.inner.elements.iter().take(p).copied().collect())
    }

    fn ctx(&self) -> Ctx<'_> {
        Ctx { sieve: &self.inner.sieve, search: self.inner.horizon }
    }

    /// `Some(b)` when membership of `n` is determined, `None` otherwise.
    pub fn member(&self, n: u64) -> Option<bool> {
        if n == 0 {
            return Some(false);
        }
        if n <= self.inner.horizon {
            let found = self.inner.elements.binary_search(&n).is_ok();
            if found || n <= self.enum_horizon() {
                return Some(found);
            }
        }
        self.inner.node.eval(n, &self.ctx())
    }

    /// Membership, or a precision error naming the horizon that would be needed.
    pub fn member_checked(&self, n: u64) -> Result<bool> {
        self.member(n).ok_or(Error::Precision { required: n, available: self.exact_horizon() })
    }

    /// Members certified by listed data in the expression (explicit lists,
    /// generated sequence terms), possibly above the horizon. Sorted.
    pub fn listed_members(&self) -> Vec<u64> {
        self.inner.node.listed_members()
    }

    /// Whether `n` divides some member; `None` when undetermined.
    pub fn divides_member(&self, n: u64) -> Option<bool> {
        if n == 0 {
            return Some(false);
        }
        let node = &self.inner.node;
        let r = node.down_eval(n, &self.ctx());
        if r.is_some() {
            return r;
        }
        // Divisor closure of the periodic bounds.
        if let Some(lo) = node.meta.lower.down() {
            if lo.contains(n) {
                return Some(true);
            }
        }
        if let Some(hi) = node.meta.upper.down() {
            if !hi.contains(n) {
                return Some(false);
            }
        }
        None
    }

    /// Levels (prime-factor counts) that the elements may occupy, when a
    /// finite list is derivable from the expression.
    pub fn level_profile(&self) -> Option<&BTreeSet<u32>> {
        self.inner.node.meta.levels.as_ref()
    }

    /// Proven: the set has no multiple of `m`.
    pub fn avoids_multiples_of(&self, m: u64) -> bool {
        if self.sup() == Some(0) {
            return true;
        }
        if let (Some(sup), true) = (self.sup(), self.is_exact()) {
            return (1..=sup / m).all(|j| self.member(j * m) == Some(false));
        }
        self.inner.node.meta.upper.avoids_multiples_of(m) == Some(true)
    }

    /// The set is known to equal an eventually periodic set.
    pub fn periodic_form(&self) -> Option<&Periodic> {
        let m = &self.inner.node.meta;
        m.periodic_exact.then_some(&m.lower)
    }

    pub(crate) fn upper_bound(&self) -> &Periodic {
        &self.inner.node.meta.upper
    }
}

/// Builds [`LazySet`]s at a fixed horizon, sharing one sieve.
#[derive(Clone, Debug)]
pub struct Evaluator {
    sieve: Arc<Sieve>,
    horizon: u64,
}

impl Evaluator {
    pub fn new(horizon: u64) -> Result<Self> {
        Self::check_horizon(horizon)?;
        Ok(Evaluator { sieve: Arc::new(Sieve::new(horizon)?), horizon })
    }

    /// Uses an existing sieve; its limit may be below the horizon, in which
    /// case larger queries fall back to direct factorization.
    pub fn with_sieve(horizon: u64, sieve: Arc<Sieve>) -> Result<Self> {
        Self::check_horizon(horizon)?;
        Ok(Evaluator { sieve, horizon })
    }

    fn check_horizon(horizon: u64) -> Result<()> {
        if horizon == 0 {
            return Err(Error::ParameterRange("horizon must be at least 1".into()));
        }
        if horizon > MAX_HORIZON {
            return Err(Error::resource("horizon", MAX_HORIZON));
        }
        Ok(())
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn sieve(&self) -> &Arc<Sieve> {
        &self.sieve
    }

    /// Same sieve, different horizon.
    pub fn at_horizon(&self, horizon: u64) -> Result<Evaluator> {
        Self::check_horizon(horizon)?;
        Ok(Evaluator { sieve: self.sieve.clone(), horizon })
    }

    pub(crate) fn ctx(&self) -> Ctx<'_> {
        Ctx { sieve: &self.sieve, search: self.horizon }
    }

    pub fn parse_eval(&self, text: &str) -> Result<LazySet> {
        self.eval(&parse(text)?)
    }

    pub fn finite(&self, set: &FiniteSet) -> LazySet {
        self.eval(&SetExpr::explicit(set.iter()))
            .expect("explicit sets always evaluate")
    }

    pub fn eval(&self, expr: &SetExpr) -> Result<LazySet> {
        let node = self.compile(expr)?;
        let ctx = self.ctx();
        let top = node.meta.sup.map_or(self.horizon, |s| s.min(self.horizon));
        let elements = match &node.kind {
            Kind::Finite(v) => v.iter().copied().filter(|&x| x <= top).collect(),
            _ => (1..=top).filter(|&n| node.eval(n, &ctx) == Some(true)).collect(),
        };
        Ok(LazySet {
            inner: Arc::new(Inner {
                expr: expr.clone(),
                node,
                horizon: self.horizon,
                elements,
                sieve: self.sieve.clone(),
            }),
        })
    }

    pub(crate) fn build(&self, kind: Kind) -> Node {
        NodeData::build(kind, &self.ctx())
    }

    pub(crate) fn compile(&self, expr: &SetExpr) -> Result<Node> {
        let kind = match expr {
            SetExpr::All => Kind::All,
            SetExpr::Primes => Kind::Primes,
            SetExpr::Level { n } => Kind::Level(*n),
            SetExpr::Mult { k } => Kind::Mult(positive(*k, "mult modulus")?),
            SetExpr::Ap { a, d } => Kind::Ap(positive(*a, "progression start")?, positive(*d, "progression step")?),
            SetExpr::Explicit { elements } => Kind::Finite(FiniteSet::new(elements.clone())?.into_vec()),
            SetExpr::Union { operands } | SetExpr::Inter { operands } => {
                if operands.is_empty() {
                    return Err(Error::ParameterRange("union/inter need at least one operand".into()));
                }
                let cs = operands.iter().map(|e| self.compile(e)).collect::<Result<Vec<_>>>()?;
                if matches!(expr, SetExpr::Union { .. }) {
                    Kind::Union(cs)
                } else {
                    Kind::Inter(cs)
                }
            }
            SetExpr::Compl { operand } => Kind::Compl(self.compile(operand)?),
            SetExpr::Dilate { k, operand } => Kind::Dilate(positive(*k, "dilation factor")?, self.compile(operand)?),
            SetExpr::Quot { operand, n } => Kind::Quot(self.compile(operand)?, positive(*n, "quotient divisor")?),
            SetExpr::Shift { operand, t } => Kind::Shift(self.compile(operand)?, *t),
            SetExpr::Up { operand } => Kind::Up(with_first_member(self.compile(operand)?, &self.ctx())),
            SetExpr::Down { operand } => Kind::Down(self.compile(operand)?),
            SetExpr::Fs { seq } => self.sequence_closure(seq, false)?,
            SetExpr::Fp { seq } => self.sequence_closure(seq, true)?,
            SetExpr::Pseudo { count, chain } => {
                let sets = chain.iter().map(|e| self.eval(e)).collect::<Result<Vec<_>>>()?;
                let r = constructions::pseudointersection(&sets, *count as usize)?;
                let horizon = if r.complete { *r.ys.last().unwrap_or(&0) } else { self.horizon };
                Kind::Known { members: r.ys, horizon }
            }
            SetExpr::Construct { name, params } => return constructions::fixture_node(self, name, params),
            SetExpr::File { path } => Kind::Finite(read_set_file(path)?.into_vec()),
        };
        Ok(self.build(kind))
    }

    fn sequence_closure(&self, seq: &SeqSpec, product: bool) -> Result<Kind> {
        let r = constructions::resolve_sequence(seq, &self.sieve)?;
        if r.terms.len() > MAX_SEQUENCE_LEN {
            return Err(Error::ParameterRange(format!("sequences are limited to {MAX_SEQUENCE_LEN} terms")));
        }
        let total = if product {
            r.terms.iter().try_fold(1u64, |acc, &x| acc.checked_mul(x))
        } else {
            r.terms.iter().try_fold(0u64, |acc, &x| acc.checked_add(x))
        };
        let limit = total.map_or(self.horizon, |t| t.min(self.horizon));
        let members = if product {
            finite_products(&r.terms, limit)
        } else {
            finite_sums(&r.terms, limit)
        };
        Ok(match r.next {
            // An explicit list: the closure is a finite set.
            None => match total {
                Some(t) if t <= self.horizon => Kind::Finite(members),
                _ => Kind::Known { members, horizon: self.horizon },
            },
            // A prefix of an infinite rule: below the next term the infinite
            // closure agrees with the closure of the prefix.
            Some(next) => Kind::Known { members, horizon: self.horizon.min(next - 1) },
        })
    }
}

fn positive(v: u64, what: &str) -> Result<u64> {
    if v == 0 {
        Err(Error::ParameterRange(format!("{what} must be at least 1")))
    } else {
        Ok(v)
    }
}

/// Nonempty subset sums of `terms` that are at most `limit`, sorted.
pub fn finite_sums(terms: &[u64], limit: u64) -> Vec<u64> {
    let mut reach = vec![false; limit as usize + 1];
    reach[0] = true;
    for &x in terms {
        if x > limit {
            continue;
        }
        for s in (x..=limit).rev() {
            if reach[(s - x) as usize] {
                reach[s as usize] = true;
            }
        }
    }
    (1..=limit).filter(|&s| reach[s as usize]).collect()
}

/// Nonempty subset products of `terms` that are at most `limit`, sorted.
pub fn finite_products(terms: &[u64], limit: u64) -> Vec<u64> {
    fn rec(terms: &[u64], i: usize, acc: u64, picked: bool, limit: u64, out: &mut Vec<u64>) {
        if i == terms.len() {
            if picked {
                out.push(acc);
            }
            return;
        }
        rec(terms, i + 1, acc, picked, limit, out);
        if let Some(next) = acc.checked_mul(terms[i]) {
            if next <= limit {
                rec(terms, i + 1, next, true, limit, out);
            }
        }
    }
    let mut out = Vec::new();
    rec(terms, 0, 1, false, limit, &mut out);
    out.sort_unstable();
    out.dedup();
    out
}

/// Reads an explicit set file: one decimal natural per line, `#` starts a comment.
pub fn read_set_file(path: &str) -> Result<FiniteSet> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
    parse_set_file(&text)
}

pub fn parse_set_file(text: &str) -> Result<FiniteSet> {
    let mut v = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let n: u64 = content
            .parse()
            .map_err(|_| Error::Input(format!("line {}: `{content}` is not a natural number", i + 1)))?;
        v.push(n);
    }
    FiniteSet::new(v)
}

/// Evaluates an expression at horizon `h` with a fresh sieve.
pub fn eval(expr: &SetExpr, h: u64) -> Result<LazySet> {
    Evaluator::new(h)?.eval(expr)
}
