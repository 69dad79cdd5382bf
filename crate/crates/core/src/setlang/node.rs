//! Compiled form of a set expression.
//!
//! Each node answers membership with `Option<bool>`: `None` means the
//! value is not determined by what is known about the operands. Nodes also
//! carry metadata computed bottom-up: the exact horizon (every `n` at or
//! below it gets a definite answer), an optional upper bound on elements,
//! periodic lower/upper bounds, and the set of prime-factor levels the
//! elements may occupy.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::periodic::Periodic;
use crate::arith::{gcd, Sieve};

/// Exact horizon value meaning "every query is decided".
pub const UNBOUNDED: u64 = u64::MAX;

pub(crate) type Node = Arc<NodeData>;

#[derive(Debug)]
pub(crate) struct NodeData {
    pub kind: Kind,
    pub meta: Meta,
}

#[derive(Debug, Clone)]
pub(crate) enum Kind {
    All,
    Primes,
    Level(u32),
    Mult(u64),
    Ap(u64, u64),
    /// A finite set known completely; sorted.
    Finite(Vec<u64>),
    /// Members known to belong (sorted) and a horizon up to which the list
    /// is complete.
    Known { members: Vec<u64>, horizon: u64 },
    /// `n >= 2` whose prime exponents are all equal.
    EqualExponent,
    Union(Vec<Node>),
    Inter(Vec<Node>),
    Compl(Node),
    Dilate(u64, Node),
    Quot(Node, u64),
    Shift(Node, u64),
    Up(Node),
    Down(Node),
}

#[derive(Debug, Clone)]
pub(crate) struct Meta {
    pub exact: u64,
    pub sup: Option<u64>,
    pub lower: Periodic,
    pub upper: Periodic,
    pub periodic_exact: bool,
    pub levels: Option<BTreeSet<u32>>,
    /// Whether membership in the divisor closure is always decided.
    pub down_exact: bool,
    /// Least member found by a bounded scan; recorded for `Up` operands.
    pub first_member: Option<u64>,
}

pub(crate) struct Ctx<'a> {
    pub sieve: &'a Sieve,
    /// Bound for searches that look for a member among multiples.
    pub search: u64,
}

fn kleene_or(it: impl Iterator<Item = Option<bool>>) -> Option<bool> {
    let mut unknown = false;
    for v in it {
        match v {
            Some(true) => return Some(true),
            None => unknown = true,
            Some(false) => {}
        }
    }
    if unknown {
        None
    } else {
        Some(false)
    }
}

fn kleene_and(it: impl Iterator<Item = Option<bool>>) -> Option<bool> {
    let mut unknown = false;
    for v in it {
        match v {
            Some(false) => return Some(false),
            None => unknown = true,
            Some(true) => {}
        }
    }
    if unknown {
        None
    } else {
        Some(true)
    }
}

fn primes_upper() -> Periodic {
    Periodic::tabulate(30, 30, |n| matches!(n, 2 | 3 | 5) || (n > 1 && gcd(n, 30) == 1))
        .expect("small span")
}

fn finite_bounds(v: &[u64]) -> (Periodic, Periodic) {
    match Periodic::finite(v) {
        Some(p) => (p.clone(), p),
        None => (Periodic::empty(), Periodic::all()),
    }
}

fn divisors(sieve: &Sieve, n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in sieve.factorize(n).pairs {
        let len = ds.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

pub(crate) fn is_equal_exponent(sieve: &Sieve, n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let f = sieve.factorize(n);
    let e0 = f.pairs[0].1;
    f.pairs.iter().all(|&(_, e)| e == e0)
}

impl NodeData {
    pub fn build(kind: Kind, ctx: &Ctx) -> Node {
        let meta = Meta::compute(&kind, ctx);
        Arc::new(NodeData { kind, meta })
    }

    pub fn is_exact(&self) -> bool {
        self.meta.exact == UNBOUNDED
    }

    /// Members certified directly by listed data (explicit lists and
    /// generated terms), including those above any scan horizon.
    pub fn listed_members(&self) -> Vec<u64> {
        let mut v = match &self.kind {
            Kind::Finite(v) => v.clone(),
            Kind::Known { members, .. } => members.clone(),
            Kind::Union(cs) => cs.iter().flat_map(|c| c.listed_members()).collect(),
            Kind::Dilate(k, c) => c.listed_members().into_iter().filter_map(|x| x.checked_mul(*k)).collect(),
            _ => Vec::new(),
        };
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn eval(&self, n: u64, ctx: &Ctx) -> Option<bool> {
        if n == 0 {
            return Some(false);
        }
        if let Some(s) = self.meta.sup {
            if n > s {
                return Some(false);
            }
        }
        let r = self.eval_kind(n, ctx);
        if r.is_some() {
            return r;
        }
        if self.meta.lower.contains(n) {
            Some(true)
        } else if !self.meta.upper.contains(n) {
            Some(false)
        } else {
            None
        }
    }

    fn eval_kind(&self, n: u64, ctx: &Ctx) -> Option<bool> {
        let s = ctx.sieve;
        match &self.kind {
            Kind::All => Some(true),
            Kind::Primes => Some(s.is_prime(n)),
            Kind::Level(j) => Some(s.omega(n) == *j),
            Kind::Mult(k) => Some(n.is_multiple_of(*k)),
            Kind::Ap(a, d) => Some(n >= *a && (n - a).is_multiple_of(*d)),
            Kind::Finite(v) => Some(v.binary_search(&n).is_ok()),
            Kind::Known { members, horizon } => {
                if members.binary_search(&n).is_ok() {
                    Some(true)
                } else if n <= *horizon {
                    Some(false)
                } else {
                    None
                }
            }
            Kind::EqualExponent => Some(is_equal_exponent(s, n)),
            Kind::Union(cs) => kleene_or(cs.iter().map(|c| c.eval(n, ctx))),
            Kind::Inter(cs) => kleene_and(cs.iter().map(|c| c.eval(n, ctx))),
            Kind::Compl(c) => c.eval(n, ctx).map(|b| !b),
            Kind::Dilate(k, c) => {
                if !n.is_multiple_of(*k) {
                    Some(false)
                } else {
                    c.eval(n / k, ctx)
                }
            }
            Kind::Quot(c, m) => n.checked_mul(*m).and_then(|x| c.eval(x, ctx)),
            Kind::Shift(c, t) => n.checked_add(*t).and_then(|x| c.eval(x, ctx)),
            Kind::Up(c) => kleene_or(divisors(s, n).into_iter().map(|d| c.eval(d, ctx))),
            Kind::Down(c) => c.down_eval(n, ctx),
        }
    }

    /// Whether `n` divides some member of this set.
    pub fn down_eval(&self, n: u64, ctx: &Ctx) -> Option<bool> {
        let s = ctx.sieve;
        let structural = match &self.kind {
            Kind::All | Kind::Mult(_) | Kind::EqualExponent => Some(true),
            Kind::Ap(a, d) => Some(a % gcd(n, *d) == 0),
            Kind::Level(j) => Some(s.omega(n) <= *j),
            Kind::Primes => Some(n == 1 || s.is_prime(n)),
            Kind::Finite(v) => Some(v.iter().any(|&x| x % n == 0)),
            Kind::Union(cs) => kleene_or(cs.iter().map(|c| c.down_eval(n, ctx))),
            Kind::Dilate(k, c) => c.down_eval(n / gcd(n, *k), ctx),
            Kind::Quot(c, m) => n.checked_mul(*m).and_then(|x| c.down_eval(x, ctx)),
            Kind::Down(c) => c.down_eval(n, ctx),
            Kind::Up(c) => {
                if c.meta.sup == Some(0) {
                    Some(false)
                } else if c.meta.first_member.is_some() {
                    // n divides n·a for any member a.
                    Some(true)
                } else {
                    None
                }
            }
            _ => None,
        };
        if structural.is_some() {
            return structural;
        }
        if self.meta.sup == Some(0) {
            return Some(false);
        }
        let bound = match self.meta.sup {
            Some(sup) if self.is_exact() => sup,
            _ => ctx.search,
        };
        let mut unknown = false;
        let mut m = n;
        while m <= bound {
            match self.eval(m, ctx) {
                Some(true) => return Some(true),
                None => unknown = true,
                Some(false) => {}
            }
            m = match m.checked_add(n) {
                Some(x) => x,
                None => break,
            };
        }
        if !unknown && self.is_exact() && self.meta.sup.is_some() {
            Some(false)
        } else {
            None
        }
    }
}

fn union_all<'a>(items: impl Iterator<Item = &'a Periodic>, fallback: Periodic) -> Periodic {
    let mut acc = Periodic::empty();
    for p in items {
        match acc.union(p) {
            Some(u) => acc = u,
            None => return fallback,
        }
    }
    acc
}

fn inter_all<'a>(items: impl Iterator<Item = &'a Periodic>, fallback: Periodic) -> Periodic {
    let mut acc = Periodic::all();
    for p in items {
        match acc.inter(p) {
            Some(u) => acc = u,
            None => return fallback,
        }
    }
    acc
}

impl Meta {
    fn compute(kind: &Kind, ctx: &Ctx) -> Meta {
        let s = ctx.sieve;
        let trivial = || (Periodic::empty(), Periodic::all());
        let (mut exact, sup, (lower, upper), levels): (u64, Option<u64>, (Periodic, Periodic), Option<BTreeSet<u32>>) =
            match kind {
                Kind::All => (UNBOUNDED, None, (Periodic::all(), Periodic::all()), None),
                Kind::Primes => (
                    UNBOUNDED,
                    None,
                    (Periodic::empty(), primes_upper()),
                    Some(BTreeSet::from([1])),
                ),
                Kind::Level(j) => {
                    let bounds = match j {
                        0 => finite_bounds(&[1]),
                        1 => (Periodic::empty(), primes_upper()),
                        _ => trivial(),
                    };
                    let sup = if *j == 0 { Some(1) } else { None };
                    (UNBOUNDED, sup, bounds, Some(BTreeSet::from([*j])))
                }
                Kind::Mult(k) => {
                    let p = Periodic::tabulate(0, *k, |n| n % k == 0);
                    (UNBOUNDED, None, p.map(|p| (p.clone(), p)).unwrap_or_else(trivial), None)
                }
                Kind::Ap(a, d) => {
                    let p = Periodic::tabulate(a - 1, *d, |n| n >= *a && (n - a) % d == 0);
                    (UNBOUNDED, None, p.map(|p| (p.clone(), p)).unwrap_or_else(trivial), None)
                }
                Kind::Finite(v) => (
                    UNBOUNDED,
                    Some(v.last().copied().unwrap_or(0)),
                    finite_bounds(v),
                    Some(v.iter().map(|&x| s.omega(x)).collect()),
                ),
                Kind::Known { members, horizon } => {
                    let lower = Periodic::finite(members).unwrap_or_else(Periodic::empty);
                    let upper = Periodic::finite_then_all(members, *horizon).unwrap_or_else(Periodic::all);
                    (*horizon, None, (lower, upper), None)
                }
                Kind::EqualExponent => (UNBOUNDED, None, trivial(), None),
                Kind::Union(cs) => {
                    let exact = cs.iter().map(|c| c.meta.exact).min().unwrap_or(UNBOUNDED);
                    let sup = cs.iter().map(|c| c.meta.sup).collect::<Option<Vec<_>>>().map(|v| v.into_iter().max().unwrap_or(0));
                    let lower = union_all(cs.iter().map(|c| &c.meta.lower), cs[0].meta.lower.clone());
                    let upper = union_all(cs.iter().map(|c| &c.meta.upper), Periodic::all());
                    let levels = cs
                        .iter()
                        .map(|c| c.meta.levels.clone())
                        .collect::<Option<Vec<_>>>()
                        .map(|v| v.into_iter().flatten().collect());
                    (exact, sup, (lower, upper), levels)
                }
                Kind::Inter(cs) => {
                    let exact = cs.iter().map(|c| c.meta.exact).min().unwrap_or(UNBOUNDED);
                    let sup = cs.iter().filter_map(|c| c.meta.sup).min();
                    let lower = inter_all(cs.iter().map(|c| &c.meta.lower), Periodic::empty());
                    let upper = inter_all(cs.iter().map(|c| &c.meta.upper), cs[0].meta.upper.clone());
                    let mut levels: Option<BTreeSet<u32>> = None;
                    for l in cs.iter().filter_map(|c| c.meta.levels.as_ref()) {
                        levels = Some(match levels {
                            None => l.clone(),
                            Some(acc) => acc.intersection(l).copied().collect(),
                        });
                    }
                    (exact, sup, (lower, upper), levels)
                }
                Kind::Compl(c) => (c.meta.exact, None, (c.meta.upper.compl(), c.meta.lower.compl()), None),
                Kind::Dilate(k, c) => {
                    let exact = if c.is_exact() {
                        UNBOUNDED
                    } else {
                        c.meta.exact.saturating_mul(*k).saturating_add(k - 1).min(UNBOUNDED - 1)
                    };
                    let sup = c.meta.sup.and_then(|x| x.checked_mul(*k));
                    let lower = c.meta.lower.dilate(*k).unwrap_or_else(Periodic::empty);
                    let upper = c.meta.upper.dilate(*k).unwrap_or_else(Periodic::all);
                    let ok = s.omega(*k);
                    let levels = c.meta.levels.as_ref().map(|l| l.iter().map(|x| x + ok).collect());
                    (exact, sup, (lower, upper), levels)
                }
                Kind::Quot(c, m) => {
                    let exact = if c.is_exact() { UNBOUNDED } else { c.meta.exact / m };
                    let sup = c.meta.sup.map(|x| x / m);
                    let lower = c.meta.lower.quot(*m).unwrap_or_else(Periodic::empty);
                    let upper = c.meta.upper.quot(*m).unwrap_or_else(Periodic::all);
                    let om = s.omega(*m);
                    let levels = c
                        .meta
                        .levels
                        .as_ref()
                        .map(|l| l.iter().filter(|&&x| x >= om).map(|x| x - om).collect());
                    (exact, sup, (lower, upper), levels)
                }
                Kind::Shift(c, t) => {
                    let exact = if c.is_exact() { UNBOUNDED } else { c.meta.exact.saturating_sub(*t) };
                    let sup = c.meta.sup.map(|x| x.saturating_sub(*t));
                    let lower = c.meta.lower.shift(*t).unwrap_or_else(Periodic::empty);
                    let upper = c.meta.upper.shift(*t).unwrap_or_else(Periodic::all);
                    (exact, sup, (lower, upper), None)
                }
                Kind::Up(c) => {
                    let sup = if c.meta.sup == Some(0) { Some(0) } else { None };
                    let lower = c.meta.lower.up().0;
                    let upper = c.meta.upper.up().1;
                    (c.meta.exact, sup, (lower, upper), None)
                }
                Kind::Down(c) => {
                    let exact = if c.meta.down_exact { UNBOUNDED } else { 0 };
                    let lower = c.meta.lower.down().unwrap_or_else(Periodic::empty);
                    let upper = c.meta.upper.down().unwrap_or_else(Periodic::all);
                    (exact, c.meta.sup, (lower, upper), None)
                }
            };
        let periodic_exact = lower.same_set(&upper);
        if periodic_exact {
            exact = UNBOUNDED;
        }
        if let Some(sv) = sup {
            if sv <= exact {
                exact = UNBOUNDED;
            }
        }
        let first_member = None;
        let mut meta = Meta {
            exact,
            sup,
            lower,
            upper,
            periodic_exact,
            levels,
            down_exact: false,
            first_member,
        };
        meta.down_exact = match kind {
            Kind::All
            | Kind::Primes
            | Kind::Level(_)
            | Kind::Mult(_)
            | Kind::Ap(..)
            | Kind::Finite(_)
            | Kind::EqualExponent => true,
            Kind::Union(cs) => cs.iter().all(|c| c.meta.down_exact),
            Kind::Dilate(_, c) | Kind::Quot(c, _) | Kind::Down(c) => c.meta.down_exact,
            Kind::Up(c) => c.meta.sup == Some(0) || c.meta.first_member.is_some(),
            _ => false,
        } || meta.periodic_exact
            || (meta.exact == UNBOUNDED && meta.sup.is_some());
        meta
    }
}

/// Records the least member of `node` up to the search bound. Used on
/// operands of `Up` so the divisor closure of the result can be decided.
pub(crate) fn with_first_member(node: Node, ctx: &Ctx) -> Node {
    if node.meta.first_member.is_some() {
        return node;
    }
    let limit = node.meta.sup.map_or(ctx.search, |s| s.min(ctx.search));
    let first = (1..=limit).find(|&n| node.eval(n, ctx) == Some(true));
    match first {
        None => node,
        Some(f) => match Arc::try_unwrap(node) {
            Ok(mut data) => {
                data.meta.first_member = Some(f);
                Arc::new(data)
            }
            Err(shared) => {
                let mut meta = shared.meta.clone();
                meta.first_member = Some(f);
                Arc::new(NodeData { kind: shared.kind.clone(), meta })
            }
        },
    }
}
