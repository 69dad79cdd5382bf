//! Deterministic generators for the explicit constructions, and their
//! bindings as `construct(...)` fixtures and sequence rules in the set
//! language. Every free choice is resolved to the least admissible value.

mod families;
mod sequences;

pub use families::{
    gen_levelfix, gen_mj_funcs, gen_prophier, gen_thick_nonmaxstar, pseudointersection, MjFuncs,
    ProductBlock, Pseudointersection, ThickNonMaxStar,
};
pub use sequences::{gen_exgamma, gen_fastgrowth, indexed_primes, select_primes, PrimeIndexRule};

use crate::arith::Sieve;
use crate::embed::sidon_sequence;
use crate::error::{Error, Result};
use crate::setlang::ast::{Param, SeqSpec, SetExpr};
use crate::setlang::node::{is_equal_exponent, Kind, Node};
use crate::setlang::{Evaluator, LazySet};

/// Fixture names accepted by `construct(name, ...)`.
pub const FIXTURE_NAMES: &[&str] = &[
    "exgamma",
    "fastgrowth",
    "sidon",
    "sidon_levels",
    "thick_nonmaxstar",
    "equal_exponent",
    "fp_primes",
    "prophier",
    "levelfix",
    "mj_funcs",
];

/// One-line usage for each fixture, in catalog order.
pub const FIXTURE_USAGE: &[(&str, &str)] = &[
    ("exgamma", "exgamma,COUNT: range of a_n = least multiple of n above the sum of earlier terms"),
    ("fastgrowth", "fastgrowth,COUNT: finite sums of a_n = n + (sum of earlier terms) + 1"),
    ("sidon", "sidon,COUNT: greedy sequence with distinct pairwise differences"),
    ("sidon_levels", "sidon_levels,COUNT,even|odd: union of levels n_0,n_2,... or n_1,n_3,... of the Sidon sequence"),
    ("thick_nonmaxstar", "thick_nonmaxstar,N: union of runs F_1..F_N, skipping a multiple of each n"),
    ("equal_exponent", "equal_exponent: n >= 2 whose prime exponents are all equal"),
    ("fp_primes", "fp_primes,odd|even|all,COUNT or fp_primes,[INDICES]: finite products of selected primes"),
    ("prophier", "prophier,[PRIMES],K,N,...: products of N distinct primes from each block, to the power K"),
    ("levelfix", "levelfix,N,[POSITIONS],[PRIMES]: products of N sorted primes with fixed entries"),
    ("mj_funcs", "mj_funcs,H: function tables f(n)=p_2n^2 p_2n+1 and g(n)=p_2n p_2n+1^2 (not a set)"),
];

/// Sequence rules accepted inside `fs(...)` and `fp(...)`.
pub const SEQUENCE_RULES: &[&str] = &["exgamma", "fastgrowth", "sidon", "primeseq"];

/// Largest count accepted for generated sequences.
pub const MAX_COUNT: u64 = 5_000;

/// A resolved sequence. `next` is the following term for rules that
/// continue indefinitely, `None` for explicit finite lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedSequence {
    pub terms: Vec<u64>,
    pub next: Option<u64>,
}

fn param_nat(params: &[Param], i: usize, what: &str) -> Result<u64> {
    match params.get(i) {
        Some(Param::Nat(n)) => Ok(*n),
        Some(other) => Err(Error::Input(format!("{what}: expected a number, got `{other}`"))),
        None => Err(Error::Input(format!("missing parameter: {what}"))),
    }
}

fn param_count(params: &[Param], i: usize, what: &str) -> Result<usize> {
    let n = param_nat(params, i, what)?;
    if n == 0 || n > MAX_COUNT {
        return Err(Error::ParameterRange(format!("{what} must be in 1..={MAX_COUNT}, got {n}")));
    }
    Ok(n as usize)
}

fn param_list(params: &[Param], i: usize, what: &str) -> Result<Vec<u64>> {
    match params.get(i) {
        Some(Param::List(v)) => Ok(v.clone()),
        Some(other) => Err(Error::Input(format!("{what}: expected a [list], got `{other}`"))),
        None => Err(Error::Input(format!("missing parameter: {what}"))),
    }
}

fn expect_arity(params: &[Param], n: usize, name: &str) -> Result<()> {
    if params.len() != n {
        return Err(Error::Input(format!("{name} takes {n} parameter(s), got {}", params.len())));
    }
    Ok(())
}

/// Reads `odd|even|all, COUNT` or `[INDICES]` starting at `params[0]`.
pub fn prime_rule_params(params: &[Param]) -> Result<(PrimeIndexRule, usize)> {
    match params.first() {
        Some(Param::List(v)) => {
            expect_arity(params, 1, "an explicit prime index list")?;
            if v.is_empty() || v.contains(&0) {
                return Err(Error::ParameterRange("prime indices start at 1".into()));
            }
            let idx: Vec<usize> = v.iter().map(|&i| i as usize).collect();
            let n = idx.len();
            Ok((PrimeIndexRule::Indices(idx), n))
        }
        Some(Param::Ident(s)) => {
            expect_arity(params, 2, "a prime parity rule")?;
            let rule = match s.as_str() {
                "odd" => PrimeIndexRule::Odd,
                "even" => PrimeIndexRule::Even,
                "all" => PrimeIndexRule::All,
                other => {
                    return Err(Error::Input(format!("prime rule must be odd, even or all, got `{other}`")))
                }
            };
            Ok((rule, param_count(params, 1, "prime count")?))
        }
        _ => Err(Error::Input("expected odd|even|all followed by a count, or a [list] of indices".into())),
    }
}

fn with_next(mut all: Vec<u64>, count: usize) -> ResolvedSequence {
    let next = all.get(count).copied();
    all.truncate(count);
    ResolvedSequence { terms: all, next }
}

pub fn resolve_sequence(seq: &SeqSpec, sieve: &Sieve) -> Result<ResolvedSequence> {
    match seq {
        SeqSpec::Explicit { terms } => {
            if terms.contains(&0) {
                return Err(Error::ParameterRange("sequence terms must be at least 1".into()));
            }
            Ok(ResolvedSequence { terms: terms.clone(), next: None })
        }
        SeqSpec::Rule { name, params } => match name.as_str() {
            "exgamma" | "fastgrowth" | "sidon" => {
                expect_arity(params, 1, name)?;
                let c = param_count(params, 0, "sequence length")?;
                let generate = |n: usize| match name.as_str() {
                    "exgamma" => gen_exgamma(n),
                    "fastgrowth" => gen_fastgrowth(n),
                    _ => Ok(sidon_sequence(n)),
                };
                match generate(c + 1) {
                    Ok(all) => Ok(with_next(all, c)),
                    // The next term does not fit in 64 bits, so no further
                    // term can appear below u64::MAX.
                    Err(Error::Overflow(_)) => Ok(ResolvedSequence { terms: generate(c)?, next: Some(u64::MAX) }),
                    Err(e) => Err(e),
                }
            }
            "primeseq" => {
                let (rule, count) = prime_rule_params(params)?;
                let (terms, next) = select_primes(sieve, &rule, count);
                Ok(ResolvedSequence { terms, next })
            }
            other => Err(Error::UnknownGenerator { name: other.into(), catalog: SEQUENCE_RULES.join(", ") }),
        },
    }
}

/// Alias of the greedy Sidon sequence, for building level unions.
pub fn gen_sidon_levels(count: usize) -> Vec<u64> {
    sidon_sequence(count)
}

/// `A_0 = ∪ L_{n_{2i}}` and `A_1 = ∪ L_{n_{2i+1}}` over the first `count` Sidon terms.
pub fn sidon_level_exprs(count: usize) -> Result<(SetExpr, SetExpr)> {
    if count < 2 {
        return Err(Error::ParameterRange("sidon_levels needs a count of at least 2".into()));
    }
    let seq = gen_sidon_levels(count);
    let mut parts = [Vec::new(), Vec::new()];
    for (i, &n) in seq.iter().enumerate() {
        let n = u32::try_from(n)
            .ok()
            .filter(|&n| n <= 64)
            .ok_or_else(|| Error::ParameterRange("level index above 64".into()))?;
        parts[i % 2].push(SetExpr::Level { n });
    }
    let [a0, a1] = parts;
    Ok((SetExpr::Union { operands: a0 }, SetExpr::Union { operands: a1 }))
}

/// The finite-product set of selected primes, and the complementary primes.
#[derive(Debug, Clone)]
pub struct FpPrimeSubset {
    pub primes: Vec<u64>,
    /// The first `count` primes of the complementary parity class (empty
    /// for `all`; the unselected primes below the largest index otherwise).
    pub complement: Vec<u64>,
    pub set: LazySet,
}

pub fn gen_fp_prime_subset(ev: &Evaluator, rule: &PrimeIndexRule, count: usize) -> Result<FpPrimeSubset> {
    let (primes, _) = select_primes(ev.sieve(), rule, count);
    let complement = match rule.complement() {
        Some(c) => select_primes(ev.sieve(), &c, count).0,
        None => match rule {
            PrimeIndexRule::Indices(v) => {
                let max = v.iter().copied().max().unwrap_or(0);
                indexed_primes(ev.sieve())
                    .take_while(|&(i, _)| i <= max)
                    .filter(|&(i, _)| !rule.selects(i))
                    .map(|(_, p)| p)
                    .collect()
            }
            _ => Vec::new(),
        },
    };
    let set = ev.eval(&fp_primes_expr(rule, count))?;
    Ok(FpPrimeSubset { primes, complement, set })
}

fn fp_primes_expr(rule: &PrimeIndexRule, count: usize) -> SetExpr {
    let params = match rule {
        PrimeIndexRule::Indices(v) => vec![Param::List(v.iter().map(|&i| i as u64).collect())],
        other => {
            let name = match other {
                PrimeIndexRule::Odd => "odd",
                PrimeIndexRule::Even => "even",
                _ => "all",
            };
            vec![Param::Ident(name.into()), Param::Nat(count as u64)]
        }
    };
    SetExpr::Construct { name: "fp_primes".into(), params }
}

fn prophier_blocks(params: &[Param]) -> Result<Vec<ProductBlock>> {
    if params.is_empty() || !params.len().is_multiple_of(3) {
        return Err(Error::Input("prophier takes groups of [PRIMES],K,N".into()));
    }
    (0..params.len() / 3)
        .map(|b| {
            let primes = param_list(params, 3 * b, "block primes")?;
            let k = param_nat(params, 3 * b + 1, "block exponent")?;
            let n = param_nat(params, 3 * b + 2, "block size")?;
            let k = u32::try_from(k).map_err(|_| Error::ParameterRange("block exponent too large".into()))?;
            Ok(ProductBlock { primes, k, n: n as usize })
        })
        .collect()
}

/// Compiles `construct(name, params...)`.
pub(crate) fn fixture_node(ev: &Evaluator, name: &str, params: &[Param]) -> Result<Node> {
    let sieve = ev.sieve();
    let kind = match name {
        "exgamma" | "sidon" => {
            expect_arity(params, 1, name)?;
            let r = resolve_sequence(&SeqSpec::Rule { name: name.into(), params: params.to_vec() }, sieve)?;
            let horizon = r.next.map_or(*r.terms.last().unwrap_or(&0), |n| n - 1);
            Kind::Known { members: r.terms, horizon }
        }
        "fastgrowth" => {
            expect_arity(params, 1, name)?;
            return ev.compile(&SetExpr::Fs {
                seq: SeqSpec::Rule { name: name.into(), params: params.to_vec() },
            });
        }
        "sidon_levels" => {
            expect_arity(params, 2, name)?;
            let c = param_count(params, 0, "sidon length")?;
            let (a0, a1) = sidon_level_exprs(c)?;
            return match params.get(1) {
                Some(Param::Ident(p)) if p == "even" => ev.compile(&a0),
                Some(Param::Ident(p)) if p == "odd" => ev.compile(&a1),
                _ => Err(Error::Input("sidon_levels parity must be even or odd".into())),
            };
        }
        "thick_nonmaxstar" => {
            expect_arity(params, 1, name)?;
            let t = gen_thick_nonmaxstar(param_count(params, 0, "block count")?)?;
            let mut members = t.members();
            members.sort_unstable();
            Kind::Known { members, horizon: t.known_horizon() }
        }
        "equal_exponent" => {
            expect_arity(params, 0, name)?;
            Kind::EqualExponent
        }
        "fp_primes" => {
            prime_rule_params(params)?;
            return ev.compile(&SetExpr::Fp {
                seq: SeqSpec::Rule { name: "primeseq".into(), params: params.to_vec() },
            });
        }
        "prophier" => {
            let blocks = prophier_blocks(params)?;
            Kind::Finite(gen_prophier(&blocks, sieve, u64::MAX)?.into_vec())
        }
        "levelfix" => {
            expect_arity(params, 3, name)?;
            let n = param_count(params, 0, "level")?;
            let positions: Vec<usize> = param_list(params, 1, "positions")?.iter().map(|&i| i as usize).collect();
            let primes = param_list(params, 2, "primes")?;
            let set = gen_levelfix(n, &positions, &primes, sieve, ev.horizon())?;
            Kind::Known { members: set.into_vec(), horizon: ev.horizon() }
        }
        "mj_funcs" => {
            return Err(Error::Input("mj_funcs is a pair of function tables, not a set".into()))
        }
        other => {
            return Err(Error::UnknownGenerator { name: other.into(), catalog: FIXTURE_NAMES.join(", ") })
        }
    };
    Ok(ev.build(kind))
}

/// Whether `n >= 2` has all prime exponents equal.
pub fn equal_exponent_member(sieve: &Sieve, n: u64) -> bool {
    is_equal_exponent(sieve, n)
}
