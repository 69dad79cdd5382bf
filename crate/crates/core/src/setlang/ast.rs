//! Abstract syntax of set expressions and its canonical text form.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Longest sequence accepted by `fs`/`fp`.
pub const MAX_SEQUENCE_LEN: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum SetExpr {
    /// All positive integers.
    All,
    Primes,
    /// Integers with exactly this many prime factors, counted with multiplicity.
    Level { n: u32 },
    Mult { k: u64 },
    /// `{a, a+d, a+2d, ...}`.
    Ap { a: u64, d: u64 },
    Explicit { elements: Vec<u64> },
    Union { operands: Vec<SetExpr> },
    Inter { operands: Vec<SetExpr> },
    Compl { operand: Box<SetExpr> },
    Dilate { k: u64, operand: Box<SetExpr> },
    Quot { operand: Box<SetExpr>, n: u64 },
    Shift { operand: Box<SetExpr>, t: u64 },
    Up { operand: Box<SetExpr> },
    Down { operand: Box<SetExpr> },
    Fs { seq: SeqSpec },
    Fp { seq: SeqSpec },
    /// Least-fresh-element pseudointersection of a decreasing chain.
    Pseudo { count: u64, chain: Vec<SetExpr> },
    Construct { name: String, params: Vec<Param> },
    /// Explicit set file: one natural per line, `#` comments.
    File { path: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SeqSpec {
    Explicit { terms: Vec<u64> },
    Rule { name: String, params: Vec<Param> },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Param {
    Nat(u64),
    Ident(String),
    Str(String),
    List(Vec<u64>),
}

impl SetExpr {
    pub fn odd() -> Self {
        SetExpr::Ap { a: 1, d: 2 }
    }

    pub fn explicit(elements: impl IntoIterator<Item = u64>) -> Self {
        let mut v: Vec<u64> = elements.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        SetExpr::Explicit { elements: v }
    }

    pub fn compl(e: SetExpr) -> Self {
        SetExpr::Compl { operand: Box::new(e) }
    }

    pub fn quot(e: SetExpr, n: u64) -> Self {
        SetExpr::Quot { operand: Box::new(e), n }
    }

    pub fn dilate(k: u64, e: SetExpr) -> Self {
        SetExpr::Dilate { k, operand: Box::new(e) }
    }

    pub fn shift(e: SetExpr, t: u64) -> Self {
        SetExpr::Shift { operand: Box::new(e), t }
    }

    pub fn up(e: SetExpr) -> Self {
        SetExpr::Up { operand: Box::new(e) }
    }

    pub fn down(e: SetExpr) -> Self {
        SetExpr::Down { operand: Box::new(e) }
    }

    /// Direct subexpressions.
    pub fn children(&self) -> Vec<&SetExpr> {
        match self {
            SetExpr::Union { operands } | SetExpr::Inter { operands } => operands.iter().collect(),
            SetExpr::Compl { operand }
            | SetExpr::Dilate { operand, .. }
            | SetExpr::Quot { operand, .. }
            | SetExpr::Shift { operand, .. }
            | SetExpr::Up { operand }
            | SetExpr::Down { operand } => vec![operand],
            SetExpr::Pseudo { chain, .. } => chain.iter().collect(),
            _ => Vec::new(),
        }
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, v: &[u64]) -> fmt::Result {
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

fn write_exprs(f: &mut fmt::Formatter<'_>, v: &[SetExpr]) -> fmt::Result {
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Nat(n) => write!(f, "{n}"),
            Param::Ident(s) => write!(f, "{s}"),
            Param::Str(s) => write!(f, "\"{s}\""),
            Param::List(v) => {
                write!(f, "[")?;
                write_list(f, v)?;
                write!(f, "]")
            }
        }
    }
}

fn write_params(f: &mut fmt::Formatter<'_>, params: &[Param]) -> fmt::Result {
    for (i, p) in params.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{p}")?;
    }
    Ok(())
}

impl fmt::Display for SeqSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqSpec::Explicit { terms } => {
                write!(f, "[")?;
                write_list(f, terms)?;
                write!(f, "]")
            }
            SeqSpec::Rule { name, params } => {
                write!(f, "{name}(")?;
                write_params(f, params)?;
                write!(f, ")")
            }
        }
    }
}

/// Canonical text; parsing it yields an identical tree.
impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetExpr::All => write!(f, "N"),
            SetExpr::Primes => write!(f, "primes"),
            SetExpr::Level { n } => write!(f, "level({n})"),
            SetExpr::Mult { k } => write!(f, "mult({k})"),
            SetExpr::Ap { a, d } => write!(f, "ap({a},{d})"),
            SetExpr::Explicit { elements } => {
                write!(f, "{{")?;
                write_list(f, elements)?;
                write!(f, "}}")
            }
            SetExpr::Union { operands } => {
                write!(f, "union(")?;
                write_exprs(f, operands)?;
                write!(f, ")")
            }
            SetExpr::Inter { operands } => {
                write!(f, "inter(")?;
                write_exprs(f, operands)?;
                write!(f, ")")
            }
            SetExpr::Compl { operand } => write!(f, "compl({operand})"),
            SetExpr::Dilate { k, operand } => write!(f, "dilate({k},{operand})"),
            SetExpr::Quot { operand, n } => write!(f, "quot({operand},{n})"),
            SetExpr::Shift { operand, t } => write!(f, "shift({operand},{t})"),
            SetExpr::Up { operand } => write!(f, "up({operand})"),
            SetExpr::Down { operand } => write!(f, "down({operand})"),
            SetExpr::Fs { seq } => write!(f, "fs({seq})"),
            SetExpr::Fp { seq } => write!(f, "fp({seq})"),
            SetExpr::Pseudo { count, chain } => {
                write!(f, "pseudo({count},")?;
                write_exprs(f, chain)?;
                write!(f, ")")
            }
            SetExpr::Construct { name, params } => {
                write!(f, "construct({name}")?;
                for p in params {
                    write!(f, ",{p}")?;
                }
                write!(f, ")")
            }
            SetExpr::File { path } => write!(f, "file(\"{path}\")"),
        }
    }
}
