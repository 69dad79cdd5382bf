//! Recursive-descent parser for set expressions.

use super::ast::{Param, SeqSpec, SetExpr, MAX_SEQUENCE_LEN};
use crate::constructions::{FIXTURE_NAMES, SEQUENCE_RULES};
use crate::error::{Error, Result};

/// Nesting limit; keeps recursion bounded on hostile input.
const MAX_DEPTH: usize = 200;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Nat(u64),
    Str(String),
    Punct(char),
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Nat(n) => format!("number {n}"),
        Tok::Str(s) => format!("string \"{s}\""),
        Tok::Punct(c) => format!("`{c}`"),
        Tok::Eof => "end of input".into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1usize, 1usize);
    let mut i = 0;
    let err = |line, column, message: String| Error::Syntax { line, column, message };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            let n = s
                .parse::<u64>()
                .map_err(|_| Error::ParameterRange(format!("number {s} does not fit in 64 bits")))?;
            out.push(Token { tok: Tok::Nat(n), line: l0, column: c0 });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            column += i - start;
            let s: String = chars[start..i].iter().collect();
            out.push(Token { tok: Tok::Ident(s), line: l0, column: c0 });
            continue;
        }
        if c == '"' {
            let start = i + 1;
            i += 1;
            while i < chars.len() && chars[i] != '"' {
                if chars[i] == '\n' || chars[i] == '\\' {
                    return Err(err(line, column + (i - start) + 1, "unsupported character in string".into()));
                }
                i += 1;
            }
            if i >= chars.len() {
                return Err(err(l0, c0, "unterminated string".into()));
            }
            let s: String = chars[start..i].iter().collect();
            i += 1;
            column += s.chars().count() + 2;
            out.push(Token { tok: Tok::Str(s), line: l0, column: c0 });
            continue;
        }
        if "(){}[],".contains(c) {
            out.push(Token { tok: Tok::Punct(c), line: l0, column: c0 });
            column += 1;
            i += 1;
            continue;
        }
        return Err(err(l0, c0, format!("unexpected character `{c}`")));
    }
    out.push(Token { tok: Tok::Eof, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(t: &Token, message: String) -> Error {
        Error::Syntax { line: t.line, column: t.column, message }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        let t = self.next();
        if t.tok == Tok::Punct(c) {
            Ok(())
        } else {
            Err(Self::error_at(&t, format!("expected `{c}`, found {}", describe(&t.tok))))
        }
    }

    fn at(&self, c: char) -> bool {
        self.peek().tok == Tok::Punct(c)
    }

    fn nat(&mut self, what: &str) -> Result<u64> {
        let t = self.next();
        match t.tok {
            Tok::Nat(n) => Ok(n),
            ref other => Err(Self::error_at(&t, format!("expected {what}, found {}", describe(other)))),
        }
    }

    fn positive(&mut self, what: &str) -> Result<u64> {
        let n = self.nat(what)?;
        if n == 0 {
            return Err(Error::ParameterRange(format!("{what} must be at least 1")));
        }
        Ok(n)
    }

    /// Comma-separated naturals up to (not including) `close`.
    fn natlist(&mut self, close: char) -> Result<Vec<u64>> {
        let mut v = Vec::new();
        if self.at(close) {
            return Ok(v);
        }
        loop {
            let n = self.nat("a natural number")?;
            if n == 0 {
                return Err(Error::ParameterRange("set elements must be at least 1".into()));
            }
            v.push(n);
            if self.at(',') {
                self.next();
            } else {
                return Ok(v);
            }
        }
    }

    fn param(&mut self) -> Result<Param> {
        let t = self.next();
        match t.tok {
            Tok::Nat(n) => Ok(Param::Nat(n)),
            Tok::Ident(s) => Ok(Param::Ident(s)),
            Tok::Str(s) => Ok(Param::Str(s)),
            Tok::Punct('[') => {
                let v = self.natlist(']')?;
                self.expect(']')?;
                Ok(Param::List(v))
            }
            ref other => Err(Self::error_at(&t, format!("expected a parameter, found {}", describe(other)))),
        }
    }

    fn seq(&mut self) -> Result<SeqSpec> {
        let t = self.next();
        match t.tok {
            Tok::Punct('[') => {
                let terms = self.natlist(']')?;
                self.expect(']')?;
                if terms.is_empty() {
                    return Err(Error::ParameterRange("a sequence needs at least one term".into()));
                }
                if terms.len() > MAX_SEQUENCE_LEN {
                    return Err(Error::ParameterRange(format!(
                        "sequences are limited to {MAX_SEQUENCE_LEN} terms"
                    )));
                }
                Ok(SeqSpec::Explicit { terms })
            }
            Tok::Ident(name) => {
                if !SEQUENCE_RULES.contains(&name.as_str()) {
                    return Err(Error::UnknownGenerator { name, catalog: SEQUENCE_RULES.join(", ") });
                }
                self.expect('(')?;
                let mut params = Vec::new();
                if !self.at(')') {
                    loop {
                        params.push(self.param()?);
                        if self.at(',') {
                            self.next();
                        } else {
                            break;
                        }
                    }
                }
                self.expect(')')?;
                Ok(SeqSpec::Rule { name, params })
            }
            ref other => Err(Self::error_at(&t, format!("expected a sequence, found {}", describe(other)))),
        }
    }

    fn exprs(&mut self) -> Result<Vec<SetExpr>> {
        let mut v = vec![self.expr()?];
        while self.at(',') {
            self.next();
            v.push(self.expr()?);
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<SetExpr> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            let t = self.peek().clone();
            return Err(Self::error_at(&t, format!("expression nested deeper than {MAX_DEPTH}")));
        }
        let r = self.expr_inner();
        self.depth -= 1;
        r
    }

    fn expr_inner(&mut self) -> Result<SetExpr> {
        let t = self.next();
        let name = match t.tok {
            Tok::Punct('{') => {
                let v = self.natlist('}')?;
                self.expect('}')?;
                return Ok(SetExpr::explicit(v));
            }
            Tok::Ident(ref s) => s.clone(),
            ref other => {
                return Err(Self::error_at(&t, format!("expected a set expression, found {}", describe(other))))
            }
        };
        match name.as_str() {
            "N" => return Ok(SetExpr::All),
            "primes" => return Ok(SetExpr::Primes),
            "odd" => return Ok(SetExpr::odd()),
            _ => {}
        }
        if !self.at('(') {
            return Err(Self::error_at(&t, format!("unknown set name `{name}`")));
        }
        self.next();
        let e = match name.as_str() {
            "mult" => SetExpr::Mult { k: self.positive("mult modulus")? },
            "level" => {
                let n = self.nat("level index")?;
                let n = u32::try_from(n)
                    .ok()
                    .filter(|&n| n <= 64)
                    .ok_or_else(|| Error::ParameterRange("level index must be at most 64".into()))?;
                SetExpr::Level { n }
            }
            "ap" => {
                let a = self.positive("progression start")?;
                self.expect(',')?;
                let d = self.positive("progression step")?;
                SetExpr::Ap { a, d }
            }
            "union" => SetExpr::Union { operands: self.exprs()? },
            "inter" => SetExpr::Inter { operands: self.exprs()? },
            "compl" => SetExpr::compl(self.expr()?),
            "up" => SetExpr::up(self.expr()?),
            "down" => SetExpr::down(self.expr()?),
            "dilate" => {
                let k = self.positive("dilation factor")?;
                self.expect(',')?;
                SetExpr::dilate(k, self.expr()?)
            }
            "quot" => {
                let e = self.expr()?;
                self.expect(',')?;
                SetExpr::quot(e, self.positive("quotient divisor")?)
            }
            "shift" => {
                let e = self.expr()?;
                self.expect(',')?;
                SetExpr::shift(e, self.nat("shift amount")?)
            }
            "fs" => SetExpr::Fs { seq: self.seq()? },
            "fp" => SetExpr::Fp { seq: self.seq()? },
            "pseudo" => {
                let count = self.positive("pseudointersection length")?;
                self.expect(',')?;
                let chain = self.exprs()?;
                if (chain.len() as u64) < count.saturating_add(1) {
                    return Err(Error::ParameterRange(format!(
                        "pseudo of length {count} needs chain members X0..X{count}, got {}",
                        chain.len()
                    )));
                }
                SetExpr::Pseudo { count, chain }
            }
            "construct" => {
                let nt = self.next();
                let fname = match nt.tok {
                    Tok::Ident(s) => s,
                    ref other => {
                        return Err(Self::error_at(&nt, format!("expected a fixture name, found {}", describe(other))))
                    }
                };
                if !FIXTURE_NAMES.contains(&fname.as_str()) {
                    return Err(Error::UnknownGenerator { name: fname, catalog: FIXTURE_NAMES.join(", ") });
                }
                let mut params = Vec::new();
                while self.at(',') {
                    self.next();
                    params.push(self.param()?);
                }
                SetExpr::Construct { name: fname, params }
            }
            "file" => {
                let st = self.next();
                match st.tok {
                    Tok::Str(path) => SetExpr::File { path },
                    ref other => {
                        return Err(Self::error_at(&st, format!("expected a quoted path, found {}", describe(other))))
                    }
                }
            }
            _ => return Err(Self::error_at(&t, format!("unknown set constructor `{name}`"))),
        };
        self.expect(')')?;
        Ok(e)
    }
}

/// Parses one set expression.
pub fn parse(text: &str) -> Result<SetExpr> {
    let mut p = Parser { toks: lex(text)?, pos: 0, depth: 0 };
    let e = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::Eof {
        return Err(Parser::error_at(&t, format!("unexpected {} after expression", describe(&t.tok))));
    }
    Ok(e)
}
