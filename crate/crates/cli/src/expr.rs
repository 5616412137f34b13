//! Group expressions: `NAME(args)` with integer, nested-expression or quoted
//! string arguments, e.g. `Wreath(Cyclic(3), Sym(3))` or `PermFile("tits_1600.txt")`.

use std::fmt;

use clpforge_core::arith::{is_prime, prime_power};
use clpforge_core::perm::MAX_DEGREE;

/// Largest matrix dimension accepted by the parser.
pub const MAX_MATRIX_DIM: u64 = 16;
/// Largest field order accepted by the parser.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    GL,
    SL,
    SU,
    PSL,
    PSU,
}

impl MatrixKind {
    pub const ALL: [MatrixKind; 5] = [MatrixKind::GL, MatrixKind::SL, MatrixKind::SU, MatrixKind::PSL, MatrixKind::PSU];

    pub fn name(self) -> &'static str {
        match self {
            MatrixKind::GL => "GL",
            MatrixKind::SL => "SL",
            MatrixKind::SU => "SU",
            MatrixKind::PSL => "PSL",
            MatrixKind::PSU => "PSU",
        }
    }

    pub fn is_projective(self) -> bool {
        matches!(self, MatrixKind::PSL | MatrixKind::PSU)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupExpr {
    Cyclic(usize),
    Sym(usize),
    Alt(usize),
    Direct(Box<GroupExpr>, Box<GroupExpr>),
    Wreath(Box<GroupExpr>, Box<GroupExpr>),
    WeirSylowGL { n: usize, q: u64, p: u64 },
    Matrix { kind: MatrixKind, n: usize, q: u64 },
    PermFile(String),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown constructor {name:?} at position {pos}")]
    UnknownConstructor { pos: usize, name: String },
    #[error("argument error at position {pos}: {message}")]
    ArgRange { pos: usize, message: String },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. } | ParseError::UnknownConstructor { pos, .. } | ParseError::ArgRange { pos, .. } => {
                *pos
            }
        }
    }
}

enum Arg {
    Int(u64),
    Expr(GroupExpr),
    Str(String),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

fn syntax(pos: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { pos, message: message.into() }
}

fn range(pos: usize, message: impl Into<String>) -> ParseError {
    ParseError::ArgRange { pos, message: message.into() }
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(syntax(self.pos, format!("expected '{want}', found '{c}'"))),
            None => Err(syntax(self.pos, format!("expected '{want}', found end of input"))),
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if !f(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn expr(&mut self) -> Result<GroupExpr, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => {}
            Some(c) => return Err(syntax(start, format!("expected a constructor name, found '{c}'"))),
            None => return Err(syntax(start, "expected a constructor name, found end of input")),
        }
        let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
        if !KNOWN.contains(&name) {
            return Err(ParseError::UnknownConstructor { pos: start, name: name.to_string() });
        }
        self.expect('(')?;
        let mut args = Vec::new();
        self.skip_ws();
        if self.peek() == Some(')') {
            self.pos += 1;
        } else {
            loop {
                args.push(self.arg()?);
                self.skip_ws();
                match self.peek() {
                    Some(',') => self.pos += 1,
                    Some(')') => {
                        self.pos += 1;
                        break;
                    }
                    Some(c) => return Err(syntax(self.pos, format!("expected ',' or ')', found '{c}'"))),
                    None => return Err(syntax(self.pos, "unclosed '('")),
                }
            }
        }
        build(name, start, args)
    }

    fn arg(&mut self) -> Result<(usize, Arg), ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                let v = digits.parse().map_err(|_| range(start, format!("integer {digits} is too large")))?;
                Ok((start, Arg::Int(v)))
            }
            Some('"') => {
                self.pos += 1;
                let mut s = String::new();
                loop {
                    match self.peek() {
                        None => return Err(syntax(start, "unterminated string")),
                        Some('"') => {
                            self.pos += 1;
                            break;
                        }
                        Some('\\') => {
                            self.pos += 1;
                            match self.peek() {
                                Some(c @ ('"' | '\\')) => {
                                    s.push(c);
                                    self.pos += 1;
                                }
                                _ => return Err(syntax(self.pos, "only \\\" and \\\\ escapes are allowed")),
                            }
                        }
                        Some(c) => {
                            s.push(c);
                            self.pos += c.len_utf8();
                        }
                    }
                }
                Ok((start, Arg::Str(s)))
            }
            _ => Ok((start, Arg::Expr(self.expr()?))),
        }
    }
}

const KNOWN: [&str; 12] = ["Cyclic", "Sym", "Alt", "Direct", "Wreath", "WeirSylowGL", "GL", "SL", "SU", "PSL", "PSU", "PermFile"];

fn build(name: &str, pos: usize, args: Vec<(usize, Arg)>) -> Result<GroupExpr, ParseError> {
    let arity = match name {
        "Cyclic" | "Sym" | "Alt" | "PermFile" => 1,
        "WeirSylowGL" => 3,
        _ => 2,
    };
    if args.len() != arity {
        return Err(range(pos, format!("{name} takes {arity} argument(s), got {}", args.len())));
    }
    let int = |i: usize, lo: u64, hi: u64| -> Result<u64, ParseError> {
        match &args[i] {
            (_, Arg::Int(v)) if (lo..=hi).contains(v) => Ok(*v),
            (p, Arg::Int(v)) => Err(range(*p, format!("{name} argument {} = {v} is outside {lo}..={hi}", i + 1))),
            (p, _) => Err(range(*p, format!("{name} argument {} must be an integer", i + 1))),
        }
    };
    let field = |i: usize| -> Result<u64, ParseError> {
        let q = int(i, 2, MAX_FIELD_ORDER)?;
        if prime_power(q).is_none() {
            return Err(range(args[i].0, format!("{q} is not a prime power")));
        }
        Ok(q)
    };
    let sub = |i: usize| -> Result<Box<GroupExpr>, ParseError> {
        match &args[i] {
            (_, Arg::Expr(e)) => Ok(Box::new(e.clone())),
            (p, _) => Err(range(*p, format!("{name} argument {} must be a group expression", i + 1))),
        }
    };
    let degree = MAX_DEGREE as u64;
    Ok(match name {
        "Cyclic" => GroupExpr::Cyclic(int(0, 1, degree)? as usize),
        "Sym" => GroupExpr::Sym(int(0, 2, degree)? as usize),
        "Alt" => GroupExpr::Alt(int(0, 2, degree)? as usize),
        "Direct" => GroupExpr::Direct(sub(0)?, sub(1)?),
        "Wreath" => GroupExpr::Wreath(sub(0)?, sub(1)?),
        "WeirSylowGL" => {
            let n = int(0, 1, degree)? as usize;
            let q = field(1)?;
            let p = int(2, 2, u32::MAX as u64)?;
            if !is_prime(p) {
                return Err(range(args[2].0, format!("{p} is not prime")));
            }
            GroupExpr::WeirSylowGL { n, q, p }
        }
        "PermFile" => match &args[0] {
            (_, Arg::Str(s)) => GroupExpr::PermFile(s.clone()),
            (p, _) => return Err(range(*p, "PermFile takes a quoted path")),
        },
        _ => {
            let kind = *MatrixKind::ALL.iter().find(|k| k.name() == name).expect("known constructor");
            GroupExpr::Matrix { kind, n: int(0, 1, MAX_MATRIX_DIM)? as usize, q: field(1)? }
        }
    })
}

pub fn parse_group(text: &str) -> Result<GroupExpr, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(syntax(p.pos, "trailing input"));
    }
    Ok(e)
}

impl std::str::FromStr for GroupExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<GroupExpr, ParseError> {
        parse_group(s)
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Cyclic(n) => write!(f, "Cyclic({n})"),
            GroupExpr::Sym(n) => write!(f, "Sym({n})"),
            GroupExpr::Alt(n) => write!(f, "Alt({n})"),
            GroupExpr::Direct(a, b) => write!(f, "Direct({a},{b})"),
            GroupExpr::Wreath(a, b) => write!(f, "Wreath({a},{b})"),
            GroupExpr::WeirSylowGL { n, q, p } => write!(f, "WeirSylowGL({n},{q},{p})"),
            GroupExpr::Matrix { kind, n, q } => write!(f, "{}({n},{q})", kind.name()),
            GroupExpr::PermFile(path) => {
                f.write_str("PermFile(\"")?;
                for c in path.chars() {
                    if c == '"' || c == '\\' {
                        f.write_str("\\")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str("\")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        assert_eq!(parse_group("PSL(3,19)").unwrap(), GroupExpr::Matrix { kind: MatrixKind::PSL, n: 3, q: 19 });
        let w = parse_group(" Wreath( Cyclic(3) ,Cyclic(3) ) ").unwrap();
        assert_eq!(w, GroupExpr::Wreath(Box::new(GroupExpr::Cyclic(3)), Box::new(GroupExpr::Cyclic(3))));
        assert_eq!(w.to_string(), "Wreath(Cyclic(3),Cyclic(3))");
        assert_eq!(parse_group(r#"PermFile("a \"b\".txt")"#).unwrap(), GroupExpr::PermFile("a \"b\".txt".into()));
    }

    #[test]
    fn reports_errors_with_positions() {
        assert!(matches!(parse_group("PSL(3)"), Err(ParseError::ArgRange { pos: 0, .. })));
        assert!(matches!(parse_group("PSL(3,6)"), Err(ParseError::ArgRange { pos: 6, .. })));
        assert!(matches!(parse_group("Sym(1)"), Err(ParseError::ArgRange { pos: 4, .. })));
        assert_eq!(
            parse_group("Direct(Sym(3), Foo(2))").unwrap_err(),
            ParseError::UnknownConstructor { pos: 15, name: "Foo".into() }
        );
        assert_eq!(parse_group("Sym(3").unwrap_err().position(), 5);
        assert_eq!(parse_group("Sym(3))").unwrap_err().position(), 6);
        assert!(matches!(parse_group("Direct(3, Sym(3))"), Err(ParseError::ArgRange { pos: 7, .. })));
        assert!(matches!(parse_group("WeirSylowGL(3,7,4)"), Err(ParseError::ArgRange { pos: 16, .. })));
        assert!(matches!(parse_group("Cyclic(99999999999999999999)"), Err(ParseError::ArgRange { .. })));
    }
}
