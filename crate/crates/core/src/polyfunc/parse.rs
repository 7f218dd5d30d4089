//! Text form of polymorphic expressions.
//!
//! ```text
//! expr := sum
//! sum  := poly ( '+' poly )*
//! poly := prod ( GATE prod )*
//! prod := atom ( '*' atom )*
//! atom := '~'? ( VAR | CONST | '(' expr ')' )
//! ```
//!
//! `+` is OR/OR and `*` is AND/AND; every level is left-associative.

use std::fmt;

use super::{Op, PolyExpr, PolyGate, PolyValue};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown operator {name:?} at {pos}")]
    UnknownOperator { pos: usize, name: String },
    #[error("malformed gate pair at {pos}: {msg}")]
    MalformedGate { pos: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Star,
    Tilde,
    LParen,
    RParen,
    Var(u16),
    Const(PolyValue),
    Gate(PolyGate),
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    let word_end = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_alphanumeric() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => toks.push((start, Tok::Plus)),
            b'*' => toks.push((start, Tok::Star)),
            b'~' => toks.push((start, Tok::Tilde)),
            b'(' => toks.push((start, Tok::LParen)),
            b')' => toks.push((start, Tok::RParen)),
            b'0' | b'1' => {
                let ok = bytes.get(i + 1) == Some(&b'/')
                    && matches!(bytes.get(i + 2), Some(b'0' | b'1'))
                    && !bytes.get(i + 3).is_some_and(|b| b.is_ascii_alphanumeric());
                if !ok {
                    return Err(syntax(start, "constant must be one of 0/0, 0/1, 1/0, 1/1"));
                }
                let value = PolyValue::new(c == b'1', bytes[i + 2] == b'1');
                toks.push((start, Tok::Const(value)));
                i += 3;
                continue;
            }
            b'x' if bytes.get(i + 1).is_some_and(|b| b.is_ascii_digit()) => {
                let end = word_end(i + 1);
                let digits = &text[i + 1..end];
                if !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(syntax(
                        start,
                        format!("bad variable name {:?}", &text[i..end]),
                    ));
                }
                let var: u16 = digits.parse().ok().filter(|&v| v >= 1).ok_or_else(|| {
                    syntax(start, format!("variable index out of range: x{digits}"))
                })?;
                toks.push((start, Tok::Var(var)));
                i = end;
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let end = word_end(i);
                let first = &text[i..end];
                let op1 = first
                    .parse::<Op>()
                    .map_err(|name| ParseError::UnknownOperator { pos: start, name })?;
                if bytes.get(end) != Some(&b'/') {
                    return Err(ParseError::MalformedGate {
                        pos: start,
                        msg: format!("expected '/' after {first}"),
                    });
                }
                let second_start = end + 1;
                let second_end = word_end(second_start);
                if second_end == second_start {
                    return Err(ParseError::MalformedGate {
                        pos: start,
                        msg: format!("missing second operator after {first}/"),
                    });
                }
                let op2 = text[second_start..second_end]
                    .parse::<Op>()
                    .map_err(|name| ParseError::UnknownOperator {
                        pos: second_start,
                        name,
                    })?;
                toks.push((start, Tok::Gate(PolyGate::new(op1, op2))));
                i = second_end;
                continue;
            }
            _ => {
                return Err(syntax(
                    start,
                    format!("unexpected character {:?}", c as char),
                ))
            }
        }
        i += 1;
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn sum(&mut self) -> Result<PolyExpr, ParseError> {
        let mut acc = self.poly()?;
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            acc = PolyExpr::gate(PolyGate::OR, acc, self.poly()?);
        }
        Ok(acc)
    }

    fn poly(&mut self) -> Result<PolyExpr, ParseError> {
        let mut acc = self.prod()?;
        while let Some(Tok::Gate(g)) = self.peek() {
            let g = *g;
            self.pos += 1;
            acc = PolyExpr::gate(g, acc, self.prod()?);
        }
        Ok(acc)
    }

    fn prod(&mut self) -> Result<PolyExpr, ParseError> {
        let mut acc = self.atom()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = PolyExpr::gate(PolyGate::AND, acc, self.atom()?);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<PolyExpr, ParseError> {
        let negate = self.peek() == Some(&Tok::Tilde);
        if negate {
            self.pos += 1;
        }
        let at = self.offset();
        let tok = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        let e = match tok {
            Some(Tok::Var(v)) => PolyExpr::lit(v),
            Some(Tok::Const(c)) => PolyExpr::Const(c),
            Some(Tok::LParen) => {
                let inner = self.sum()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(syntax(self.offset(), "expected ')'"));
                }
                self.pos += 1;
                inner
            }
            Some(_) => return Err(syntax(at, "expected variable, constant or '('")),
            None => return Err(syntax(at, "unexpected end of input")),
        };
        Ok(if negate { e.complement() } else { e })
    }
}

pub fn parse_expr(text: &str) -> Result<PolyExpr, ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
        end: text.len(),
    };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(syntax(p.offset(), "unexpected trailing input"));
    }
    Ok(e)
}

/// Binding strength of the operator at the root of `e`.
fn level(e: &PolyExpr) -> u8 {
    match e {
        PolyExpr::Gate(g, ..) if *g == PolyGate::OR => 0,
        PolyExpr::Gate(g, ..) if *g == PolyGate::AND => 2,
        PolyExpr::Gate(..) => 1,
        _ => 3,
    }
}

fn write_expr(e: &PolyExpr, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    match e {
        PolyExpr::Const(v) => write!(out, "{v}"),
        PolyExpr::Literal { var, negated } => {
            write!(out, "{}x{var}", if *negated { "~" } else { "" })
        }
        PolyExpr::Gate(g, l, r) => {
            let lv = level(e);
            let wrap = |child: &PolyExpr, parens: bool, out: &mut fmt::Formatter<'_>| {
                if parens {
                    out.write_str("(")?;
                    write_expr(child, out)?;
                    out.write_str(")")
                } else {
                    write_expr(child, out)
                }
            };
            wrap(l, level(l) < lv, out)?;
            match lv {
                0 => out.write_str(" + ")?,
                2 => out.write_str(" * ")?,
                _ => write!(out, " {g} ")?,
            }
            wrap(r, level(r) <= lv, out)
        }
    }
}

impl fmt::Display for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(self, f)
    }
}

pub fn print_expr(expr: &PolyExpr) -> String {
    expr.to_string()
}

impl std::str::FromStr for PolyExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_expr(s)
    }
}
