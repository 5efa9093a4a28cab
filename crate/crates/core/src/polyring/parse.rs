//! Text form: identifiers, integer and `a/b` literals, `+ - * ^`, parentheses.

use num_bigint::BigInt;

use super::poly::{vars, Poly, Vars};
use super::scalar::{Rational, Ring};
use super::PolyError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Op(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let num: BigInt = text[start..i].parse().expect("digits");
            // `a/b` is only a literal, never division of expressions.
            let mut den = BigInt::from(1);
            let mut j = i;
            while j < bytes.len() && bytes[j].is_ascii_whitespace() {
                j += 1;
            }
            if j < bytes.len() && bytes[j] == b'/' {
                j += 1;
                while j < bytes.len() && bytes[j].is_ascii_whitespace() {
                    j += 1;
                }
                let ds = j;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if ds == j {
                    return Err(syntax(ds, "expected integer denominator after `/`"));
                }
                den = text[ds..j].parse().expect("digits");
                if den == BigInt::from(0) {
                    return Err(syntax(ds, "zero denominator"));
                }
                i = j;
            }
            out.push((start, Tok::Num(Rational::from_parts(num, den).expect("nonzero"))));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if "+-*^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(syntax(i, &format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

fn syntax(pos: usize, msg: &str) -> PolyError {
    PolyError::Parse {
        pos,
        msg: msg.to_string(),
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    vars: &'a Vars,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn expr(&mut self) -> Result<Poly<Rational>, PolyError> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.at += 1;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly<Rational>, PolyError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op('*')) = self.peek() {
            self.at += 1;
            let rhs = self.unary()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly<Rational>, PolyError> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.at += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Op('+')) => {
                self.at += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly<Rational>, PolyError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.at += 1;
            let pos = self.pos();
            match self.peek().cloned() {
                Some(Tok::Num(n)) if n.is_integer() => {
                    self.at += 1;
                    let e: u32 = n
                        .numer()
                        .try_into()
                        .map_err(|_| syntax(pos, "exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(syntax(pos, "expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly<Rational>, PolyError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(Poly::constant(self.vars, n))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                let i = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| PolyError::UnknownVariable { pos, name: name.clone() })?;
                Ok(Poly::var(self.vars, i))
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.at += 1;
                        Ok(inner)
                    }
                    _ => Err(syntax(self.pos(), "expected `)`")),
                }
            }
            Some(t) => Err(syntax(pos, &format!("unexpected token {t:?}"))),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }
}

/// Parses `text` in the ring with the given variables.
pub fn parse(text: &str, ring: &Vars) -> Result<Poly<Rational>, PolyError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
        vars: ring,
    };
    let out = p.expr()?;
    if p.at != p.toks.len() {
        return Err(syntax(p.pos(), "trailing input"));
    }
    Ok(out)
}

/// Parses `text`, taking the variables in order of first appearance.
pub fn parse_auto(text: &str) -> Result<Poly<Rational>, PolyError> {
    let mut names: Vec<String> = Vec::new();
    for (_, t) in lex(text)? {
        if let Tok::Ident(s) = t {
            if !names.contains(&s) {
                names.push(s);
            }
        }
    }
    parse(text, &vars(&names))
}

/// Canonical text form; inverse of [`parse`].
pub fn format<R: Ring>(p: &Poly<R>) -> String {
    p.to_string()
}
