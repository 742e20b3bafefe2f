//! Recursive-descent parser for the expression DSL.
//!
//! ```text
//! sum     := ['+'|'-'] jterm (('+'|'-') jterm)*
//! jterm   := term ('o' term)*                  Jordan product, left-assoc
//! term    := [rational ['*']] factor (['*'] factor)*   product, left-assoc
//! factor  := primary ('^' int)*
//! primary := ident | '(' sum ')' | '(' sum ',' sum ',' sum ')'
//!          | '[' sum (',' sum)+ ']' | 'J(' sum ',' sum ',' sum ')'
//!          | 'D(' sum ',' sum ',' sum ')'
//! ```
//!
//! The identifier `o` is reserved for the Jordan product. The literal `0`
//! denotes the zero element; other bare scalars are rejected since the free
//! algebra has no unit.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::ops::{associator, dfun, jacobian, jordan, left_normed_comm, power};
use super::{Expr, GenSym, Parity};

/// Out-of-band parity declarations; undeclared names are even.
#[derive(Debug, Clone, Default)]
pub struct Parities {
    odd: HashSet<String>,
    even: HashSet<String>,
}

impl Parities {
    pub fn with_odd(names: &[&str]) -> Self {
        Parities { odd: names.iter().map(|s| s.to_string()).collect(), even: HashSet::new() }
    }

    pub fn declare(&mut self, name: &str, parity: Parity) {
        match parity {
            Parity::Odd => self.odd.insert(name.to_string()),
            Parity::Even => self.even.insert(name.to_string()),
        };
    }

    pub fn parity_of(&self, name: &str) -> Parity {
        Parity::from_bool(self.odd.contains(name))
    }

    fn validate(&self) -> Result<()> {
        if let Some(n) = self.odd.intersection(&self.even).next() {
            return Err(Error::ParityConflict(n.clone()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || matches!(chars[i].1, '_' | '.')) {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((Tok::Ident(s), pos));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((Tok::Num(s), pos));
        } else if "+-*/^(),[]".contains(c) {
            out.push((Tok::Sym(c), pos));
            i += 1;
        } else {
            return Err(Error::Syntax { pos, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    i: usize,
    end: usize,
    parities: &'a Parities,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |(_, p)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut neg = false;
        if self.eat('-') {
            neg = true;
        } else {
            self.eat('+');
        }
        let first = self.jterm()?;
        let mut acc = if neg { -first } else { first };
        loop {
            if self.eat('+') {
                acc = &acc + &self.jterm()?;
            } else if self.eat('-') {
                acc = &acc - &self.jterm()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn jterm(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        while self.peek() == Some(&Tok::Ident("o".into())) {
            self.i += 1;
            let rhs = self.term()?;
            acc = jordan(&acc, &rhs);
        }
        Ok(acc)
    }

    fn starts_factor(&self) -> bool {
        match self.peek() {
            Some(Tok::Ident(s)) => s != "o",
            Some(Tok::Sym('(')) | Some(Tok::Sym('[')) => true,
            _ => false,
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut coeff = None;
        if let Some(Tok::Num(n)) = self.peek().cloned() {
            self.i += 1;
            let mut lit = n;
            if self.eat('/') {
                match self.peek().cloned() {
                    Some(Tok::Num(d)) => {
                        self.i += 1;
                        lit = format!("{lit}/{d}");
                    }
                    _ => return self.err("expected denominator"),
                }
            }
            let c: Scalar = lit.parse().map_err(|_| Error::Syntax { pos: self.pos(), msg: format!("bad rational `{lit}`") })?;
            let star = self.eat('*');
            if !star && !self.starts_factor() {
                if c.is_zero() {
                    return Ok(Expr::zero());
                }
                return self.err("a scalar must multiply a product of generators");
            }
            coeff = Some(c);
        }
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.starts_factor() {
                acc = &acc * &self.factor()?;
            } else {
                break;
            }
        }
        Ok(match coeff {
            Some(c) => acc.scale(&c),
            None => acc,
        })
    }

    fn factor(&mut self) -> Result<Expr> {
        let mut base = self.primary()?;
        while self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.i += 1;
                    let k: usize = n.parse().map_err(|_| Error::Syntax { pos: self.pos(), msg: "bad exponent".into() })?;
                    if k == 0 {
                        return self.err("exponent must be positive");
                    }
                    base = power(&base, k);
                }
                _ => return self.err("expected exponent"),
            }
        }
        Ok(base)
    }

    fn args(&mut self, close: char) -> Result<Vec<Expr>> {
        let mut v = vec![self.sum()?];
        while self.eat(',') {
            v.push(self.sum()?);
        }
        self.expect(close)?;
        Ok(v)
    }

    fn primary(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.i += 1;
                if (name == "J" || name == "D") && self.peek() == Some(&Tok::Sym('(')) {
                    self.i += 1;
                    let a = self.args(')')?;
                    if a.len() != 3 {
                        return Err(Error::Syntax { pos, msg: format!("{name} takes three arguments") });
                    }
                    return Ok(if name == "J" { jacobian(&a[0], &a[1], &a[2]) } else { dfun(&a[0], &a[1], &a[2]) });
                }
                if name == "o" {
                    return Err(Error::Syntax { pos, msg: "`o` is the Jordan product operator".into() });
                }
                Ok(Expr::gen(&GenSym::new(&name, self.parities.parity_of(&name))))
            }
            Some(Tok::Sym('(')) => {
                self.i += 1;
                let a = self.args(')')?;
                match a.len() {
                    1 => Ok(a.into_iter().next().unwrap()),
                    3 => Ok(associator(&a[0], &a[1], &a[2])),
                    n => Err(Error::Syntax { pos, msg: format!("parenthesized group with {n} entries") }),
                }
            }
            Some(Tok::Sym('[')) => {
                self.i += 1;
                let a = self.args(']')?;
                if a.len() < 2 {
                    return Err(Error::Syntax { pos, msg: "commutator needs at least two entries".into() });
                }
                Ok(left_normed_comm(&a[0], &a[1..]))
            }
            Some(Tok::Sym(c)) => Err(Error::UnknownOperator { pos, op: c.to_string() }),
            Some(Tok::Num(_)) => self.err("unexpected number"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse `text` with the given parity declarations.
pub fn parse(text: &str, parities: &Parities) -> Result<Expr> {
    parities.validate()?;
    let toks = lex(text)?;
    let mut p = Parser { toks, i: 0, end: text.len(), parities };
    let e = p.sum()?;
    if p.i != p.toks.len() {
        return match p.peek() {
            Some(Tok::Sym(c)) if !"(),[]".contains(*c) => Err(Error::UnknownOperator { pos: p.pos(), op: c.to_string() }),
            _ => p.err("trailing input"),
        };
    }
    Ok(e)
}

/// Parse with odd generators given by name.
pub fn parse_with(text: &str, odd: &[&str]) -> Result<Expr> {
    parse(text, &Parities::with_odd(odd))
}
