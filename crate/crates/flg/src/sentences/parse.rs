//! Lexer and recursive-descent parser for the formula syntax.
//!
//! Quantifiers are Av / Ev with variables [a-z][0-9]*, connectives & | -> !,
//! atoms t1 = t2 with the sugar t1 != t2 for the negation, terms are
//! *-separated factors with postfix ' for inverses, 1 for the identity, and
//! free-group constants in angle brackets such as <a>. Binary connectives
//! must be parenthesized.

use super::ast::{Factor, FactorBase, Formula, Term};
use super::SentenceError;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Forall(String),
    Exists(String),
    Var(String),
    Const(char),
    One,
    LParen,
    RParen,
    Amp,
    Pipe,
    Arrow,
    Bang,
    BangEq,
    Eq,
    Star,
    Prime,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Forall(v) => format!("A{v}"),
            Tok::Exists(v) => format!("E{v}"),
            Tok::Var(v) => v.clone(),
            Tok::Const(c) => format!("<{c}>"),
            Tok::One => "1".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::Amp => "&".into(),
            Tok::Pipe => "|".into(),
            Tok::Arrow => "->".into(),
            Tok::Bang => "!".into(),
            Tok::BangEq => "!=".into(),
            Tok::Eq => "=".into(),
            Tok::Star => "*".into(),
            Tok::Prime => "'".into(),
        }
    }
}

fn err(position: usize, message: impl Into<String>) -> SentenceError {
    SentenceError::Syntax {
        position,
        message: message.into(),
    }
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>, SentenceError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '(' => {
                toks.push((Tok::LParen, start));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, start));
                i += 1;
            }
            '&' => {
                toks.push((Tok::Amp, start));
                i += 1;
            }
            '|' => {
                toks.push((Tok::Pipe, start));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, start));
                i += 1;
            }
            '\'' => {
                toks.push((Tok::Prime, start));
                i += 1;
            }
            '=' => {
                toks.push((Tok::Eq, start));
                i += 1;
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((Tok::Arrow, start));
                    i += 2;
                } else {
                    return Err(err(start, "expected -> after -"));
                }
            }
            '!' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    toks.push((Tok::BangEq, start));
                    i += 2;
                } else {
                    toks.push((Tok::Bang, start));
                    i += 1;
                }
            }
            '1' => {
                toks.push((Tok::One, start));
                i += 1;
            }
            '<' => {
                let inner = bytes
                    .get(i + 1)
                    .map(|&b| b as char)
                    .filter(|c| c.is_ascii_alphabetic());
                let Some(letter) = inner else {
                    return Err(err(start, "expected a letter inside <>"));
                };
                if bytes.get(i + 2) != Some(&b'>') {
                    return Err(err(start, "unclosed constant bracket"));
                }
                toks.push((Tok::Const(letter), start));
                i += 3;
            }
            'A' | 'E' => {
                i += 1;
                let name = lex_varname(bytes, &mut i)
                    .ok_or_else(|| err(start, format!("expected a variable after {c}")))?;
                toks.push((
                    if c == 'A' { Tok::Forall(name) } else { Tok::Exists(name) },
                    start,
                ));
            }
            'a'..='z' => {
                let name = lex_varname(bytes, &mut i).expect("first char already matched");
                toks.push((Tok::Var(name), start));
            }
            other => return Err(err(start, format!("unexpected character {other:?}"))),
        }
    }
    Ok(toks)
}

fn lex_varname(bytes: &[u8], i: &mut usize) -> Option<String> {
    let c = *bytes.get(*i)? as char;
    if !c.is_ascii_lowercase() {
        return None;
    }
    let start = *i;
    *i += 1;
    while bytes.get(*i).is_some_and(|b| b.is_ascii_digit()) {
        *i += 1;
    }
    Some(String::from_utf8(bytes[start..*i].to_vec()).unwrap())
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |&(_, p)| p)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: &Tok) -> Result<(), SentenceError> {
        match self.next() {
            Some(ref t) if t == want => Ok(()),
            Some(t) => Err(err(
                self.toks[self.pos - 1].1,
                format!("expected {}, found {}", want.describe(), t.describe()),
            )),
            None => Err(err(self.end, format!("expected {}", want.describe()))),
        }
    }

    fn formula(&mut self) -> Result<Formula, SentenceError> {
        match self.peek() {
            Some(Tok::Forall(_)) => {
                let Some(Tok::Forall(v)) = self.next() else { unreachable!() };
                Ok(Formula::Forall(v, Box::new(self.formula()?)))
            }
            Some(Tok::Exists(_)) => {
                let Some(Tok::Exists(v)) = self.next() else { unreachable!() };
                Ok(Formula::Exists(v, Box::new(self.formula()?)))
            }
            Some(Tok::Bang) => {
                self.next();
                self.expect(&Tok::LParen)?;
                Ok(Formula::not(self.group_body()?))
            }
            Some(Tok::LParen) => {
                self.next();
                self.group_body()
            }
            Some(_) => self.atom(),
            None => Err(err(self.end, "expected a formula")),
        }
    }

    /// What follows an opening parenthesis: either a single grouped formula
    /// or exactly one binary connective, then the closing parenthesis.
    fn group_body(&mut self) -> Result<Formula, SentenceError> {
        let first = self.formula()?;
        match self.next() {
            Some(Tok::RParen) => Ok(first),
            Some(Tok::Amp) => {
                let second = self.formula()?;
                self.expect(&Tok::RParen)?;
                Ok(Formula::and(first, second))
            }
            Some(Tok::Pipe) => {
                let second = self.formula()?;
                self.expect(&Tok::RParen)?;
                Ok(Formula::or(first, second))
            }
            Some(Tok::Arrow) => {
                let second = self.formula()?;
                self.expect(&Tok::RParen)?;
                Ok(Formula::implies(first, second))
            }
            Some(t) => Err(err(
                self.toks[self.pos - 1].1,
                format!("expected a connective or ), found {}", t.describe()),
            )),
            None => Err(err(self.end, "unclosed parenthesis")),
        }
    }

    fn atom(&mut self) -> Result<Formula, SentenceError> {
        let left = self.term()?;
        match self.next() {
            Some(Tok::Eq) => Ok(Formula::Atom(left, self.term()?)),
            Some(Tok::BangEq) => Ok(Formula::not(Formula::Atom(left, self.term()?))),
            Some(t) => Err(err(
                self.toks[self.pos - 1].1,
                format!("expected = or !=, found {}", t.describe()),
            )),
            None => Err(err(self.end, "expected = or !=")),
        }
    }

    fn term(&mut self) -> Result<Term, SentenceError> {
        let mut factors = Vec::new();
        self.factor(&mut factors)?;
        while self.peek() == Some(&Tok::Star) {
            self.next();
            self.factor(&mut factors)?;
        }
        Ok(Term::new(factors))
    }

    /// Identity factors are dropped: 1 and 1' contribute nothing to the
    /// product, so the printed form is canonical.
    fn factor(&mut self, out: &mut Vec<Factor>) -> Result<(), SentenceError> {
        let base = match self.next() {
            Some(Tok::Var(v)) => Some(FactorBase::Var(v)),
            Some(Tok::Const(c)) => Some(FactorBase::Const(c)),
            Some(Tok::One) => None,
            Some(t) => {
                return Err(err(
                    self.toks[self.pos - 1].1,
                    format!("expected a factor, found {}", t.describe()),
                ))
            }
            None => return Err(err(self.end, "expected a factor")),
        };
        let mut inverted = false;
        while self.peek() == Some(&Tok::Prime) {
            self.next();
            inverted = !inverted;
        }
        if let Some(base) = base {
            out.push(Factor { base, inverted });
        }
        Ok(())
    }
}

pub fn parse_formula(input: &str) -> Result<Formula, SentenceError> {
    let toks = lex(input)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: input.len(),
    };
    let f = p.formula()?;
    if let Some(t) = p.peek() {
        return Err(err(p.here(), format!("trailing input starting at {}", t.describe())));
    }
    Ok(f)
}
