//! Terms and formulas, with the canonical printer.
//!
//! Printing rules: atoms and binary connectives wrap themselves in
//! parentheses, Not prints as !(...) around the unwrapped operand, and
//! inequation sugar t1 != t2 always prints in the expanded form !(t1 = t2).

use std::fmt;

use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorBase {
    Var(String),
    Const(char),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub base: FactorBase,
    pub inverted: bool,
}

/// A product of factors; the empty product is the identity and prints as 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Term {
    factors: Vec<Factor>,
}

impl Term {
    pub fn identity() -> Term {
        Term { factors: Vec::new() }
    }

    pub fn new(factors: Vec<Factor>) -> Term {
        Term { factors }
    }

    pub fn var(name: &str) -> Term {
        Term {
            factors: vec![Factor {
                base: FactorBase::Var(name.to_string()),
                inverted: false,
            }],
        }
    }

    pub fn constant(c: char) -> Term {
        Term {
            factors: vec![Factor {
                base: FactorBase::Const(c),
                inverted: false,
            }],
        }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    /// Concatenation of products.
    pub fn times(&self, other: &Term) -> Term {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Term { factors }
    }

    /// base^e as e repeated factors; e = 0 gives the identity.
    pub fn power(name: &str, e: u32) -> Term {
        Term {
            factors: (0..e)
                .map(|_| Factor {
                    base: FactorBase::Var(name.to_string()),
                    inverted: false,
                })
                .collect(),
        }
    }

    pub fn inverse(&self) -> Term {
        Term {
            factors: self
                .factors
                .iter()
                .rev()
                .map(|f| Factor {
                    base: f.base.clone(),
                    inverted: !f.inverted,
                })
                .collect(),
        }
    }

    /// Replaces every occurrence of the variable by the word, rendered as
    /// constant factors.
    pub fn substitute(&self, var: &str, w: &Word) -> Term {
        let mut factors = Vec::new();
        for f in &self.factors {
            match &f.base {
                FactorBase::Var(name) if name == var => {
                    let expanded = if f.inverted { w.inverse() } else { w.clone() };
                    for letter in expanded.letters() {
                        factors.push(Factor {
                            base: FactorBase::Const(if letter.is_inverse() {
                                letter.inverse().to_char()
                            } else {
                                letter.to_char()
                            }),
                            inverted: letter.is_inverse(),
                        });
                    }
                }
                _ => factors.push(f.clone()),
            }
        }
        Term { factors }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            match &factor.base {
                FactorBase::Var(name) => write!(f, "{name}")?,
                FactorBase::Const(c) => write!(f, "<{c}>")?,
            }
            if factor.inverted {
                write!(f, "'")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Atom(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn atom(l: Term, r: Term) -> Formula {
        Formula::Atom(l, r)
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall(v: &str, f: Formula) -> Formula {
        Formula::Forall(v.to_string(), Box::new(f))
    }

    pub fn exists(v: &str, f: Formula) -> Formula {
        Formula::Exists(v.to_string(), Box::new(f))
    }

    /// Left fold of a nonempty conjunction list.
    pub fn conjunction(mut parts: Vec<Formula>) -> Option<Formula> {
        if parts.is_empty() {
            return None;
        }
        let rest = parts.split_off(1);
        Some(rest.into_iter().fold(parts.pop().unwrap(), Formula::and))
    }

    /// Left fold of a nonempty disjunction list.
    pub fn disjunction(mut parts: Vec<Formula>) -> Option<Formula> {
        if parts.is_empty() {
            return None;
        }
        let rest = parts.split_off(1);
        Some(rest.into_iter().fold(parts.pop().unwrap(), Formula::or))
    }

    /// Capture-aware substitution of a concrete word for a free variable;
    /// quantifiers rebinding the name shield their bodies.
    pub fn substitute(&self, var: &str, w: &Word) -> Formula {
        match self {
            Formula::Atom(l, r) => {
                Formula::Atom(l.substitute(var, w), r.substitute(var, w))
            }
            Formula::Not(f) => Formula::not(f.substitute(var, w)),
            Formula::And(a, b) => Formula::and(a.substitute(var, w), b.substitute(var, w)),
            Formula::Or(a, b) => Formula::or(a.substitute(var, w), b.substitute(var, w)),
            Formula::Implies(a, b) => {
                Formula::implies(a.substitute(var, w), b.substitute(var, w))
            }
            Formula::Forall(v, body) if v == var => {
                Formula::Forall(v.clone(), body.clone())
            }
            Formula::Forall(v, body) => {
                Formula::Forall(v.clone(), Box::new(body.substitute(var, w)))
            }
            Formula::Exists(v, body) if v == var => {
                Formula::Exists(v.clone(), body.clone())
            }
            Formula::Exists(v, body) => {
                Formula::Exists(v.clone(), Box::new(body.substitute(var, w)))
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(l, r) => write!(f, "({l} = {r})"),
            Formula::Not(inner) => {
                write!(f, "!(")?;
                write_bare(f, inner)?;
                write!(f, ")")
            }
            Formula::And(_, _) | Formula::Or(_, _) | Formula::Implies(_, _) => {
                write!(f, "(")?;
                write_bare(f, self)?;
                write!(f, ")")
            }
            Formula::Forall(v, body) => write!(f, "A{v} {body}"),
            Formula::Exists(v, body) => write!(f, "E{v} {body}"),
        }
    }
}

/// The formula without its own outer parentheses, for splicing directly
/// inside an enclosing pair; prefix forms print whole.
fn write_bare(f: &mut fmt::Formatter<'_>, formula: &Formula) -> fmt::Result {
    match formula {
        Formula::Atom(l, r) => write!(f, "{l} = {r}"),
        Formula::And(a, b) => write!(f, "{a} & {b}"),
        Formula::Or(a, b) => write!(f, "{a} | {b}"),
        Formula::Implies(a, b) => write!(f, "{a} -> {b}"),
        other => write!(f, "{other}"),
    }
}
