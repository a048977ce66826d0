//! First-order sentences over free groups: a small term/formula language
//! with a strict ASCII syntax, prenex classification, sentence template
//! builders, exact evaluators for the template families, bounded model
//! checking over balls, and separation of non-conjugate pairs in finite
//! symmetric quotients.

mod ast;
mod bounded;
mod eval;
mod parse;
mod separate;
mod templates;

pub use ast::{Factor, FactorBase, Formula, Term};
pub use bounded::{bounded_check, BoundedOutcome, Verdict};
pub use eval::{eval_phi_n, eval_pi_p, eval_psi_pk, PhiOutcome, PiOutcome, PsiOutcome};
pub use parse::parse_formula;
pub use separate::{separate_conjugacy_finite, FiniteQuotientWitness, Perm};
pub use templates::{build_template, BuiltTemplate, Presentation, TemplateParams};

use crate::word::WordError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SentenceError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("formula is not in prenex form")]
    NotPrenex,
    #[error("invalid parameter: {what}")]
    InvalidParameter { what: String },
    #[error("evaluation budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("the two words are conjugate; no finite quotient separates them")]
    ArgsConjugate,
    #[error("no separating quotient found within degree {max_degree}")]
    NotFoundWithinBudget { max_degree: usize },
    #[error("free variable {name} in a sentence position")]
    FreeVariable { name: String },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Quantifier prefix class: Pi(m) for a leading universal block, Sigma(m)
/// for a leading existential block, Pi(0) for quantifier-free.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrenexClass {
    Pi(u32),
    Sigma(u32),
}

impl std::fmt::Display for PrenexClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PrenexClass::Pi(n) => write!(f, "Pi{n}"),
            PrenexClass::Sigma(n) => write!(f, "Sigma{n}"),
        }
    }
}

/// Counts alternating quantifier blocks of a prenex formula, exactly as
/// written: no vacuous-quantifier collapsing. Any quantifier below a
/// connective makes the formula non-prenex.
pub fn classify_prenex(f: &Formula) -> Result<PrenexClass, SentenceError> {
    let mut first: Option<bool> = None;
    let mut current: Option<bool> = None;
    let mut blocks = 0u32;
    let mut node = f;
    loop {
        let is_forall = match node {
            Formula::Forall(_, body) => {
                node = body;
                true
            }
            Formula::Exists(_, body) => {
                node = body;
                false
            }
            _ => break,
        };
        if current != Some(is_forall) {
            blocks += 1;
            current = Some(is_forall);
            first.get_or_insert(is_forall);
        }
    }
    if contains_quantifier(node) {
        return Err(SentenceError::NotPrenex);
    }
    Ok(match first {
        Some(true) | None => PrenexClass::Pi(blocks),
        Some(false) => PrenexClass::Sigma(blocks),
    })
}

fn contains_quantifier(f: &Formula) -> bool {
    match f {
        Formula::Atom(_, _) => false,
        Formula::Not(inner) => contains_quantifier(inner),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            contains_quantifier(a) || contains_quantifier(b)
        }
        Formula::Forall(_, _) | Formula::Exists(_, _) => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn classification_counts_blocks() {
        assert_eq!(classify_prenex(&parse("(x = 1)")).unwrap().to_string(), "Pi0");
        assert_eq!(
            classify_prenex(&parse("Ax Ay (x*y = y*x)")).unwrap(),
            PrenexClass::Pi(1)
        );
        assert_eq!(
            classify_prenex(&parse("Ax Ey (x = y*y)")).unwrap(),
            PrenexClass::Pi(2)
        );
        assert_eq!(
            classify_prenex(&parse("Ex Ay (x = y)")).unwrap(),
            PrenexClass::Sigma(2)
        );
        assert_eq!(
            classify_prenex(&parse("Ax Ey Az (!(x = 1) -> (y = z))")).unwrap(),
            PrenexClass::Pi(3)
        );
    }

    #[test]
    fn quantifier_under_connective_is_not_prenex() {
        let f = parse("(Ax (x = 1) & (y = 1))");
        assert_eq!(classify_prenex(&f), Err(SentenceError::NotPrenex));
        let g = parse("!(Ex (x = 1))");
        assert_eq!(classify_prenex(&g), Err(SentenceError::NotPrenex));
    }
}
