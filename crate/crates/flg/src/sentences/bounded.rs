//! Bounded model checking: quantifiers relativized to a ball in the free
//! group.
//!
//! Soundness contract: atoms are decided exactly by word arithmetic, so a
//! true purely existential result is a genuine witness (Satisfied), and a
//! false purely universal result is a genuine counterexample (Refuted with
//! exact = true). Every mixed-prefix outcome is approximate and says so.

use super::ast::{FactorBase, Formula, Term};
use super::SentenceError;
use crate::word::{ball, GroupContext, Word};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Satisfied { witnesses: Vec<(String, Word)> },
    BoundedSatisfied { radius: usize },
    Refuted { counterexample: Vec<(String, Word)> },
    NoWitnessWithinBudget { radius: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedOutcome {
    pub verdict: Verdict,
    /// True when the verdict decides the unrelativized sentence.
    pub exact: bool,
    pub radius: usize,
    pub evaluations: u64,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Quant {
    Forall,
    Exists,
}

struct Checker<'a> {
    prefix: Vec<(Quant, String)>,
    matrix: &'a Formula,
    ball: Vec<Word>,
    budget: u64,
    evaluations: u64,
    assignment: HashMap<String, Word>,
}

impl Checker<'_> {
    fn run(&mut self, depth: usize) -> Result<bool, SentenceError> {
        let Some((quant, var)) = self.prefix.get(depth).cloned() else {
            self.evaluations += 1;
            if self.evaluations > self.budget {
                return Err(SentenceError::BudgetExceeded { budget: self.budget });
            }
            return eval_formula(self.matrix, &self.assignment);
        };
        for idx in 0..self.ball.len() {
            self.assignment.insert(var.clone(), self.ball[idx].clone());
            let sub = self.run(depth + 1)?;
            match quant {
                Quant::Forall if !sub => return Ok(false),
                Quant::Exists if sub => return Ok(true),
                _ => {}
            }
        }
        Ok(quant == Quant::Forall)
    }
}

fn eval_formula(
    f: &Formula,
    assignment: &HashMap<String, Word>,
) -> Result<bool, SentenceError> {
    Ok(match f {
        Formula::Atom(l, r) => eval_term(l, assignment)? == eval_term(r, assignment)?,
        Formula::Not(inner) => !eval_formula(inner, assignment)?,
        Formula::And(a, b) => eval_formula(a, assignment)? && eval_formula(b, assignment)?,
        Formula::Or(a, b) => eval_formula(a, assignment)? || eval_formula(b, assignment)?,
        Formula::Implies(a, b) => !eval_formula(a, assignment)? || eval_formula(b, assignment)?,
        Formula::Forall(_, _) | Formula::Exists(_, _) => {
            unreachable!("matrix checked quantifier-free")
        }
    })
}

fn eval_term(t: &Term, assignment: &HashMap<String, Word>) -> Result<Word, SentenceError> {
    let mut acc = Word::empty();
    for factor in t.factors() {
        let base = match &factor.base {
            FactorBase::Var(name) => assignment
                .get(name)
                .cloned()
                .ok_or_else(|| SentenceError::FreeVariable { name: name.clone() })?,
            FactorBase::Const(c) => {
                let mut buf = [0u8; 4];
                let ctx = GroupContext::new(crate::word::MAX_RANK).expect("max rank is valid");
                crate::word::parse_word(c.encode_utf8(&mut buf), &ctx)?
            }
        };
        acc = acc.multiply(&if factor.inverted { base.inverse() } else { base });
    }
    Ok(acc)
}

/// Checks the prenex sentence with every quantifier ranging over the ball of
/// the given radius. The leading block's assignment is reported: witnesses
/// when an existential lead succeeds, a counterexample when a universal lead
/// fails.
pub fn bounded_check(
    f: &Formula,
    ctx: &GroupContext,
    radius: usize,
    budget: u64,
) -> Result<BoundedOutcome, SentenceError> {
    let mut prefix = Vec::new();
    let mut node = f;
    loop {
        match node {
            Formula::Forall(v, body) => {
                prefix.push((Quant::Forall, v.clone()));
                node = body;
            }
            Formula::Exists(v, body) => {
                prefix.push((Quant::Exists, v.clone()));
                node = body;
            }
            _ => break,
        }
    }
    if super::contains_quantifier(node) {
        return Err(SentenceError::NotPrenex);
    }
    let mut checker = Checker {
        prefix: prefix.clone(),
        matrix: node,
        ball: ball(ctx, radius),
        budget,
        evaluations: 0,
        assignment: HashMap::new(),
    };
    let holds = checker.run(0)?;
    let lead = prefix.first().map(|&(q, _)| q);
    let lead_block: Vec<String> = {
        let mut names = Vec::new();
        for &(q, ref v) in &prefix {
            if Some(q) != lead {
                break;
            }
            names.push(v.clone());
        }
        names
    };
    let all_forall = prefix.iter().all(|&(q, _)| q == Quant::Forall);
    let all_exists = prefix.iter().all(|&(q, _)| q == Quant::Exists);
    // On short-circuit the assignment still holds the leading block's values.
    let block_values = |checker: &Checker| {
        lead_block
            .iter()
            .map(|v| (v.clone(), checker.assignment[v].clone()))
            .collect::<Vec<_>>()
    };
    let (verdict, exact) = match (holds, lead) {
        (true, None) => (Verdict::Satisfied { witnesses: vec![] }, true),
        (true, Some(Quant::Exists)) if all_exists => {
            (Verdict::Satisfied { witnesses: block_values(&checker) }, true)
        }
        (true, _) => (Verdict::BoundedSatisfied { radius }, false),
        (false, None) => (Verdict::Refuted { counterexample: vec![] }, true),
        (false, Some(Quant::Forall)) => (
            Verdict::Refuted { counterexample: block_values(&checker) },
            all_forall,
        ),
        (false, Some(Quant::Exists)) => (Verdict::NoWitnessWithinBudget { radius }, false),
    };
    Ok(BoundedOutcome {
        verdict,
        exact,
        radius,
        evaluations: checker.evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sentences::parse_formula;
    use crate::sentences::templates::{build_template, BuiltTemplate, TemplateParams};
    use crate::word::parse_word;

    fn ctx2() -> GroupContext {
        GroupContext::new(2).unwrap()
    }

    fn check(s: &str, radius: usize) -> BoundedOutcome {
        bounded_check(&parse_formula(s).unwrap(), &ctx2(), radius, 10_000_000).unwrap()
    }

    #[test]
    fn existential_witness_is_exact() {
        let out = check("Ey (y*y = <a>*<a>)", 1);
        assert!(out.exact);
        match out.verdict {
            Verdict::Satisfied { witnesses } => {
                assert_eq!(witnesses, vec![("y".to_string(), parse_word("a", &ctx2()).unwrap())]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn universal_counterexample_is_exact() {
        let out = check("Ax (x = 1)", 1);
        assert!(out.exact);
        match out.verdict {
            Verdict::Refuted { counterexample } => {
                assert_eq!(
                    counterexample,
                    vec![("x".to_string(), parse_word("a", &ctx2()).unwrap())]
                );
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn mixed_prefix_is_approximate() {
        let out = check("Ax Ey (y*y = x)", 1);
        assert!(!out.exact);
        assert!(matches!(out.verdict, Verdict::Refuted { .. }));
        let out = check("Ax Ey (x*y = y*x)", 1);
        assert!(!out.exact);
        assert_eq!(out.verdict, Verdict::BoundedSatisfied { radius: 1 });
    }

    #[test]
    fn existential_miss_reports_no_witness() {
        let out = check("Ey (y*y = <a>)", 2);
        assert!(!out.exact);
        assert_eq!(out.verdict, Verdict::NoWitnessWithinBudget { radius: 2 });
    }

    #[test]
    fn budget_is_enforced() {
        let err = bounded_check(
            &parse_formula("Ax Ay (x*y = y*x)").unwrap(),
            &ctx2(),
            2,
            10,
        )
        .unwrap_err();
        assert_eq!(err, SentenceError::BudgetExceeded { budget: 10 });
    }

    #[test]
    fn sigma_gnk_has_no_bounded_counterexample() {
        let BuiltTemplate::Single(f) =
            build_template(&TemplateParams::SigmaGNK { g: 1, n: 2, k: 1 }).unwrap()
        else {
            panic!()
        };
        let out = bounded_check(&f, &ctx2(), 3, 50_000_000).unwrap();
        assert_eq!(out.verdict, Verdict::BoundedSatisfied { radius: 3 });
    }

    #[test]
    fn non_prenex_is_rejected() {
        let f = parse_formula("(Ax (x = 1) & (1 = 1))").unwrap();
        assert_eq!(
            bounded_check(&f, &ctx2(), 1, 100).unwrap_err(),
            SentenceError::NotPrenex
        );
    }
}
