//! Bounded model checking: quantifiers range over a ball in the free group.
//! Some verdicts are exact for the whole group; the rest are honestly marked
//! as bounded.
//!
//! Run with: cargo run --example bounded_model_check

use flg::sentences::{bounded_check, parse_formula, Verdict};
use flg::word::GroupContext;

fn report(formula: &str, radius: usize) {
    let ctx = GroupContext::new(2).unwrap();
    let f = parse_formula(formula).unwrap();
    let outcome = bounded_check(&f, &ctx, radius, 1_000_000).unwrap();
    let exact = if outcome.exact { "exact" } else { "bounded" };
    print!("{formula}  (radius {radius}, {} evals): ", outcome.evaluations);
    match outcome.verdict {
        Verdict::Satisfied { witnesses } => {
            let parts: Vec<String> = witnesses
                .iter()
                .map(|(v, w)| format!("{v}={w}"))
                .collect();
            println!("satisfied [{exact}] {}", parts.join(" "));
        }
        Verdict::BoundedSatisfied { radius } => {
            println!("satisfied within radius {radius} [bounded]");
        }
        Verdict::Refuted { counterexample } => {
            let parts: Vec<String> = counterexample
                .iter()
                .map(|(v, w)| format!("{v}={w}"))
                .collect();
            println!("refuted [{exact}] {}", parts.join(" "));
        }
        Verdict::NoWitnessWithinBudget { radius } => {
            println!("no witness within radius {radius} [bounded]");
        }
    }
}

fn main() {
    // an existential truth: a has a square root's square... a*a is a square
    report("Ey (y*y = <a>*<a>)", 1);

    // a refuted universal: the counterexample decides the full group
    report("Ax (x = 1)", 1);

    // a is not a square in the free group, but a bounded search can only
    // report absence of witnesses in the ball
    report("Ey (y*y = <a>)", 3);

    // commutativity fails; mixed prefix, so the counterexample is exact here
    report("Ax Ay (x*y = y*x)", 1);

    // a genuine two-block sentence: squares of genus one are single
    // commutators (trivially, with u = x and w = y)
    report(
        "Az Ax1 Ay1 Eu1 Ew1 ((z*z = x1*y1*x1'*y1') -> (z = u1*w1*u1'*w1'))",
        2,
    );
}
