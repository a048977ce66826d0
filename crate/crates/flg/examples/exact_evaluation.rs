//! Exact template evaluation on commuting free-group arguments. Every
//! positive outcome carries an explicit witness y.
//!
//! Run with: cargo run --example exact_evaluation

use flg::sentences::{eval_phi_n, eval_pi_p, eval_psi_pk, PhiOutcome, PiOutcome, PsiOutcome};
use flg::word::{parse_word, GroupContext};

fn main() {
    let ctx = GroupContext::new(2).unwrap();
    let w = |s: &str| parse_word(s, &ctx).unwrap();

    // phi_2: x1 and x2 commute with x0 = a, so some mixed power x1^i x2^j
    // with (i,j) != (0,0) must be a square modulo the centralizer of a
    match eval_phi_n(2, &w("a"), &w("a"), &w("aa"), &ctx).unwrap() {
        PhiOutcome::Satisfied { i, j, y } => {
            println!("phi_2(a, a, aa): satisfied with (i,j)=({i},{j}), y={y}")
        }
        PhiOutcome::HypothesisFalse => println!("phi_2: hypothesis false"),
    }

    // psi_{2,1} on x0 = a^2: the root disjunct fires
    match eval_psi_pk(2, 1, &w("aa"), &w("aaaaaa"), &ctx).unwrap() {
        PsiOutcome::SatisfiedRoot { y } => println!("psi_2,1(a^2, a^6): x0 = y^2 with y={y}"),
        PsiOutcome::SatisfiedShift { i, y } => println!("psi: shifted disjunct i={i}, y={y}"),
        PsiOutcome::HypothesisFalse => println!("psi: hypothesis false"),
    }

    // psi_{2,2} on x0 = a, x1 = a^5: 5 is odd, so the shift i with
    // x1 = x0^i y^4 must satisfy i = 1 (mod 4)
    match eval_psi_pk(2, 2, &w("a"), &w("aaaaa"), &ctx).unwrap() {
        PsiOutcome::SatisfiedShift { i, y } => {
            println!("psi_2,2(a, a^5): shifted disjunct i={i}, y={y}")
        }
        other => println!("psi_2,2(a, a^5): {other:?}"),
    }

    // pi_3: in a free group every nontrivial x has some y commuting with it
    // that is not a cube, namely the root of x
    match eval_pi_p(3, &w("abab"), &ctx).unwrap() {
        PiOutcome::Satisfied { y } => println!("pi_3(abab): witness y={y}"),
        PiOutcome::HypothesisFalse => println!("pi_3: hypothesis false"),
    }

    // the hypothesis fails when the arguments do not commute
    match eval_phi_n(2, &w("a"), &w("b"), &w("aa"), &ctx).unwrap() {
        PhiOutcome::HypothesisFalse => println!("phi_2(a, b, aa): hypothesis false, as expected"),
        other => println!("unexpected: {other:?}"),
    }
}
