//! Separating conjugacy classes in finite symmetric-group quotients: a
//! homomorphism to S_n under which two words get different cycle types
//! proves them non-conjugate everywhere.
//!
//! Run with: cargo run --example conjugacy_separation

use flg::sentences::{separate_conjugacy_finite, SentenceError};
use flg::word::{parse_word, GroupContext};

fn main() {
    let ctx = GroupContext::new(2).unwrap();
    let w = |s: &str| parse_word(s, &ctx).unwrap();

    // a and a^2 separate already in S_2: send a to the transposition
    let witness = separate_conjugacy_finite(&w("a"), &w("aa"), &ctx, 6, 100, 7).unwrap();
    println!(
        "a vs aa: separated at degree {} (cycle types {:?} vs {:?})",
        witness.degree, witness.u_cycle_type, witness.w_cycle_type
    );
    for (i, perm) in witness.images.iter().enumerate() {
        println!("  generator {} -> {:?}", (b'a' + i as u8) as char, perm.images());
    }

    // conjugate inputs are rejected up front
    match separate_conjugacy_finite(&w("ab"), &w("Babb"), &ctx, 6, 100, 7) {
        Err(SentenceError::ArgsConjugate) => println!("ab vs Babb: rejected, they are conjugate"),
        other => println!("unexpected: {other:?}"),
    }

    // a^4 vs a^8 cannot be told apart by cycle types in degree <= 6:
    // the search reports its budget honestly
    match separate_conjugacy_finite(&w("aaaa"), &w("aaaaaaaa"), &ctx, 6, 500, 7) {
        Err(SentenceError::NotFoundWithinBudget { max_degree }) => {
            println!("a^4 vs a^8: no separation found within degree {max_degree}")
        }
        Ok(witness) => println!("separated at degree {}", witness.degree),
        Err(e) => println!("error: {e}"),
    }
}
