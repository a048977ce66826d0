//! The genus of [a,b]^2: not a commutator (Wicks), but a product of two,
//! with a verified witness.
//!
//! Run with: cargo run --example genus_of_a_square

use flg::genus::{genus, is_commutator, verify_expression, CommutatorVerdict, GenusCertificate};
use flg::word::{parse_word, GroupContext};

fn main() {
    let ctx = GroupContext::new(2).unwrap();
    let w = parse_word("abABabAB", &ctx).unwrap();

    match is_commutator(&w, &ctx).unwrap() {
        CommutatorVerdict::Yes(expr) => println!("{w} = {expr}"),
        CommutatorVerdict::No => println!("{w} is not a single commutator"),
        CommutatorVerdict::NotInDerivedGroup => println!("{w} is not even in the derived subgroup"),
    }

    match genus(&w, &ctx, 3, 4).unwrap() {
        GenusCertificate::Exact { genus, witness } => {
            println!("genus({w}) = {genus}, witness {witness}");
            assert!(verify_expression(&witness, &w));
            println!("witness re-multiplies to the target: checked");
        }
        GenusCertificate::Bounds { lower, upper, .. } => {
            println!("genus({w}) in [{lower}, {upper:?}]");
        }
        GenusCertificate::NotInDerivedGroup => unreachable!("zero exponent vector"),
    }

    // a single commutator for contrast
    let c = parse_word("abAB", &ctx).unwrap();
    if let GenusCertificate::Exact { genus, .. } = genus(&c, &ctx, 3, 4).unwrap() {
        println!("genus({c}) = {genus}");
    }
}
