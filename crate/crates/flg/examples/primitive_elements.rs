//! Whitehead's algorithm: minimizing word length over the automorphism orbit
//! and testing primitivity (membership in some basis).
//!
//! Run with: cargo run --example primitive_elements

use flg::whitehead::{enumerate_whitehead, is_primitive, minimize_length};
use flg::word::{parse_word, GroupContext};

fn main() {
    let ctx = GroupContext::new(2).unwrap();
    let autos = enumerate_whitehead(&ctx).unwrap();
    println!("rank 2 has {} Whitehead automorphisms", autos.len());

    // a conjugate of a generator is primitive; minimization strips the peel
    let w = parse_word("BBabb", &ctx).unwrap();
    let trace = minimize_length(&w, &ctx).unwrap();
    println!(
        "{} minimizes to {} in {} steps",
        trace.initial,
        trace.minimal,
        trace.steps.len()
    );
    for (auto, word) in &trace.steps {
        println!("  apply {:?} -> {word}", auto.kind());
    }
    println!("is_primitive({w}) = {}", is_primitive(&w, &ctx).unwrap());

    // the commutator is not primitive: its minimal length stays 4
    let comm = parse_word("abAB", &ctx).unwrap();
    println!(
        "is_primitive({comm}) = {}",
        is_primitive(&comm, &ctx).unwrap()
    );

    // no proper power is primitive
    let square = parse_word("abab", &ctx).unwrap();
    println!(
        "is_primitive({square}) = {}",
        is_primitive(&square, &ctx).unwrap()
    );
}
