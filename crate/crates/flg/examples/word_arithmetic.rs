//! Basic free-group arithmetic: reduction, conjugacy, roots, abelianization.
//!
//! Run with: cargo run --example word_arithmetic

use flg::word::{
    are_conjugate, ball, exponent_vector, extract_root, parse_word, GroupContext,
};

fn main() {
    let ctx = GroupContext::new(2).unwrap();

    let w = parse_word("abBA", &ctx).unwrap();
    println!("abBA reduces to {w} (length {})", w.len());

    let u = parse_word("ab", &ctx).unwrap();
    let v = parse_word("Babb", &ctx).unwrap();
    match are_conjugate(&u, &v) {
        Some(g) => {
            println!("{u} and {v} are conjugate via g={g}");
            assert_eq!(u.conjugate(&g), v);
        }
        None => println!("{u} and {v} are not conjugate"),
    }

    let w = parse_word("ababab", &ctx).unwrap();
    let dec = extract_root(&w).unwrap();
    println!("{w} = ({})^{}", dec.root, dec.exponent);

    let comm = parse_word("abAB", &ctx).unwrap();
    let ev = exponent_vector(&comm, &ctx).unwrap();
    println!(
        "exponent vector of {comm} is {:?}; zero means it lies in the derived subgroup",
        ev.entries()
    );

    let b2 = ball(&ctx, 2);
    println!(
        "the radius-2 ball has {} elements, starting {}, {}, {}",
        b2.len(),
        b2[0],
        b2[1],
        b2[2]
    );
}
