//! Szmielew invariants decide elementary equivalence of the abelian groups
//! this crate models: direct sums of Z, localized Z[S^-1], and finite cyclic
//! groups.
//!
//! Run with: cargo run --example szmielew_invariants

use flg::abelian::{
    elementarily_equivalent, localized_quotient_structure, parse_group, rank_table,
    szmielew_ranks, PrimeSet,
};

fn main() {
    let z = parse_group("Z").unwrap();
    let z_half = parse_group("Z[1/2]").unwrap();
    let z4 = parse_group("Z/4").unwrap();

    for g in [&z, &z_half, &z4] {
        let (r1, r2, r3) = szmielew_ranks(g, 2, 1).unwrap();
        println!("{g}: rho1={r1} rho2={r2} rho3={r3} at (p,k)=(2,1)");
    }

    // inverting 2 changes the theory: rho2 at p=2 drops to zero
    println!(
        "Z equivalent to Z[1/2]? {}",
        elementarily_equivalent(&z, &z_half)
    );

    // structure is finer than theory: Z/6 and Z/2+Z/3 are distinct descriptors
    let z6 = parse_group("Z/6").unwrap();
    let z2z3 = parse_group("Z/2 + Z/3").unwrap();
    println!(
        "{z6} equivalent to {z2z3}? {}",
        elementarily_equivalent(&z6, &z2z3)
    );

    let table = rank_table(&parse_group("Z^2 + Z/8").unwrap(), &[2, 3], 3).unwrap();
    println!("rank table for Z^2 + Z/8 (exponent {:?}):", table.exponent_class);
    for entry in &table.entries {
        println!(
            "  p={} k={}: rho1={} rho2={} rho3={}",
            entry.p, entry.k, entry.rho1, entry.rho2, entry.rho3
        );
    }

    // quotients of a localized group by prime powers: trivial exactly when
    // the prime was inverted
    let s = PrimeSet::new(vec![2, 3]).unwrap();
    for (p, k) in [(2, 3), (3, 1), (5, 2), (7, 1)] {
        let order = localized_quotient_structure(&s, p, k).unwrap();
        println!("Z[1/2,1/3] / {p}^{k} has order {order}");
    }
}
