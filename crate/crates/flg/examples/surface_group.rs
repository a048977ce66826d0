//! The genus-4 non-orientable surface group K: Dehn's algorithm, the
//! small-cancellation check that licenses it, retractions onto F_2, and
//! separation of finite sets through those retractions.
//!
//! Run with: cargo run --example surface_group

use flg::abelian::invariant_factors;
use flg::surface::{apply_retraction, Retraction, SeparationOutcome, SurfacePresentation};
use flg::word::parse_word;

fn main() {
    let k = SurfacePresentation::new();
    println!(
        "relator {} with {} symmetrized forms, max piece length {}",
        k.relator(),
        k.symmetrized().len(),
        k.max_piece_length()
    );

    // the word problem: conjugates of the relator die, short words survive
    let g = parse_word("dcBA", k.context()).unwrap();
    let conj = k.relator().conjugate(&g);
    let trace = k.dehn_reduce(&conj);
    println!(
        "dehn({conj}) -> {} in {} steps",
        trace.final_word,
        trace.steps.len()
    );

    let product = parse_word("abcd", k.context()).unwrap();
    println!("is a1a2a3a4 trivial in K? {}", k.is_trivial(&product));

    // abelianized, K is Z^3 + Z/2 and a1a2a3a4 generates the torsion
    let inv = invariant_factors(4, &[vec![2, 2, 2, 2]]).unwrap();
    println!(
        "K_ab: free rank {}, invariant factors {:?}",
        inv.free_rank, inv.factors
    );

    // the retraction family r_m; r_0 kills a1a2a3a4 but r_1 does not
    for m in 0..=1 {
        let image = apply_retraction(&Retraction::new(m), &product);
        println!("r_{m}(a1a2a3a4) = {image}");
    }

    match k.find_separating_retraction(&[product], 5).unwrap() {
        SeparationOutcome::Found { m } => println!("smallest separating m: {m}"),
        SeparationOutcome::NotFound { m_max } => println!("no separation up to m = {m_max}"),
    }
}
