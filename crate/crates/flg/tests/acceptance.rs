//! Acceptance gate: ten end-to-end criteria, one test and one printed
//! verdict line each. Run with `cargo test --test acceptance -- --nocapture`
//! to see every line.

use std::collections::HashSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use flg::abelian::{
    definitional_szmielew_ranks, elementarily_equivalent, invariant_factors,
    localized_quotient_structure, szmielew_ranks, AbelianGroup, FgAbelianGroup, PrimeSet,
};
use flg::genus::{
    duncan_howie_scan, f_lower_table, genus, is_commutator, verify_expression, CommutatorVerdict,
    FLowerBound, GenusCertificate,
};
use flg::sentences::{
    build_template, classify_prenex, eval_phi_n, eval_pi_p, eval_psi_pk, parse_formula,
    separate_conjugacy_finite, BuiltTemplate, Perm, PhiOutcome, PiOutcome, PrenexClass,
    Presentation, PsiOutcome, SentenceError, TemplateParams,
};
use flg::surface::{SeparationOutcome, SurfacePresentation};
use flg::whitehead::{enumerate_whitehead, is_primitive};
use flg::word::{
    are_conjugate, ball, exponent_vector, extract_root, free_reduce, is_proper_power, parse_word,
    reduced_words_of_length, Word,
};
use flg::GroupContext;

fn random_word(rng: &mut ChaCha8Rng, ctx: &GroupContext, min_len: usize, max_len: usize) -> Word {
    let r = ctx.rank() as i32;
    loop {
        let len = rng.gen_range(min_len..=max_len);
        let values: Vec<i32> = (0..len)
            .map(|_| {
                let v = rng.gen_range(1..=r);
                if rng.gen_bool(0.5) {
                    v
                } else {
                    -v
                }
            })
            .collect();
        let w = free_reduce(&values, ctx).unwrap();
        if w.len() >= min_len {
            return w;
        }
    }
}

#[test]
fn criterion_01_wicks_matches_brute_force() {
    let start = Instant::now();
    let ctx = GroupContext::new(2).unwrap();
    let entries = ball(&ctx, 8);

    // oracle: the set of all single-commutator values of length at most 8;
    // a commutator of length L always has a witness pair of lengths <= L,
    // so membership here decides every word of length <= 8
    let commutators: HashSet<Word> = entries
        .par_iter()
        .map(|x| {
            let mut local = HashSet::new();
            for y in &entries {
                let c = Word::commutator(x, y);
                if c.len() <= 8 {
                    local.insert(c);
                }
            }
            local
        })
        .reduce(HashSet::new, |mut a, mut b| {
            if a.len() < b.len() {
                std::mem::swap(&mut a, &mut b);
            }
            a.extend(b);
            a
        });

    let mut checked = 0usize;
    for len in (0..=8).step_by(2) {
        for w in reduced_words_of_length(&ctx, len) {
            if !w.is_cyclically_reduced() || !exponent_vector(&w, &ctx).unwrap().is_zero() {
                continue;
            }
            checked += 1;
            let says_yes = match is_commutator(&w, &ctx).unwrap() {
                CommutatorVerdict::Yes(expr) => {
                    assert_eq!(expr.evaluate(), w, "witness for {w} does not multiply back");
                    true
                }
                CommutatorVerdict::No => false,
                CommutatorVerdict::NotInDerivedGroup => {
                    panic!("{w} has zero exponent vector")
                }
            };
            assert_eq!(says_yes, commutators.contains(&w), "disagreement on {w}");
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 300, "took {elapsed:?}, budget five minutes");
    println!(
        "ACCEPTANCE 1: PASS - wicks agrees with the brute-force oracle on all {checked} \
         cyclically reduced derived-subgroup words of length <= 8 ({:.1}s)",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_02_genus_of_commutator_square_is_two() {
    let start = Instant::now();
    let ctx = GroupContext::new(2).unwrap();
    let w = parse_word("abABabAB", &ctx).unwrap();
    let cert = genus(&w, &ctx, 3, 5).unwrap();
    match &cert {
        GenusCertificate::Exact { genus, witness } => {
            assert_eq!(*genus, 2);
            assert!(verify_expression(witness, &w));
        }
        other => panic!("expected an exact genus, got {other:?}"),
    }
    println!(
        "ACCEPTANCE 2: PASS - genus of the squared commutator is exactly 2 with a verified \
         witness ({:.1}s)",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_03_scan_finds_no_violations() {
    let start = Instant::now();
    let ctx = GroupContext::new(2).unwrap();
    let report = duncan_howie_scan(&ctx, 6, 4, 2, 5).unwrap();
    assert!(report.violations.is_empty(), "violations: {:?}", report.violations);
    assert!(report.checked > 0);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 600, "took {elapsed:?}, budget ten minutes");
    println!(
        "ACCEPTANCE 3: PASS - scan over {} instances (L<=6, n<=4, g<=2, B=5) reports zero \
         violations of n < 2g ({:.1}s)",
        report.checked,
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_04_f_lower_boundary_cases() {
    let ctx = GroupContext::new(2).unwrap();
    let empty = f_lower_table(&ctx, 1, 2, 6, 4).unwrap();
    assert_eq!(empty.result, FLowerBound::NoInstances, "n=2 exceeds 2g-1 for g=1");
    let one = f_lower_table(&ctx, 1, 1, 6, 4).unwrap();
    match one.result {
        FLowerBound::Value { value, ref witness_z } => {
            assert_eq!(value, 1);
            assert!(!witness_z.is_empty());
        }
        FLowerBound::NoInstances => panic!("g=1, n=1 has instances"),
    }
    println!(
        "ACCEPTANCE 4: PASS - f(1,2) has an empty instance window and f(1,1) = 1 over \
         lengths <= 6"
    );
}

#[test]
fn criterion_05_evaluators_on_commuting_instances() {
    let start = Instant::now();
    let ctx = GroupContext::new(2).unwrap();
    let commute = |a: &Word, b: &Word| a.multiply(b) == b.multiply(a);
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    let base = |rng: &mut ChaCha8Rng| {
        let t = random_word(rng, &ctx, 1, 4);
        let g = random_word(rng, &ctx, 0, 3);
        (t, g)
    };
    let nonzero = |rng: &mut ChaCha8Rng| loop {
        let e = rng.gen_range(-4i64..=4);
        if e != 0 {
            break e;
        }
    };

    for n in [2u32, 3, 4] {
        for _ in 0..10_000 {
            let (t, g) = base(&mut rng);
            let x0 = t.pow(nonzero(&mut rng)).conjugate(&g);
            let x1 = t.pow(rng.gen_range(-4..=4)).conjugate(&g);
            let x2 = t.pow(rng.gen_range(-4..=4)).conjugate(&g);
            match eval_phi_n(n, &x0, &x1, &x2, &ctx).unwrap() {
                PhiOutcome::Satisfied { i, j, y } => {
                    assert!((i, j) != (0, 0) && i < n && j < n);
                    assert_eq!(
                        x1.pow(i as i64).multiply(&x2.pow(j as i64)),
                        y.pow(n as i64),
                        "phi witness fails for n={n}"
                    );
                    assert!(commute(&x0, &y));
                }
                PhiOutcome::HypothesisFalse => panic!("commuting instance rejected"),
            }
        }
    }

    for (p, k) in [(2u64, 1u32), (2, 2), (3, 1), (3, 2)] {
        let m = p.pow(k) as i64;
        for _ in 0..10_000 {
            let (t, g) = base(&mut rng);
            let x0 = t.pow(nonzero(&mut rng)).conjugate(&g);
            let x1 = t.pow(rng.gen_range(-4..=4)).conjugate(&g);
            match eval_psi_pk(p, k, &x0, &x1, &ctx).unwrap() {
                PsiOutcome::SatisfiedRoot { y } => {
                    assert_eq!(x0, y.pow(p as i64), "psi root witness fails");
                }
                PsiOutcome::SatisfiedShift { i, y } => {
                    assert!((i as i64) < m);
                    assert_eq!(
                        x1,
                        x0.pow(i as i64).multiply(&y.pow(m)),
                        "psi shift witness fails for p={p} k={k}"
                    );
                }
                PsiOutcome::HypothesisFalse => panic!("commuting instance rejected"),
            }
        }
    }

    for p in [2u64, 3] {
        for _ in 0..10_000 {
            let (t, g) = base(&mut rng);
            let x = t.pow(nonzero(&mut rng)).conjugate(&g);
            match eval_pi_p(p, &x, &ctx).unwrap() {
                PiOutcome::Satisfied { y } => {
                    assert!(commute(&x, &y));
                    let e = extract_root(&y).unwrap().exponent as u64;
                    assert!(e % p != 0, "y is a p-th power, not a valid pi witness");
                }
                PiOutcome::HypothesisFalse => panic!("nontrivial instance rejected"),
            }
        }
    }

    println!(
        "ACCEPTANCE 5: PASS - phi (n in 2..4), psi (p in {{2,3}}, k in {{1,2}}), pi \
         (p in {{2,3}}) verified on 10^4 commuting instantiations each, zero witness \
         failures ({:.1}s)",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_06_szmielew_suite() {
    let start = Instant::now();

    let mut groups: Vec<AbelianGroup> = Vec::new();
    for d in 2..=16 {
        groups.push(AbelianGroup::cyclic(d).unwrap());
    }
    for d in 2..=8 {
        for e in 2..=8 {
            groups
                .push(AbelianGroup::cyclic(d).unwrap().direct_sum(&AbelianGroup::cyclic(e).unwrap()));
        }
    }
    for d in 2..=8 {
        groups.push(AbelianGroup::z().direct_sum(&AbelianGroup::cyclic(d).unwrap()));
    }

    let mut agreements = 0usize;
    for g in &groups {
        for p in [2u64, 3] {
            for k in [1u32, 2] {
                let closed = szmielew_ranks(g, p, k).unwrap();
                let brute = definitional_szmielew_ranks(g, p, k, 1_000_000).unwrap();
                assert_eq!(closed, brute, "rank mismatch for {g} at p={p} k={k}");
                agreements += 1;
            }
        }
    }

    for p in [2u64, 3, 5] {
        let loc = AbelianGroup::localized(PrimeSet::new(vec![p]).unwrap());
        assert!(!elementarily_equivalent(&AbelianGroup::z(), &loc));
    }

    let subsets: Vec<Vec<u64>> = vec![
        vec![],
        vec![2],
        vec![3],
        vec![5],
        vec![2, 3],
        vec![2, 5],
        vec![3, 5],
        vec![2, 3, 5],
    ];
    for s1 in &subsets {
        for s2 in &subsets {
            let g1 = AbelianGroup::localized(PrimeSet::new(s1.clone()).unwrap());
            let g2 = AbelianGroup::localized(PrimeSet::new(s2.clone()).unwrap());
            assert_eq!(
                elementarily_equivalent(&g1, &g2),
                s1 == s2,
                "localizations at {s1:?} and {s2:?}"
            );
        }
    }

    for s in &subsets {
        let set = PrimeSet::new(s.clone()).unwrap();
        for p in [2u64, 3, 5, 7] {
            for k in [1u32, 2, 3] {
                let order = localized_quotient_structure(&set, p, k).unwrap();
                let expected = if set.contains(p) { 1 } else { p.pow(k) };
                assert_eq!(order, expected, "quotient of Z[S^-1] at S={s:?} p={p} k={k}");
            }
        }
    }

    println!(
        "ACCEPTANCE 6: PASS - closed-form ranks match the definitional oracle on {} \
         (group, p, k) triples; Z vs Z[1/p] distinguished; localizations over subsets of \
         {{2,3,5}} equivalent iff equal; quotient orders exact ({:.1}s)",
        agreements,
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_07_surface_suite() {
    let start = Instant::now();
    let k = SurfacePresentation::new();
    let ctx = k.context();

    let inv = invariant_factors(4, &[vec![2, 2, 2, 2]]).unwrap();
    assert_eq!(inv.free_rank, 3);
    assert_eq!(inv.factors, vec![2]);

    let fg = FgAbelianGroup::new(4, vec![vec![2, 2, 2, 2]]).unwrap();
    let class = fg.element_class(&[1, 1, 1, 1]).unwrap();
    assert_eq!(class.torsion, vec![1], "a1a2a3a4 must hit the torsion generator");
    assert!(class.free.iter().all(|&c| c == 0));
    assert_eq!(fg.element_order(&[1, 1, 1, 1]).unwrap(), Some(2));

    assert_eq!(k.max_piece_length(), 1);

    assert!(k.is_trivial(k.relator()));
    let mut rng = ChaCha8Rng::seed_from_u64(700);
    for _ in 0..1_000 {
        let mut w = Word::empty();
        for _ in 0..rng.gen_range(1..=3) {
            let g = random_word(&mut rng, ctx, 0, 4);
            let r = if rng.gen_bool(0.5) {
                k.relator().clone()
            } else {
                k.relator().inverse()
            };
            w = w.multiply(&r.conjugate(&g));
        }
        assert!(k.is_trivial(&w), "dehn failed on a product of relator conjugates: {w}");
    }

    let product = parse_word("abcd", ctx).unwrap();
    match k.find_separating_retraction(&[product], 5).unwrap() {
        SeparationOutcome::Found { m } => assert_eq!(m, 1),
        SeparationOutcome::NotFound { m_max } => panic!("no separation up to m={m_max}"),
    }

    println!(
        "ACCEPTANCE 7: PASS - K abelianizes to Z^3 + Z/2 with a1a2a3a4 the torsion \
         generator, pieces have length 1, dehn kills the relator and 10^3 random \
         relator-conjugate products, and m=1 separates a1a2a3a4 ({:.1}s)",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_08_primitivity_suite() {
    let start = Instant::now();
    let ctx = GroupContext::new(2).unwrap();
    let auts = enumerate_whitehead(&ctx).unwrap();
    let a = parse_word("a", &ctx).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(800);
    for _ in 0..1_000 {
        let mut w = a.clone();
        for _ in 0..rng.gen_range(1..=8) {
            w = auts[rng.gen_range(0..auts.len())].apply(&w).unwrap();
        }
        assert!(is_primitive(&w, &ctx).unwrap(), "automorphic image {w} rejected");
    }

    assert!(!is_primitive(&parse_word("abAB", &ctx).unwrap(), &ctx).unwrap());
    assert!(!is_primitive(&parse_word("aa", &ctx).unwrap(), &ctx).unwrap());

    let mut powers = 0usize;
    for len in 2..=8 {
        for w in reduced_words_of_length(&ctx, len) {
            if is_proper_power(&w).unwrap() {
                powers += 1;
                assert!(!is_primitive(&w, &ctx).unwrap(), "proper power {w} called primitive");
            }
        }
    }
    assert!(powers > 0);

    println!(
        "ACCEPTANCE 8: PASS - 10^3 automorphic images of a generator are primitive; the \
         commutator, the square, and all {} proper powers of length <= 8 are not \
         ({:.1}s)",
        powers,
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_09_conjugacy_separation() {
    let start = Instant::now();
    let ctx = GroupContext::new(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(900);

    let word_image = |w: &Word, images: &[Perm], degree: usize| -> Perm {
        let mut out = Perm::identity(degree);
        for l in w.letters() {
            let g = &images[l.index() - 1];
            out = out.compose(&if l.is_inverse() { g.inverse() } else { g.clone() });
        }
        out
    };

    let mut separated = 0usize;
    while separated < 100 {
        let u = random_word(&mut rng, &ctx, 1, 6);
        let w = random_word(&mut rng, &ctx, 1, 6);
        let distinct_potential = exponent_vector(&u, &ctx).unwrap()
            != exponent_vector(&w, &ctx).unwrap()
            || u.cyclic_core().len() != w.cyclic_core().len();
        if !distinct_potential || are_conjugate(&u, &w).is_some() {
            continue;
        }
        // a word conjugate to the inverse shares its cycle type in every
        // finite quotient, so such pairs carry no cycle-structure potential
        if are_conjugate(&u.inverse(), &w).is_some() {
            continue;
        }
        let witness = separate_conjugacy_finite(&u, &w, &ctx, 6, 2_000, 900 + separated as u64)
            .unwrap_or_else(|e| panic!("pair ({u}, {w}) not separated: {e}"));
        assert_ne!(witness.u_cycle_type, witness.w_cycle_type);
        let iu = word_image(&u, &witness.images, witness.degree);
        let iw = word_image(&w, &witness.images, witness.degree);
        assert_eq!(iu.cycle_type(), witness.u_cycle_type);
        assert_eq!(iw.cycle_type(), witness.w_cycle_type);
        separated += 1;
    }

    for i in 0..100 {
        let u = random_word(&mut rng, &ctx, 1, 6);
        let g = random_word(&mut rng, &ctx, 0, 4);
        let w = u.conjugate(&g);
        match separate_conjugacy_finite(&u, &w, &ctx, 6, 50, i) {
            Err(SentenceError::ArgsConjugate) => {}
            other => panic!("conjugate pair ({u}, {w}) gave {other:?}"),
        }
    }

    println!(
        "ACCEPTANCE 9: PASS - 100 non-conjugate pairs with distinct exponent vectors or \
         cyclic lengths separated within degree 6 with re-verified cycle types; 100 \
         conjugate pairs rejected ({:.1}s)",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_10_logic_round_trip_and_classification() {
    let ctx2 = GroupContext::new(2).unwrap();
    let pres = Presentation {
        generators: 2,
        relators: vec![],
    };
    let conj = TemplateParams::ConjPair {
        presentation: pres,
        w: parse_word("ab", &ctx2).unwrap(),
        u: parse_word("ba", &ctx2).unwrap(),
    };

    let template_params = vec![
        TemplateParams::PhiN { n: 2 },
        TemplateParams::PhiN { n: 3 },
        TemplateParams::PhiN { n: 4 },
        TemplateParams::PsiPK { p: 2, k: 1 },
        TemplateParams::PsiPK { p: 2, k: 2 },
        TemplateParams::PsiPK { p: 3, k: 1 },
        TemplateParams::PsiPK { p: 3, k: 2 },
        TemplateParams::PiP { p: 2 },
        TemplateParams::PiP { p: 3 },
        TemplateParams::SigmaGNK { g: 1, n: 1, k: 1 },
        TemplateParams::SigmaGNK { g: 1, n: 2, k: 1 },
        TemplateParams::SigmaGNK { g: 2, n: 2, k: 1 },
        TemplateParams::SigmaGNK { g: 1, n: 1, k: 2 },
        conj,
    ];

    // expected prenex class per template print, in emission order
    let mut corpus: Vec<(String, Option<PrenexClass>)> = Vec::new();
    for params in &template_params {
        match build_template(params).unwrap() {
            BuiltTemplate::Single(f) => {
                let class = match params {
                    TemplateParams::PiP { .. } => PrenexClass::Pi(3),
                    _ => PrenexClass::Pi(2),
                };
                corpus.push((f.to_string(), Some(class)));
            }
            BuiltTemplate::Pair { sigma, tau } => {
                corpus.push((sigma.to_string(), Some(PrenexClass::Sigma(2))));
                corpus.push((tau.to_string(), Some(PrenexClass::Pi(2))));
            }
        }
    }
    assert_eq!(corpus.len(), 15, "template side of the corpus");

    let hand_written = [
        "(x = 1)",
        "(x = y)",
        "(1 = 1)",
        "(x*y = y*x)",
        "(x' = y)",
        "(x*x = y*y*y)",
        "(<a> = <b>)",
        "(<a>*<b>' = x)",
        "(x*<a>*x' = <b>)",
        "!(x = 1)",
        "!(x*y = y*x)",
        "!(!(x = 1))",
        "((x = 1) & (y = 1))",
        "((x = 1) | (y = 1))",
        "((x = 1) -> (y = 1))",
        "((x = y) & ((y = z) & (x = z)))",
        "(((x = 1) & (y = 1)) & (z = 1))",
        "((x = 1) -> ((y = 1) -> (z = 1)))",
        "(!(x = 1) & !(y = 1))",
        "!((x = 1) & (y = 1))",
        "Ax (x = x)",
        "Ex (x*x = <a>)",
        "Ax Ey (x*y = y*x)",
        "Ax (!(x = 1) -> Ey (y*y = x))",
        "Ex Ay (x*y = y*x)",
        "Ax Ay Az ((x*y = y*x) -> ((y*z = z*y) -> (x*z = z*x)))",
        "Ax Ey Az ((x = y) | !(y = z))",
        "Ex (x = <a>*<b>)",
        "Ax ((x = 1) | !(x = 1))",
        "Ay (y*y*y = 1)",
        "Ex Ey ((x*y = <a>) & (y*x = <b>))",
        "Ax Ex (x = 1)",
        "(x != 1)",
        "(x*y != y*x)",
        "Ax Ey !(x*y = 1)",
    ];
    assert_eq!(hand_written.len(), 35, "hand-written side of the corpus");
    for s in hand_written {
        corpus.push((s.to_string(), None));
    }

    for (text, expected_class) in &corpus {
        let f = parse_formula(text).unwrap_or_else(|e| panic!("{text}: {e}"));
        let printed = f.to_string();
        let reparsed = parse_formula(&printed).unwrap_or_else(|e| panic!("{printed}: {e}"));
        assert_eq!(reparsed, f, "round trip drifted through {printed}");
        if let Some(class) = expected_class {
            assert_eq!(classify_prenex(&f).unwrap(), *class, "classification of {text}");
        }
    }

    println!(
        "ACCEPTANCE 10: PASS - parse/print identity holds on the 50-formula corpus; phi, \
         psi, sigma(g,n,k), and tau classify as Pi2, pi as Pi3, sigma as Sigma2"
    );
}
