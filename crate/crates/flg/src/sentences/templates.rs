//! Builders for the sentence families the toolkit studies.
//!
//! phi(n): commuting x1, x2 against a nontrivial x0 admit a y with some
//! nontrivial power combination x1^i x2^j equal to y^n. psi(p,k): either x0
//! is a p-th power of a commuting y, or x1 = x0^i y^(p^k) for some i below
//! p^k. pi(p): every nontrivial x has a commuting y that is not a p-th
//! power. sigma(g,n,k): if z^n is a product of g commutators then z is a
//! product of k commutators, universally closed in z. Conjugacy pairs build
//! the existential sentence (some tuple satisfies the relators with w not
//! conjugate to u) and its universal dual.

use super::ast::{Factor, FactorBase, Formula, Term};
use super::SentenceError;
use crate::abelian::is_prime;
use crate::word::Word;

/// A finite presentation: relators are words in generators 1..=generators,
/// which become the variables x1..xm in built sentences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TemplateParams {
    PhiN { n: u32 },
    PsiPK { p: u64, k: u32 },
    PiP { p: u64 },
    SigmaGNK { g: u32, n: u32, k: u32 },
    ConjPair { presentation: Presentation, w: Word, u: Word },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuiltTemplate {
    Single(Formula),
    /// The existential separation sentence and its universal dual.
    Pair { sigma: Formula, tau: Formula },
}

fn invalid(what: impl Into<String>) -> SentenceError {
    SentenceError::InvalidParameter { what: what.into() }
}

/// x^i as a term, empty for i = 0.
fn power(name: &str, e: u64) -> Term {
    Term::new(
        (0..e)
            .map(|_| Factor {
                base: FactorBase::Var(name.to_string()),
                inverted: false,
            })
            .collect(),
    )
}

fn commutes(a: &str, b: &str) -> Formula {
    Formula::atom(
        Term::var(a).times(&Term::var(b)),
        Term::var(b).times(&Term::var(a)),
    )
}

fn nontrivial(v: &str) -> Formula {
    Formula::not(Formula::atom(Term::var(v), Term::identity()))
}

/// The word as a term over variables named by the generator index.
fn word_term(w: &Word, var: impl Fn(usize) -> String) -> Term {
    Term::new(
        w.letters()
            .iter()
            .map(|l| Factor {
                base: FactorBase::Var(var(l.index())),
                inverted: l.is_inverse(),
            })
            .collect(),
    )
}

/// [x_1,y_1]...[x_count,y_count] over indexed variable stems.
fn commutator_product(x_stem: &str, y_stem: &str, count: u32) -> Term {
    let mut t = Term::identity();
    for i in 1..=count {
        let x = format!("{x_stem}{i}");
        let y = format!("{y_stem}{i}");
        let xv = Term::var(&x);
        let yv = Term::var(&y);
        t = t
            .times(&xv)
            .times(&yv)
            .times(&xv.inverse())
            .times(&yv.inverse());
    }
    t
}

pub fn build_template(params: &TemplateParams) -> Result<BuiltTemplate, SentenceError> {
    match params {
        TemplateParams::PhiN { n } => Ok(BuiltTemplate::Single(build_phi(*n)?)),
        TemplateParams::PsiPK { p, k } => Ok(BuiltTemplate::Single(build_psi(*p, *k)?)),
        TemplateParams::PiP { p } => Ok(BuiltTemplate::Single(build_pi(*p)?)),
        TemplateParams::SigmaGNK { g, n, k } => Ok(BuiltTemplate::Single(build_sigma_gnk(*g, *n, *k)?)),
        TemplateParams::ConjPair { presentation, w, u } => build_conj_pair(presentation, w, u),
    }
}

fn build_phi(n: u32) -> Result<Formula, SentenceError> {
    if n < 2 {
        return Err(invalid("phi requires n >= 2"));
    }
    let hyp = Formula::and(
        Formula::and(nontrivial("x0"), commutes("x0", "x1")),
        commutes("x0", "x2"),
    );
    let mut disjuncts = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == 0 && j == 0 {
                continue;
            }
            disjuncts.push(Formula::atom(
                power("x1", i as u64).times(&power("x2", j as u64)),
                power("y", n as u64),
            ));
        }
    }
    let concl = Formula::and(
        commutes("x0", "y"),
        Formula::disjunction(disjuncts).expect("n >= 2 gives disjuncts"),
    );
    let body = Formula::implies(hyp, concl);
    Ok(Formula::forall(
        "x0",
        Formula::forall(
            "x1",
            Formula::forall("x2", Formula::exists("y", body)),
        ),
    ))
}

fn build_psi(p: u64, k: u32) -> Result<Formula, SentenceError> {
    if !is_prime(p) {
        return Err(invalid(format!("psi requires a prime p, got {p}")));
    }
    if k == 0 {
        return Err(invalid("psi requires k >= 1"));
    }
    let m = p.pow(k);
    let hyp = Formula::and(nontrivial("x0"), commutes("x0", "x1"));
    let mut disjuncts = vec![Formula::atom(Term::var("x0"), power("y", p))];
    for i in 0..m {
        disjuncts.push(Formula::atom(
            Term::var("x1"),
            power("x0", i).times(&power("y", m)),
        ));
    }
    let concl = Formula::and(
        commutes("x0", "y"),
        Formula::disjunction(disjuncts).expect("nonempty"),
    );
    Ok(Formula::forall(
        "x0",
        Formula::forall("x1", Formula::exists("y", Formula::implies(hyp, concl))),
    ))
}

fn build_pi(p: u64) -> Result<Formula, SentenceError> {
    if !is_prime(p) {
        return Err(invalid(format!("pi requires a prime p, got {p}")));
    }
    let concl = Formula::and(
        commutes("x", "y"),
        Formula::not(Formula::atom(Term::var("y"), power("z", p))),
    );
    Ok(Formula::forall(
        "x",
        Formula::exists(
            "y",
            Formula::forall("z", Formula::implies(nontrivial("x"), concl)),
        ),
    ))
}

fn build_sigma_gnk(g: u32, n: u32, k: u32) -> Result<Formula, SentenceError> {
    if g == 0 || n == 0 || k == 0 {
        return Err(invalid("sigma requires positive g, n, k"));
    }
    let hyp = Formula::atom(power("z", n as u64), commutator_product("x", "y", g));
    let concl = Formula::atom(Term::var("z"), commutator_product("u", "w", k));
    let mut body = Formula::implies(hyp, concl);
    for i in (1..=k).rev() {
        body = Formula::exists(&format!("w{i}"), body);
    }
    for i in (1..=k).rev() {
        body = Formula::exists(&format!("u{i}"), body);
    }
    for i in (1..=g).rev() {
        body = Formula::forall(&format!("y{i}"), body);
    }
    for i in (1..=g).rev() {
        body = Formula::forall(&format!("x{i}"), body);
    }
    Ok(Formula::forall("z", body))
}

fn build_conj_pair(
    presentation: &Presentation,
    w: &Word,
    u: &Word,
) -> Result<BuiltTemplate, SentenceError> {
    let m = presentation.generators;
    if m == 0 {
        return Err(invalid("presentation needs at least one generator"));
    }
    for r in presentation.relators.iter().chain([w, u]) {
        if r.max_index() > m {
            return Err(invalid(format!(
                "word {r} uses a generator beyond the presentation rank {m}"
            )));
        }
    }
    let var = |i: usize| format!("x{i}");
    let relator_part = Formula::conjunction(
        presentation
            .relators
            .iter()
            .map(|r| Formula::atom(word_term(r, var), Term::identity()))
            .collect(),
    )
    .unwrap_or_else(|| Formula::atom(Term::identity(), Term::identity()));
    let w_term = word_term(w, var);
    let conj_u = Term::var("y")
        .inverse()
        .times(&word_term(u, var))
        .times(&Term::var("y"));
    let sigma_matrix = Formula::and(
        relator_part.clone(),
        Formula::not(Formula::atom(w_term.clone(), conj_u.clone())),
    );
    let tau_matrix = Formula::and(relator_part, Formula::atom(w_term, conj_u));
    let mut sigma = Formula::forall("y", sigma_matrix);
    for i in (1..=m).rev() {
        sigma = Formula::exists(&var(i), sigma);
    }
    let mut tau = Formula::exists("y", tau_matrix);
    for i in (1..=m).rev() {
        tau = Formula::forall(&var(i), tau);
    }
    Ok(BuiltTemplate::Pair { sigma, tau })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sentences::{classify_prenex, parse_formula, PrenexClass};
    use crate::word::{parse_word, GroupContext};

    fn single(params: TemplateParams) -> Formula {
        match build_template(&params).unwrap() {
            BuiltTemplate::Single(f) => f,
            BuiltTemplate::Pair { .. } => panic!("expected a single sentence"),
        }
    }

    #[test]
    fn phi_shape() {
        let f = single(TemplateParams::PhiN { n: 2 });
        assert_eq!(classify_prenex(&f).unwrap(), PrenexClass::Pi(2));
        let printed = f.to_string();
        assert!(printed.starts_with("Ax0 Ax1 Ax2 Ey "));
        // Three disjuncts for n = 2: (0,1), (1,0), (1,1).
        assert_eq!(printed.matches("y*y").count(), 3);
        assert!(printed.contains("x1*x2 = y*y"));
        assert_eq!(parse_formula(&printed).unwrap(), f);
        assert!(build_template(&TemplateParams::PhiN { n: 1 }).is_err());
    }

    #[test]
    fn psi_shape() {
        let f = single(TemplateParams::PsiPK { p: 2, k: 1 });
        assert_eq!(classify_prenex(&f).unwrap(), PrenexClass::Pi(2));
        let printed = f.to_string();
        // One root disjunct plus p^k shifted ones.
        assert!(printed.contains("x0 = y*y"));
        assert!(printed.contains("x1 = y*y"));
        assert!(printed.contains("x1 = x0*y*y"));
        assert_eq!(parse_formula(&printed).unwrap(), f);
        assert!(build_template(&TemplateParams::PsiPK { p: 4, k: 1 }).is_err());
        assert!(build_template(&TemplateParams::PsiPK { p: 2, k: 0 }).is_err());
    }

    #[test]
    fn pi_shape() {
        let f = single(TemplateParams::PiP { p: 3 });
        assert_eq!(classify_prenex(&f).unwrap(), PrenexClass::Pi(3));
        assert_eq!(
            f.to_string(),
            "Ax Ey Az (!(x = 1) -> ((x*y = y*x) & !(y = z*z*z)))"
        );
        assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn sigma_gnk_shape() {
        let f = single(TemplateParams::SigmaGNK { g: 1, n: 2, k: 1 });
        assert_eq!(classify_prenex(&f).unwrap(), PrenexClass::Pi(2));
        assert_eq!(
            f.to_string(),
            "Az Ax1 Ay1 Eu1 Ew1 ((z*z = x1*y1*x1'*y1') -> (z = u1*w1*u1'*w1'))"
        );
        assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn conj_pair_shapes() {
        let ctx = GroupContext::new(2).unwrap();
        let free = Presentation { generators: 2, relators: vec![] };
        let w = parse_word("ab", &ctx).unwrap();
        let u = parse_word("ba", &ctx).unwrap();
        let BuiltTemplate::Pair { sigma, tau } = build_template(&TemplateParams::ConjPair {
            presentation: free.clone(),
            w: w.clone(),
            u: u.clone(),
        })
        .unwrap() else {
            panic!("expected a pair")
        };
        assert_eq!(classify_prenex(&sigma).unwrap(), PrenexClass::Sigma(2));
        assert_eq!(classify_prenex(&tau).unwrap(), PrenexClass::Pi(2));
        assert_eq!(
            sigma.to_string(),
            "Ex1 Ex2 Ay ((1 = 1) & !(x1*x2 = y'*x2*x1*y))"
        );
        assert_eq!(
            tau.to_string(),
            "Ax1 Ax2 Ey ((1 = 1) & (x1*x2 = y'*x2*x1*y))"
        );
        let with_relator = Presentation {
            generators: 2,
            relators: vec![parse_word("aabb", &ctx).unwrap()],
        };
        let BuiltTemplate::Pair { sigma, .. } = build_template(&TemplateParams::ConjPair {
            presentation: with_relator,
            w,
            u,
        })
        .unwrap() else {
            panic!("expected a pair")
        };
        assert!(sigma.to_string().contains("x1*x1*x2*x2 = 1"));
    }
}
