//! Exact evaluation of the template families on free-group instances.
//!
//! Each evaluator decides the hypothesis by word arithmetic, then produces
//! an explicit witness using roots: commuting nontrivial free-group elements
//! are powers of one root, which reduces every case to modular arithmetic
//! on exponents. All returned witnesses verify by direct multiplication.

use super::SentenceError;
use crate::abelian::is_prime;
use crate::word::{extract_root, GroupContext, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PhiOutcome {
    HypothesisFalse,
    Satisfied { i: u32, j: u32, y: Word },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PsiOutcome {
    HypothesisFalse,
    /// First disjunct: x0 = y^p.
    SatisfiedRoot { y: Word },
    /// Shifted disjunct: x1 = x0^i y^(p^k).
    SatisfiedShift { i: u64, y: Word },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PiOutcome {
    HypothesisFalse,
    Satisfied { y: Word },
}

fn commute(a: &Word, b: &Word) -> bool {
    a.multiply(b) == b.multiply(a)
}

/// Writes w as root^s relative to the given root (or its inverse); w must
/// commute with the root. The empty word gives s = 0.
fn exponent_on(root: &Word, w: &Word) -> i64 {
    if w.is_empty() {
        return 0;
    }
    let d = extract_root(w).expect("nonempty");
    if d.root == *root {
        d.exponent as i64
    } else {
        debug_assert_eq!(d.root, root.inverse(), "element must share the centralizer");
        -(d.exponent as i64)
    }
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    // Extended Euclid; a is invertible because gcd(a, m) = 1.
    let (mut r0, mut r1) = (m as i64, (a % m) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(m as i64) as u64
}

/// phi(n) on (x0, x1, x2): a commuting triple with x0 nontrivial yields the
/// first (i, j) != (0, 0) in lexicographic order with n dividing s*i + t*j,
/// where x1 = r^s, x2 = r^t over the root r of x0; the witness is
/// y = r^((s*i + t*j)/n).
pub fn eval_phi_n(
    n: u32,
    x0: &Word,
    x1: &Word,
    x2: &Word,
    ctx: &GroupContext,
) -> Result<PhiOutcome, SentenceError> {
    if n < 2 {
        return Err(SentenceError::InvalidParameter {
            what: "phi requires n >= 2".into(),
        });
    }
    for w in [x0, x1, x2] {
        w.validate(ctx)?;
    }
    if x0.is_empty() || !commute(x0, x1) || !commute(x0, x2) {
        return Ok(PhiOutcome::HypothesisFalse);
    }
    let root = extract_root(x0)?.root;
    let s = exponent_on(&root, x1);
    let t = exponent_on(&root, x2);
    let n64 = n as i64;
    for i in 0..n {
        for j in 0..n {
            if i == 0 && j == 0 {
                continue;
            }
            let combo = s * i as i64 + t * j as i64;
            if combo.rem_euclid(n64) == 0 {
                let y = root.pow(combo / n64);
                debug_assert_eq!(x1.pow(i as i64).multiply(&x2.pow(j as i64)), y.pow(n64));
                debug_assert!(commute(x0, &y));
                return Ok(PhiOutcome::Satisfied { i, j, y });
            }
        }
    }
    unreachable!("the map (i,j) -> s*i + t*j mod n has a nontrivial kernel");
}

/// psi(p,k) on (x0, x1): writing x0 = r^e, the first disjunct fires with
/// y = r^(e/p) when p divides e; otherwise i = s*e^-1 mod p^k and
/// y = r^((s - e*i)/p^k) satisfies x1 = x0^i y^(p^k).
pub fn eval_psi_pk(
    p: u64,
    k: u32,
    x0: &Word,
    x1: &Word,
    ctx: &GroupContext,
) -> Result<PsiOutcome, SentenceError> {
    if !is_prime(p) {
        return Err(SentenceError::InvalidParameter {
            what: format!("psi requires a prime p, got {p}"),
        });
    }
    if k == 0 {
        return Err(SentenceError::InvalidParameter {
            what: "psi requires k >= 1".into(),
        });
    }
    for w in [x0, x1] {
        w.validate(ctx)?;
    }
    if x0.is_empty() || !commute(x0, x1) {
        return Ok(PsiOutcome::HypothesisFalse);
    }
    let root = extract_root(x0)?.root;
    let e = extract_root(x0)?.exponent as i64;
    let s = exponent_on(&root, x1);
    if e % p as i64 == 0 {
        let y = root.pow(e / p as i64);
        debug_assert_eq!(*x0, y.pow(p as i64));
        return Ok(PsiOutcome::SatisfiedRoot { y });
    }
    let m = p.pow(k);
    let e_mod = (e % m as i64).rem_euclid(m as i64) as u64;
    let i = (s.rem_euclid(m as i64) as u64 * mod_inverse(e_mod, m)) % m;
    let y = root.pow((s - e * i as i64) / m as i64);
    debug_assert_eq!(*x1, x0.pow(i as i64).multiply(&y.pow(m as i64)));
    Ok(PsiOutcome::SatisfiedShift { i, y })
}

/// pi(p) on x: the root of a nontrivial x commutes with it and is not a
/// proper power, hence not a p-th power.
pub fn eval_pi_p(p: u64, x: &Word, ctx: &GroupContext) -> Result<PiOutcome, SentenceError> {
    if !is_prime(p) {
        return Err(SentenceError::InvalidParameter {
            what: format!("pi requires a prime p, got {p}"),
        });
    }
    x.validate(ctx)?;
    if x.is_empty() {
        return Ok(PiOutcome::HypothesisFalse);
    }
    let y = extract_root(x)?.root;
    debug_assert!(commute(x, &y));
    Ok(PiOutcome::Satisfied { y })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    fn ctx2() -> GroupContext {
        GroupContext::new(2).unwrap()
    }

    fn w(s: &str) -> Word {
        parse_word(s, &ctx2()).unwrap()
    }

    #[test]
    fn phi_picks_first_disjunct() {
        let ctx = ctx2();
        match eval_phi_n(2, &w("a"), &w("a"), &w("aa"), &ctx).unwrap() {
            PhiOutcome::Satisfied { i, j, y } => {
                assert_eq!((i, j), (0, 1));
                assert_eq!(y, w("a"));
            }
            other => panic!("{other:?}"),
        }
        // Non-commuting instance.
        assert_eq!(
            eval_phi_n(2, &w("a"), &w("b"), &w("a"), &ctx).unwrap(),
            PhiOutcome::HypothesisFalse
        );
        assert_eq!(
            eval_phi_n(3, &Word::empty(), &w("a"), &w("a"), &ctx).unwrap(),
            PhiOutcome::HypothesisFalse
        );
    }

    #[test]
    fn phi_witness_verifies_on_conjugated_powers() {
        let ctx = ctx2();
        let g = w("bab");
        let r = w("aB").conjugate(&g);
        for n in [2u32, 3, 4] {
            let x0 = r.pow(3);
            let x1 = r.pow(-2);
            let x2 = r.pow(5);
            match eval_phi_n(n, &x0, &x1, &x2, &ctx).unwrap() {
                PhiOutcome::Satisfied { i, j, y } => {
                    assert_eq!(
                        x1.pow(i as i64).multiply(&x2.pow(j as i64)),
                        y.pow(n as i64)
                    );
                    assert_eq!(x0.multiply(&y), y.multiply(&x0));
                }
                other => panic!("n={n}: {other:?}"),
            }
        }
    }

    #[test]
    fn psi_both_disjuncts() {
        let ctx = ctx2();
        match eval_psi_pk(2, 1, &w("aa"), &w("aaaaaa"), &ctx).unwrap() {
            PsiOutcome::SatisfiedRoot { y } => assert_eq!(y, w("a")),
            other => panic!("{other:?}"),
        }
        match eval_psi_pk(2, 2, &w("a"), &w("aaaaa"), &ctx).unwrap() {
            PsiOutcome::SatisfiedShift { i, y } => {
                assert_eq!(i, 1);
                assert_eq!(y, w("a"));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            eval_psi_pk(3, 1, &w("a"), &w("b"), &ctx).unwrap(),
            PsiOutcome::HypothesisFalse
        );
    }

    #[test]
    fn psi_negative_exponents() {
        let ctx = ctx2();
        let r = w("ab");
        let x0 = r.pow(3);
        let x1 = r.pow(-7);
        match eval_psi_pk(2, 2, &x0, &x1, &ctx).unwrap() {
            PsiOutcome::SatisfiedShift { i, y } => {
                assert!(i < 4);
                assert_eq!(x1, x0.pow(i as i64).multiply(&y.pow(4)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn pi_returns_the_root() {
        let ctx = ctx2();
        match eval_pi_p(2, &w("abab"), &ctx).unwrap() {
            PiOutcome::Satisfied { y } => {
                assert_eq!(y, w("ab"));
                assert!(!crate::word::is_proper_power(&y).unwrap());
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            eval_pi_p(3, &Word::empty(), &ctx).unwrap(),
            PiOutcome::HypothesisFalse
        );
        assert!(eval_pi_p(6, &w("a"), &ctx).is_err());
    }
}
