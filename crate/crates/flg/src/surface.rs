//! The genus-4 non-orientable surface group K = <a1,a2,a3,a4; a1^2 a2^2 a3^2 a4^2>.
//!
//! The presentation satisfies C'(1/6) (see [`SurfacePresentation::max_piece_length`]),
//! so Dehn's algorithm decides the word problem. Retractions onto the free group
//! on a1, a2 come from the family r_m, which conjugates the obvious retraction by
//! powers of c = a1^2 a2^2. Rank-4 words use the letters a-d / A-D in text form.

use std::collections::HashMap;

use thiserror::Error;

use crate::word::{GroupContext, Letter, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("element {word} is trivial in K")]
    TrivialElement { word: String },
    #[error(transparent)]
    Word(#[from] WordError),
}

const RELATOR: [i32; 8] = [1, 1, 2, 2, 3, 3, 4, 4];

/// The fixed presentation of K together with its symmetrized relator set:
/// all cyclic rotations of the relator and of its inverse, 16 words of length 8.
pub struct SurfacePresentation {
    ctx: GroupContext,
    relator: Word,
    symmetrized: Vec<Word>,
    // prefix of length 5..=8 -> index of the unique symmetrized member it opens
    prefixes: HashMap<Vec<i32>, usize>,
}

impl SurfacePresentation {
    pub fn new() -> SurfacePresentation {
        let ctx = GroupContext::new(4).expect("rank 4 is valid");
        let letters: Vec<Letter> = RELATOR
            .iter()
            .map(|&v| Letter::new(v, &ctx).expect("relator letters fit rank 4"))
            .collect();
        let relator = Word::from_letters(letters.clone());

        let mut symmetrized = Vec::new();
        for base in [letters.clone(), relator.inverse().letters().to_vec()] {
            for rot in 0..base.len() {
                let rotated: Vec<Letter> =
                    (0..base.len()).map(|j| base[(rot + j) % base.len()]).collect();
                let w = Word::from_letters(rotated);
                if !symmetrized.contains(&w) {
                    symmetrized.push(w);
                }
            }
        }

        let mut prefixes = HashMap::new();
        for (idx, member) in symmetrized.iter().enumerate() {
            for len in 5..=member.len() {
                let key: Vec<i32> = member.letters()[..len].iter().map(|l| l.value()).collect();
                // pieces have length 1, so long prefixes are unique to their member
                prefixes.insert(key, idx);
            }
        }

        SurfacePresentation {
            ctx,
            relator,
            symmetrized,
            prefixes,
        }
    }

    pub fn context(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn relator(&self) -> &Word {
        &self.relator
    }

    pub fn symmetrized(&self) -> &[Word] {
        &self.symmetrized
    }

    /// Longest common prefix over ordered pairs of distinct symmetrized members.
    /// The value 1 is strictly below 8/6, which is what licenses Dehn's algorithm.
    pub fn max_piece_length(&self) -> usize {
        let mut best = 0;
        for (i, a) in self.symmetrized.iter().enumerate() {
            for (j, b) in self.symmetrized.iter().enumerate() {
                if i == j {
                    continue;
                }
                let common = a
                    .letters()
                    .iter()
                    .zip(b.letters())
                    .take_while(|(x, y)| *x == *y)
                    .count();
                best = best.max(common);
            }
        }
        best
    }

    /// Dehn's algorithm. Repeatedly: cyclically reduce, then find the leftmost
    /// (longest match at that position) cyclic subword of length >= 5 that opens
    /// a symmetrized relator, and replace it by the inverse of the complement.
    /// Every replacement shortens the word by at least 2, so this terminates;
    /// the final word is empty iff the input represents 1 in K.
    pub fn dehn_reduce(&self, w: &Word) -> DehnTrace {
        debug_assert!(w.validate(&self.ctx).is_ok());
        let mut steps = Vec::new();
        let mut cur = w.cyclic_core();
        loop {
            let n = cur.len();
            if n < 5 {
                break;
            }
            let letters = cur.letters();
            let max_len = n.min(8);
            let mut hit = None;
            'scan: for start in 0..n {
                for len in (5..=max_len).rev() {
                    let key: Vec<i32> =
                        (0..len).map(|j| letters[(start + j) % n].value()).collect();
                    if let Some(&member) = self.prefixes.get(&key) {
                        hit = Some((start, len, member));
                        break 'scan;
                    }
                }
            }
            let Some((start, len, member)) = hit else {
                break;
            };
            let member = &self.symmetrized[member];
            let replaced =
                Word::from_letters((0..len).map(|j| letters[(start + j) % n]));
            let replacement =
                Word::from_letters(member.letters()[len..].iter().copied()).inverse();
            // rotate so the match leads, swap it out, and let reduction run
            let mut next: Vec<Letter> = replacement.letters().to_vec();
            next.extend((len..n).map(|j| letters[(start + j) % n]));
            let next = Word::from_letters(next);
            debug_assert!(next.len() + 2 <= n);
            steps.push(DehnStep {
                position: start,
                replaced,
                replacement,
            });
            cur = next.cyclic_core();
        }
        DehnTrace {
            steps,
            final_word: cur,
        }
    }

    /// Word problem for K.
    pub fn is_trivial(&self, w: &Word) -> bool {
        self.dehn_reduce(w).final_word.is_empty()
    }

    /// Smallest m <= m_max whose retraction keeps every element of `set` alive,
    /// i.e. maps none of them to the identity of F_2. Every input must first be
    /// nontrivial in K. A NotFound answer only reports that this particular
    /// family ran out; it proves nothing about other retractions.
    pub fn find_separating_retraction(
        &self,
        set: &[Word],
        m_max: u32,
    ) -> Result<SeparationOutcome, SurfaceError> {
        for s in set {
            s.validate(&self.ctx)?;
            if self.is_trivial(s) {
                return Err(SurfaceError::TrivialElement {
                    word: s.to_string(),
                });
            }
        }
        for m in 0..=m_max {
            let ret = Retraction::new(m);
            if set.iter().all(|s| !apply_retraction(&ret, s).is_empty()) {
                return Ok(SeparationOutcome::Found { m });
            }
        }
        Ok(SeparationOutcome::NotFound { m_max })
    }
}

impl Default for SurfacePresentation {
    fn default() -> Self {
        SurfacePresentation::new()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DehnStep {
    /// Index into the working (cyclically reduced) word where the match began.
    pub position: usize,
    pub replaced: Word,
    pub replacement: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DehnTrace {
    pub steps: Vec<DehnStep>,
    pub final_word: Word,
}

/// The retraction K -> F_2 sending a1 -> a1, a2 -> a2,
/// a3 -> c^m a2^-1 c^-m, a4 -> c^m a1^-1 c^-m, with c = a1^2 a2^2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Retraction {
    m: u32,
    images: [Word; 4],
}

impl Retraction {
    /// Builds r_m and checks both defining properties: the relator dies and
    /// a1, a2 are fixed.
    pub fn new(m: u32) -> Retraction {
        let ctx = GroupContext::new(2).expect("rank 2 is valid");
        let a1 = Word::from_letters([Letter::new(1, &ctx).unwrap()]);
        let a2 = Word::from_letters([Letter::new(2, &ctx).unwrap()]);
        let c = a1.pow(2).multiply(&a2.pow(2));
        let cm = c.pow(i64::from(m));
        let twist = |w: &Word| cm.multiply(w).multiply(&cm.inverse());
        let images = [
            a1.clone(),
            a2.clone(),
            twist(&a2.inverse()),
            twist(&a1.inverse()),
        ];
        let ret = Retraction { m, images };
        assert!(
            relator_image(ret.images()).is_empty(),
            "r_{m} must kill the relator"
        );
        assert_eq!(ret.images[0], a1);
        assert_eq!(ret.images[1], a2);
        ret
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn images(&self) -> &[Word; 4] {
        &self.images
    }
}

/// Image of the relator under the substitution a_i -> images[i-1], freely
/// reduced. Empty iff the images define a homomorphism K -> F_2.
pub fn relator_image(images: &[Word; 4]) -> Word {
    let mut acc = Word::empty();
    for &v in &RELATOR {
        acc = acc.multiply(&images[v.unsigned_abs() as usize - 1]);
    }
    acc
}

/// Homomorphic substitution followed by free reduction. Fixes every word
/// over a1, a2.
pub fn apply_retraction(ret: &Retraction, w: &Word) -> Word {
    assert!(w.max_index() <= 4, "surface words use at most four generators");
    let mut acc = Word::empty();
    for letter in w.letters() {
        let img = &ret.images()[letter.index() - 1];
        if letter.is_inverse() {
            acc = acc.multiply(&img.inverse());
        } else {
            acc = acc.multiply(img);
        }
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparationOutcome {
    Found { m: u32 },
    NotFound { m_max: u32 },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    fn k() -> SurfacePresentation {
        SurfacePresentation::new()
    }

    fn w(s: &str, ctx: &GroupContext) -> Word {
        parse_word(s, ctx).unwrap()
    }

    #[test]
    fn symmetrized_set_is_closed() {
        let k = k();
        let set = k.symmetrized();
        assert_eq!(set.len(), 16);
        for member in set {
            assert_eq!(member.len(), 8);
            assert!(set.contains(&member.inverse()));
            let letters = member.letters();
            let rotated: Vec<Letter> =
                (0..8).map(|j| letters[(j + 1) % 8]).collect();
            assert!(set.contains(&Word::from_letters(rotated)));
        }
    }

    #[test]
    fn dehn_kills_relator_and_rotations() {
        let k = k();
        let trace = k.dehn_reduce(k.relator());
        assert!(trace.final_word.is_empty());
        assert_eq!(trace.steps.len(), 1);

        let rotation = w("ccddaabb", k.context());
        assert!(k.dehn_reduce(&rotation).final_word.is_empty());
    }

    #[test]
    fn dehn_leaves_short_words_alone() {
        let k = k();
        let v = w("abcd", k.context());
        let trace = k.dehn_reduce(&v);
        assert!(trace.steps.is_empty());
        assert_eq!(trace.final_word, v);
        assert!(!k.is_trivial(&v));
        assert!(!k.is_trivial(&w("a", k.context())));
    }

    #[test]
    fn dehn_kills_conjugates_of_the_relator() {
        let k = k();
        for g in ["ab", "dcBA", "aabdC", "DDca"] {
            let g = w(g, k.context());
            let conj = k.relator().conjugate(&g);
            assert!(k.is_trivial(&conj), "conjugate by {g} should die");
        }
    }

    #[test]
    fn piece_length_is_one() {
        let k = k();
        assert_eq!(k.max_piece_length(), 1);
        assert!((k.max_piece_length() as f64) < 8.0 / 6.0);
    }

    #[test]
    fn retraction_images() {
        let ctx2 = GroupContext::new(2).unwrap();
        let r0 = Retraction::new(0);
        assert_eq!(r0.images()[2], w("B", &ctx2));
        assert_eq!(r0.images()[3], w("A", &ctx2));
        for m in 0..=10 {
            Retraction::new(m);
        }

        let bad = [
            w("a", &ctx2),
            w("b", &ctx2),
            w("a", &ctx2),
            w("a", &ctx2),
        ];
        assert!(!relator_image(&bad).is_empty());
    }

    #[test]
    fn apply_examples() {
        let k = k();
        let ctx2 = GroupContext::new(2).unwrap();
        let product = w("abcd", k.context());

        assert!(apply_retraction(&Retraction::new(0), &product).is_empty());

        let image = apply_retraction(&Retraction::new(1), &product);
        assert_eq!(image, w("abaabABBAA", &ctx2));
        assert_eq!(image.len(), 10);

        for m in 0..3 {
            let ret = Retraction::new(m);
            assert_eq!(apply_retraction(&ret, &w("a", k.context())), w("a", &ctx2));
            assert_eq!(
                apply_retraction(&ret, &w("abAB", k.context())),
                w("abAB", &ctx2)
            );
        }
    }

    #[test]
    fn separating_retractions() {
        let k = k();
        let a = w("a", k.context());
        let product = w("abcd", k.context());

        assert_eq!(
            k.find_separating_retraction(std::slice::from_ref(&a), 5).unwrap(),
            SeparationOutcome::Found { m: 0 }
        );
        assert_eq!(
            k.find_separating_retraction(std::slice::from_ref(&product), 5)
                .unwrap(),
            SeparationOutcome::Found { m: 1 }
        );

        let err = k
            .find_separating_retraction(&[k.relator().clone()], 5)
            .unwrap_err();
        assert!(matches!(err, SurfaceError::TrivialElement { .. }));
    }
}
