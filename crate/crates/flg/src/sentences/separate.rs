//! Separating non-conjugate words in finite symmetric quotients.
//!
//! Conjugate elements map to conjugate permutations under any homomorphism,
//! and conjugacy in a symmetric group is cycle type. A homomorphism sending
//! the generators to permutations with different image cycle types for the
//! two words is therefore a certificate of non-conjugacy. The search tries a
//! structured grid (all generators to powers of a single n-cycle) before
//! seeded random assignments, degree by degree.

use super::SentenceError;
use crate::word::{are_conjugate, GroupContext, Word};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A permutation of 0..n, stored as the image vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Perm {
    map: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { map: (0..n).collect() }
    }

    pub fn from_images(map: Vec<usize>) -> Option<Perm> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &i in &map {
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Perm { map })
    }

    /// The n-cycle 0 -> 1 -> ... -> n-1 -> 0.
    pub fn full_cycle(n: usize) -> Perm {
        Perm { map: (0..n).map(|i| (i + 1) % n).collect() }
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    /// self then other.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm {
            map: self.map.iter().map(|&i| other.map[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut map = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            map[j] = i;
        }
        Perm { map }
    }

    pub fn pow(&self, e: usize) -> Perm {
        let mut out = Perm::identity(self.map.len());
        for _ in 0..e {
            out = out.compose(self);
        }
        out
    }

    /// Sorted cycle lengths; equal cycle types mean conjugate permutations.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.map.len();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.map[i];
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable();
        lengths
    }
}

fn word_image(w: &Word, images: &[Perm], degree: usize) -> Perm {
    let mut out = Perm::identity(degree);
    for l in w.letters() {
        let g = &images[l.index() - 1];
        out = out.compose(&if l.is_inverse() { g.inverse() } else { g.clone() });
    }
    out
}

/// A homomorphism to a symmetric group witnessing non-conjugacy of u and w
/// through distinct image cycle types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuotientWitness {
    pub degree: usize,
    /// Image of each generator, in generator order.
    pub images: Vec<Perm>,
    pub u_cycle_type: Vec<usize>,
    pub w_cycle_type: Vec<usize>,
}

/// Searches degrees 2..=max_degree for a homomorphism separating the
/// conjugacy classes of u and w. Exact precondition: conjugate inputs are
/// rejected with ArgsConjugate. The grid phase enumerates generator images
/// among powers of the full cycle (first generator's exponent varying
/// fastest), then `samples` random assignments per degree follow. The whole
/// search is deterministic in the seed.
pub fn separate_conjugacy_finite(
    u: &Word,
    w: &Word,
    ctx: &GroupContext,
    max_degree: usize,
    samples: usize,
    seed: u64,
) -> Result<FiniteQuotientWitness, SentenceError> {
    u.validate(ctx)?;
    w.validate(ctx)?;
    if are_conjugate(u, w).is_some() {
        return Err(SentenceError::ArgsConjugate);
    }
    let rank = ctx.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for degree in 2..=max_degree {
        let cycle = Perm::full_cycle(degree);
        let cycle_powers: Vec<Perm> = (0..degree).map(|e| cycle.pow(e)).collect();
        let mut exponents = vec![0usize; rank];
        loop {
            // Advance the exponent tuple, first coordinate fastest; the
            // all-zero tuple maps everything to the identity and never
            // separates, so skipping it by advancing first loses nothing.
            let mut carry = 0;
            while carry < rank {
                exponents[carry] += 1;
                if exponents[carry] < degree {
                    break;
                }
                exponents[carry] = 0;
                carry += 1;
            }
            if carry == rank {
                break;
            }
            let images: Vec<Perm> = exponents
                .iter()
                .map(|&e| cycle_powers[e].clone())
                .collect();
            if let Some(witness) = try_assignment(u, w, &images, degree) {
                return Ok(witness);
            }
        }
        for _ in 0..samples {
            let images: Vec<Perm> = (0..rank)
                .map(|_| {
                    let mut map: Vec<usize> = (0..degree).collect();
                    map.shuffle(&mut rng);
                    Perm { map }
                })
                .collect();
            if let Some(witness) = try_assignment(u, w, &images, degree) {
                return Ok(witness);
            }
        }
    }
    Err(SentenceError::NotFoundWithinBudget { max_degree })
}

fn try_assignment(
    u: &Word,
    w: &Word,
    images: &[Perm],
    degree: usize,
) -> Option<FiniteQuotientWitness> {
    let u_cycle_type = word_image(u, images, degree).cycle_type();
    let w_cycle_type = word_image(w, images, degree).cycle_type();
    (u_cycle_type != w_cycle_type).then(|| FiniteQuotientWitness {
        degree,
        images: images.to_vec(),
        u_cycle_type,
        w_cycle_type,
    })
}
