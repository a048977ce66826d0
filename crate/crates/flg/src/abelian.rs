//! Abelian group invariants: Smith normal form, Szmielew ranks, elementary
//! equivalence, localized groups Z[S^-1], and Kurosh characteristic sequences.
//!
//! The supported class is finite direct sums of cyclic groups Z/d and
//! localized groups Z[S^-1] for finite prime sets S (with S empty giving Z).
//! Finitely generated presentations reduce into this class through Smith
//! normal form. Szmielew's three ranks rho1/rho2/rho3 at a prime power p^k
//! decide elementary equivalence together with the exponent class; the closed
//! forms used here are gated by a brute-force oracle that applies the
//! independence definitions literally.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AbelianError {
    #[error("{value} is not prime")]
    NotPrime { value: u64 },
    #[error("k must be positive")]
    ZeroK,
    #[error("relator column has length {got}, expected {expected}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("cyclic order {order} must be at least 2")]
    BadCyclicOrder { order: u64 },
    #[error("cannot parse group descriptor: {reason}")]
    DescriptorSyntax { reason: String },
    #[error("group too large for the definitional search: {reason}")]
    UnsupportedGroup { reason: String },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd_u64(b, a % b) }
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 { 0 } else { a / gcd_u64(a, b) * b }
}

/// p-adic valuation of n (n > 0).
fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// A finite, sorted, deduplicated set of primes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeSet {
    primes: Vec<u64>,
}

impl PrimeSet {
    pub fn new(mut primes: Vec<u64>) -> Result<Self, AbelianError> {
        for &p in &primes {
            if !is_prime(p) {
                return Err(AbelianError::NotPrime { value: p });
            }
        }
        primes.sort_unstable();
        primes.dedup();
        Ok(PrimeSet { primes })
    }

    pub fn empty() -> Self {
        PrimeSet { primes: Vec::new() }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }
}

/// The additive group Z[S^-1]: integers with the primes of S inverted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizedGroup {
    pub inverted: PrimeSet,
}

impl LocalizedGroup {
    pub fn new(inverted: PrimeSet) -> Self {
        LocalizedGroup { inverted }
    }

    pub fn descriptor(&self) -> AbelianGroup {
        AbelianGroup::new(vec![self.inverted.clone()], vec![]).unwrap()
    }
}

/// Order of Z[S^-1] / p^k Z[S^-1]: the quotient is cyclic of order p^k when
/// p is not inverted, and collapses when it is.
pub fn localized_quotient_structure(s: &PrimeSet, p: u64, k: u32) -> Result<u64, AbelianError> {
    if !is_prime(p) {
        return Err(AbelianError::NotPrime { value: p });
    }
    if k == 0 {
        return Err(AbelianError::ZeroK);
    }
    Ok(if s.contains(p) { 1 } else { p.pow(k) })
}

/// Per-prime divisibility exponents of a torsion free locally cyclic group:
/// finitely many explicit entries, all other primes implicitly 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CharExponent {
    Finite(u32),
    Infinity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicSequence {
    entries: Vec<(u64, CharExponent)>,
}

impl CharacteristicSequence {
    pub fn new(mut entries: Vec<(u64, CharExponent)>) -> Result<Self, AbelianError> {
        for &(p, _) in &entries {
            if !is_prime(p) {
                return Err(AbelianError::NotPrime { value: p });
            }
        }
        entries.sort_by_key(|&(p, _)| p);
        entries.dedup_by_key(|&mut (p, _)| p);
        Ok(CharacteristicSequence { entries })
    }

    pub fn entries(&self) -> &[(u64, CharExponent)] {
        &self.entries
    }
}

/// The primes whose exponent is infinite: inverting exactly those gives a
/// group elementarily equivalent to the sequence's group.
pub fn localization_from_characteristic(seq: &CharacteristicSequence) -> PrimeSet {
    let primes = seq
        .entries
        .iter()
        .filter(|(_, e)| matches!(e, CharExponent::Infinity))
        .map(|&(p, _)| p)
        .collect();
    PrimeSet::new(primes).expect("entries validated at construction")
}

// ---------------------------------------------------------------------------
// Smith normal form and finitely generated presentations
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantFactors {
    pub free_rank: usize,
    /// Nontrivial invariant factors in a divisibility chain d1 | d2 | ...
    pub factors: Vec<u64>,
}

struct SmithResult {
    /// Diagonal entries including units, in chain order.
    diag: Vec<u64>,
    /// Row transform: diag positions describe coordinates of U * v.
    u: Vec<Vec<i64>>,
}

fn smith(rows: usize, cols: usize, a: &mut [Vec<i64>]) -> SmithResult {
    let mut u: Vec<Vec<i64>> = (0..rows)
        .map(|i| (0..rows).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut t = 0;
    while t < rows && t < cols {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        u.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }

        let pivot = a[t][t];
        let mut dirty = false;
        for i in (t + 1)..rows {
            if a[i][t] % pivot != 0 {
                let q = a[i][t] / pivot;
                for j in 0..cols {
                    a[i][j] -= q * a[t][j];
                }
                for j in 0..rows {
                    u[i][j] -= q * u[t][j];
                }
                dirty = true;
            }
        }
        if dirty {
            continue;
        }
        for j in (t + 1)..cols {
            if a[t][j] % pivot != 0 {
                let q = a[t][j] / pivot;
                for i in 0..rows {
                    a[i][j] -= q * a[i][t];
                }
                dirty = true;
            }
        }
        if dirty {
            continue;
        }
        for i in (t + 1)..rows {
            if a[i][t] != 0 {
                let q = a[i][t] / pivot;
                for j in 0..cols {
                    a[i][j] -= q * a[t][j];
                }
                for j in 0..rows {
                    u[i][j] -= q * u[t][j];
                }
            }
        }
        for j in (t + 1)..cols {
            if a[t][j] != 0 {
                let q = a[t][j] / pivot;
                for i in 0..rows {
                    a[i][j] -= q * a[i][t];
                }
            }
        }
        let mut chained = true;
        'sweep: for i in (t + 1)..rows {
            for j in (t + 1)..cols {
                if a[i][j] % pivot != 0 {
                    for jj in 0..cols {
                        a[t][jj] += a[i][jj];
                    }
                    for jj in 0..rows {
                        u[t][jj] += u[i][jj];
                    }
                    chained = false;
                    break 'sweep;
                }
            }
        }
        if !chained {
            continue;
        }
        if a[t][t] < 0 {
            for j in 0..cols {
                a[t][j] = -a[t][j];
            }
            for j in 0..rows {
                u[t][j] = -u[t][j];
            }
        }
        t += 1;
    }
    let diag = (0..t).map(|i| a[i][i] as u64).collect();
    SmithResult { diag, u }
}

/// Invariant factor decomposition of Z^generators / span(relator columns).
pub fn invariant_factors(
    generators: usize,
    relator_columns: &[Vec<i64>],
) -> Result<InvariantFactors, AbelianError> {
    Ok(FgAbelianGroup::new(generators, relator_columns.to_vec())?
        .invariant_factors()
        .clone())
}

/// Coordinates of an element in the decomposition: residues against the
/// nontrivial invariant factors, then the free coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementClass {
    pub torsion: Vec<u64>,
    pub free: Vec<i64>,
}

/// A finitely generated abelian group given by a presentation matrix whose
/// columns are relator exponent vectors.
#[derive(Debug, Clone)]
pub struct FgAbelianGroup {
    generators: usize,
    relations: Vec<Vec<i64>>,
    inv: InvariantFactors,
    diag: Vec<u64>,
    u: Vec<Vec<i64>>,
}

impl FgAbelianGroup {
    pub fn new(generators: usize, relations: Vec<Vec<i64>>) -> Result<Self, AbelianError> {
        for col in &relations {
            if col.len() != generators {
                return Err(AbelianError::ShapeMismatch {
                    expected: generators,
                    got: col.len(),
                });
            }
        }
        let cols = relations.len();
        // Row i of the working matrix collects generator i's coefficients.
        let mut a: Vec<Vec<i64>> = (0..generators)
            .map(|i| relations.iter().map(|col| col[i]).collect())
            .collect();
        if cols == 0 {
            a = vec![vec![]; generators];
        }
        let s = smith(generators, cols, &mut a);
        let inv = InvariantFactors {
            free_rank: generators - s.diag.len(),
            factors: s.diag.iter().copied().filter(|&d| d >= 2).collect(),
        };
        Ok(FgAbelianGroup {
            generators,
            relations,
            inv,
            diag: s.diag,
            u: s.u,
        })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &[Vec<i64>] {
        &self.relations
    }

    pub fn invariant_factors(&self) -> &InvariantFactors {
        &self.inv
    }

    pub fn element_class(&self, v: &[i64]) -> Result<ElementClass, AbelianError> {
        if v.len() != self.generators {
            return Err(AbelianError::ShapeMismatch {
                expected: self.generators,
                got: v.len(),
            });
        }
        let uv: Vec<i64> = self
            .u
            .iter()
            .map(|row| row.iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect();
        let mut torsion = Vec::new();
        for (i, &d) in self.diag.iter().enumerate() {
            if d >= 2 {
                torsion.push(uv[i].rem_euclid(d as i64) as u64);
            }
        }
        let free = uv[self.diag.len()..].to_vec();
        Ok(ElementClass { torsion, free })
    }

    /// Order of the element's class, None meaning infinite.
    pub fn element_order(&self, v: &[i64]) -> Result<Option<u64>, AbelianError> {
        let class = self.element_class(v)?;
        if class.free.iter().any(|&c| c != 0) {
            return Ok(None);
        }
        let mut order = 1;
        for (&c, &d) in class.torsion.iter().zip(&self.inv.factors) {
            order = lcm_u64(order, d / gcd_u64(d, c));
        }
        Ok(Some(order))
    }

    pub fn to_descriptor(&self) -> AbelianGroup {
        AbelianGroup::new(
            vec![PrimeSet::empty(); self.inv.free_rank],
            self.inv.factors.clone(),
        )
        .expect("invariant factors are at least 2")
    }
}

// ---------------------------------------------------------------------------
// Group descriptors and Szmielew invariants
// ---------------------------------------------------------------------------

/// A group in the supported class: a direct sum of localized summands
/// Z[S^-1] (plain Z when S is empty) and finite cyclic summands Z/d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    free: Vec<PrimeSet>,
    torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(mut free: Vec<PrimeSet>, mut torsion: Vec<u64>) -> Result<Self, AbelianError> {
        for &d in &torsion {
            if d < 2 {
                return Err(AbelianError::BadCyclicOrder { order: d });
            }
        }
        free.sort();
        torsion.sort_unstable();
        Ok(AbelianGroup { free, torsion })
    }

    pub fn trivial() -> Self {
        AbelianGroup { free: vec![], torsion: vec![] }
    }

    pub fn z() -> Self {
        AbelianGroup { free: vec![PrimeSet::empty()], torsion: vec![] }
    }

    pub fn cyclic(d: u64) -> Result<Self, AbelianError> {
        AbelianGroup::new(vec![], vec![d])
    }

    pub fn localized(s: PrimeSet) -> Self {
        AbelianGroup { free: vec![s], torsion: vec![] }
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut free = self.free.clone();
        free.extend(other.free.iter().cloned());
        let mut torsion = self.torsion.clone();
        torsion.extend_from_slice(&other.torsion);
        AbelianGroup::new(free, torsion).expect("parts already validated")
    }

    pub fn free_summands(&self) -> &[PrimeSet] {
        &self.free
    }

    pub fn torsion_orders(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free.is_empty() && self.torsion.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExponentClass {
    Finite(u64),
    Infinite,
}

pub fn exponent_class(g: &AbelianGroup) -> ExponentClass {
    if g.free.is_empty() {
        ExponentClass::Finite(g.torsion.iter().fold(1, |acc, &d| lcm_u64(acc, d)))
    } else {
        ExponentClass::Infinite
    }
}

/// The three Szmielew ranks at the prime power p^k.
///
/// rho1 counts a maximal set of order-p^k elements linearly independent
/// modulo p^k, rho2 a maximal set strongly independent modulo p^k (no
/// combination falling into G^(p^k) without all exponents divisible), rho3
/// the order-p^k strongly independent sets. Closed forms over the supported
/// class, p-valuations v of the cyclic orders d:
///   rho1 = #{d : v >= k}
///   rho2 = #{localized summands with p not inverted} + #{d : v >= k}
///   rho3 = #{d : v = k}
pub fn szmielew_ranks(
    g: &AbelianGroup,
    p: u64,
    k: u32,
) -> Result<(u64, u64, u64), AbelianError> {
    if !is_prime(p) {
        return Err(AbelianError::NotPrime { value: p });
    }
    if k == 0 {
        return Err(AbelianError::ZeroK);
    }
    let vals: Vec<u32> = g.torsion.iter().map(|&d| valuation(d, p)).collect();
    let rho1 = vals.iter().filter(|&&v| v >= k).count() as u64;
    let free_live = g.free.iter().filter(|s| !s.contains(p)).count() as u64;
    let rho2 = free_live + rho1;
    let rho3 = vals.iter().filter(|&&v| v == k).count() as u64;
    debug_assert!(rho3 <= rho1.min(rho2));
    Ok((rho1, rho2, rho3))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankEntry {
    pub p: u64,
    pub k: u32,
    pub rho1: u64,
    pub rho2: u64,
    pub rho3: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SzmielewRankTable {
    pub exponent_class: ExponentClass,
    pub entries: Vec<RankEntry>,
}

pub fn rank_table(
    g: &AbelianGroup,
    primes: &[u64],
    k_max: u32,
) -> Result<SzmielewRankTable, AbelianError> {
    let mut entries = Vec::new();
    for &p in primes {
        for k in 1..=k_max.max(1) {
            let (rho1, rho2, rho3) = szmielew_ranks(g, p, k)?;
            entries.push(RankEntry { p, k, rho1, rho2, rho3 });
        }
    }
    Ok(SzmielewRankTable {
        exponent_class: exponent_class(g),
        entries,
    })
}

/// The finitely many (p,k) pairs that decide equivalence for these two
/// groups: primes touching either group, k through the largest valuation
/// plus one, and a single fresh witness prime for the generic columns.
fn deciding_pairs(a: &AbelianGroup, b: &AbelianGroup) -> Vec<(u64, u32)> {
    let mut primes: Vec<u64> = Vec::new();
    for g in [a, b] {
        for s in &g.free {
            primes.extend_from_slice(s.primes());
        }
        for &d in &g.torsion {
            let mut n = d;
            let mut q = 2;
            while q * q <= n {
                if n % q == 0 {
                    primes.push(q);
                    while n % q == 0 {
                        n /= q;
                    }
                }
                q += 1;
            }
            if n > 1 {
                primes.push(n);
            }
        }
    }
    primes.sort_unstable();
    primes.dedup();
    let mut witness = 2;
    while primes.contains(&witness) {
        witness += 1;
        while !is_prime(witness) {
            witness += 1;
        }
    }
    let mut pairs = Vec::new();
    for &p in &primes {
        let vmax = [a, b]
            .iter()
            .flat_map(|g| g.torsion.iter())
            .map(|&d| valuation(d, p))
            .max()
            .unwrap_or(0);
        for k in 1..=vmax + 1 {
            pairs.push((p, k));
        }
    }
    pairs.push((witness, 1));
    pairs
}

/// Szmielew's criterion: same exponent class and identical rank triples at
/// every prime power. Only the deciding pairs need inspection; all other
/// columns agree automatically.
pub fn elementarily_equivalent(a: &AbelianGroup, b: &AbelianGroup) -> bool {
    if exponent_class(a) != exponent_class(b) {
        return false;
    }
    deciding_pairs(a, b).into_iter().all(|(p, k)| {
        szmielew_ranks(a, p, k).expect("deciding pairs are valid")
            == szmielew_ranks(b, p, k).expect("deciding pairs are valid")
    })
}

// ---------------------------------------------------------------------------
// Definitional brute-force oracle
// ---------------------------------------------------------------------------

/// Rank computation straight from the independence definitions, by exhaustive
/// search over tuples, used to gate the closed forms.
///
/// Order-p^k elements live in the torsion part, so rho1 and rho3 search
/// torsion tuples directly. For rho2 the independence conditions only depend
/// on classes modulo G^(p^k), and same-class elements are mutually dependent,
/// so searching one representative per class is exhaustive: representatives
/// 0..p^k per localized summand with p not inverted (a single 0 when it is),
/// crossed with all torsion elements, with exact integer arithmetic on the
/// free coordinates.
pub fn definitional_szmielew_ranks(
    g: &AbelianGroup,
    p: u64,
    k: u32,
    cap: usize,
) -> Result<(u64, u64, u64), AbelianError> {
    if !is_prime(p) {
        return Err(AbelianError::NotPrime { value: p });
    }
    if k == 0 {
        return Err(AbelianError::ZeroK);
    }
    let m = p.pow(k);
    let torsion = &g.torsion;
    let t_size: usize = torsion.iter().map(|&d| d as usize).product();
    let free_reps: Vec<u64> = g
        .free
        .iter()
        .map(|s| if s.contains(p) { 1 } else { m })
        .collect();
    let rho2_space = t_size * free_reps.iter().map(|&q| q as usize).product::<usize>();
    if t_size > cap || rho2_space > cap {
        return Err(AbelianError::UnsupportedGroup {
            reason: format!("search space {} exceeds cap {}", t_size.max(rho2_space), cap),
        });
    }

    let t_elements: Vec<Vec<u64>> = cartesian(torsion);
    let t_order = |t: &[u64]| -> u64 {
        t.iter()
            .zip(torsion)
            .fold(1, |acc, (&c, &d)| lcm_u64(acc, d / gcd_u64(d, c)))
    };
    // Membership in m * (Z/d) coordinatewise: the subgroup is generated by
    // gcd(m, d).
    let t_in_m = |t: &[u64]| -> bool {
        t.iter()
            .zip(torsion)
            .all(|(&c, &d)| c % gcd_u64(m, d) == 0)
    };
    let t_combine = |es: &[u64], set: &[&Vec<u64>]| -> Vec<u64> {
        let mut acc = vec![0u64; torsion.len()];
        for (e, t) in es.iter().zip(set) {
            for (j, &c) in t.iter().enumerate() {
                acc[j] = (acc[j] + e * c) % torsion[j];
            }
        }
        acc
    };

    let order_m: Vec<Vec<u64>> = t_elements
        .iter()
        .filter(|t| t_order(t) == m)
        .cloned()
        .collect();

    let rho1 = max_independent(&order_m, |set| {
        exponent_tuples(m, set.len(), &mut |es| {
            let sum = t_combine(es, set);
            sum.iter().any(|&c| c != 0)
        })
    });
    let rho3 = max_independent(&order_m, |set| {
        exponent_tuples(m, set.len(), &mut |es| !t_in_m(&t_combine(es, set)))
    });

    // rho2 candidates: free representative vector crossed with torsion part.
    struct Rho2Elem {
        free: Vec<i64>,
        tors: Vec<u64>,
    }
    let mut candidates: Vec<Rho2Elem> = Vec::new();
    let free_spaces: Vec<Vec<u64>> = free_reps.iter().map(|&q| (0..q).collect()).collect();
    for f in cartesian_vals(&free_spaces) {
        for t in &t_elements {
            candidates.push(Rho2Elem {
                free: f.iter().map(|&x| x as i64).collect(),
                tors: t.clone(),
            });
        }
    }
    let cand_refs: Vec<&Rho2Elem> = candidates.iter().collect();
    let rho2 = max_independent(&cand_refs, |set| {
        exponent_tuples(m, set.len(), &mut |es| {
            // Exact integer sum on free coordinates; in G^m iff each free
            // coordinate is divisible by its representative modulus and the
            // torsion part lies in m * torsion.
            let in_gm = free_reps.iter().enumerate().all(|(i, &q)| {
                let sum: i64 = es
                    .iter()
                    .zip(set)
                    .map(|(&e, el)| e as i64 * el.free[i])
                    .sum();
                sum % q as i64 == 0
            }) && {
                let ts: Vec<&Vec<u64>> = set.iter().map(|el| &el.tors).collect();
                t_in_m(&t_combine(es, &ts))
            };
            !in_gm
        })
    });

    Ok((rho1, rho2, rho3))
}

/// All tuples over [0, d_j) per coordinate.
fn cartesian(dims: &[u64]) -> Vec<Vec<u64>> {
    let spaces: Vec<Vec<u64>> = dims.iter().map(|&d| (0..d).collect()).collect();
    cartesian_vals(&spaces)
}

fn cartesian_vals(spaces: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for space in spaces {
        let mut next = Vec::with_capacity(out.len() * space.len());
        for prefix in &out {
            for &v in space {
                let mut row = prefix.clone();
                row.push(v);
                next.push(row);
            }
        }
        out = next;
    }
    out
}

/// Runs check on every nonzero exponent tuple in [0, m)^len; true when all
/// pass (the set is independent).
fn exponent_tuples(m: u64, len: usize, check: &mut dyn FnMut(&[u64]) -> bool) -> bool {
    let mut es = vec![0u64; len];
    loop {
        let mut i = 0;
        loop {
            if i == len {
                return true;
            }
            es[i] += 1;
            if es[i] < m {
                break;
            }
            es[i] = 0;
            i += 1;
        }
        if !check(&es) {
            return false;
        }
    }
}

/// Maximal independent set size by depth-first extension.
fn max_independent<T>(candidates: &[T], independent: impl Fn(&[&T]) -> bool) -> u64 {
    fn rec<'a, T>(
        candidates: &'a [T],
        start: usize,
        set: &mut Vec<&'a T>,
        best: &mut usize,
        independent: &impl Fn(&[&T]) -> bool,
    ) {
        *best = (*best).max(set.len());
        for i in start..candidates.len() {
            set.push(&candidates[i]);
            if independent(set) {
                rec(candidates, i + 1, set, best, independent);
            }
            set.pop();
        }
    }
    let mut best = 0;
    rec(candidates, 0, &mut Vec::new(), &mut best, &independent);
    best as u64
}

// ---------------------------------------------------------------------------
// Descriptor text form
// ---------------------------------------------------------------------------

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut terms: Vec<String> = Vec::new();
        let plain = self.free.iter().filter(|s| s.is_empty()).count();
        if plain == 1 {
            terms.push("Z".into());
        } else if plain > 1 {
            terms.push(format!("Z^{plain}"));
        }
        for s in self.free.iter().filter(|s| !s.is_empty()) {
            let inner: Vec<String> = s.primes().iter().map(|p| format!("1/{p}")).collect();
            terms.push(format!("Z[{}]", inner.join(",")));
        }
        for &d in &self.torsion {
            terms.push(format!("Z/{d}"));
        }
        write!(f, "{}", terms.join(" + "))
    }
}

/// Parses the descriptor grammar: a "+"-separated sum of terms "Z", "Z^n",
/// "Z/d", "Z[1/p,...]", or "0" alone for the trivial group.
pub fn parse_group(text: &str) -> Result<AbelianGroup, AbelianError> {
    let syntax = |reason: &str| AbelianError::DescriptorSyntax { reason: reason.to_string() };
    let trimmed = text.trim();
    if trimmed == "0" {
        return Ok(AbelianGroup::trivial());
    }
    if trimmed.is_empty() {
        return Err(syntax("empty descriptor"));
    }
    let mut free = Vec::new();
    let mut torsion = Vec::new();
    for raw in trimmed.split('+') {
        let term = raw.trim();
        if term == "Z" {
            free.push(PrimeSet::empty());
        } else if let Some(rest) = term.strip_prefix("Z^") {
            let n: usize = rest
                .parse()
                .map_err(|_| syntax(&format!("bad exponent in {term:?}")))?;
            if n == 0 {
                return Err(syntax("Z^0 is not a term"));
            }
            free.extend(std::iter::repeat_with(PrimeSet::empty).take(n));
        } else if let Some(rest) = term.strip_prefix("Z/") {
            let d: u64 = rest
                .parse()
                .map_err(|_| syntax(&format!("bad order in {term:?}")))?;
            torsion.push(d);
        } else if let Some(rest) = term.strip_prefix("Z[") {
            let inner = rest
                .strip_suffix(']')
                .ok_or_else(|| syntax(&format!("unclosed bracket in {term:?}")))?;
            let mut primes = Vec::new();
            for piece in inner.split(',') {
                let piece = piece.trim();
                let p = piece
                    .strip_prefix("1/")
                    .ok_or_else(|| syntax(&format!("expected 1/p, found {piece:?}")))?
                    .parse::<u64>()
                    .map_err(|_| syntax(&format!("bad prime in {piece:?}")))?;
                primes.push(p);
            }
            free.push(PrimeSet::new(primes)?);
        } else {
            return Err(syntax(&format!("unrecognized term {term:?}")));
        }
    }
    AbelianGroup::new(free, torsion)
}
