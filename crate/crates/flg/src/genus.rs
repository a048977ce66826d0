//! Commutator genus: the least g with w a product of g commutators.
//!
//! Single commutators are decided exactly by Wicks' criterion: a cyclically
//! reduced word is a commutator iff some rotation has the literal shape
//! A B C A^-1 B^-1 C^-1. Higher genus is attacked by certified search over
//! tables of short commutators, yielding exact answers when lower and upper
//! certificates meet and honest bounds otherwise. The scan drives the
//! power law n < 2g for z^n a product of g commutators.

use crate::word::{
    canonical_cyclic, exponent_vector, reduced_words_of_length, GroupContext, Letter, Word,
    WordError,
};
use rayon::prelude::*;
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenusError {
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A product of commutators [x1,y1]...[xg,yg] certifying genus at most g.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutatorExpression {
    pairs: Vec<(Word, Word)>,
}

impl CommutatorExpression {
    pub fn new(pairs: Vec<(Word, Word)>) -> Self {
        CommutatorExpression { pairs }
    }

    pub fn pairs(&self) -> &[(Word, Word)] {
        &self.pairs
    }

    pub fn genus(&self) -> usize {
        self.pairs.len()
    }

    pub fn evaluate(&self) -> Word {
        self.pairs
            .iter()
            .fold(Word::empty(), |acc, (x, y)| acc.multiply(&Word::commutator(x, y)))
    }
}

impl std::fmt::Display for CommutatorExpression {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "1");
        }
        for (x, y) in &self.pairs {
            write!(f, "[{x},{y}]")?;
        }
        Ok(())
    }
}

pub fn verify_expression(expr: &CommutatorExpression, target: &Word) -> bool {
    expr.evaluate() == *target
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommutatorVerdict {
    Yes(CommutatorExpression),
    No,
    NotInDerivedGroup,
}

/// Wicks' criterion. Exact: returns Yes with a verified single-pair witness,
/// No for derived-subgroup words of genus at least two, or NotInDerivedGroup.
pub fn is_commutator(w: &Word, ctx: &GroupContext) -> Result<CommutatorVerdict, GenusError> {
    if !exponent_vector(w, ctx)?.is_zero() {
        return Ok(CommutatorVerdict::NotInDerivedGroup);
    }
    if w.is_empty() {
        return Ok(CommutatorVerdict::Yes(CommutatorExpression::new(vec![(
            Word::empty(),
            Word::empty(),
        )])));
    }
    let core = w.cyclic_core();
    let core_letters = core.letters();
    let n = core_letters.len();
    let peel_len = (w.len() - n) / 2;
    let peel = &w.letters()[..peel_len];
    let h = n / 2;
    debug_assert_eq!(n % 2, 0, "zero exponent vector forces even length");
    for rot in 0..n {
        let at = |i: usize| core_letters[(rot + i) % n];
        for alpha in 0..=h {
            // A^-1 occupies positions h..h+alpha.
            if !(0..alpha).all(|i| at(h + i) == at(alpha - 1 - i).inverse()) {
                continue;
            }
            for beta in 0..=(h - alpha) {
                let gamma = h - alpha - beta;
                if !(0..beta).all(|i| at(h + alpha + i) == at(alpha + beta - 1 - i).inverse()) {
                    continue;
                }
                if !(0..gamma).all(|i| at(h + alpha + beta + i) == at(h - 1 - i).inverse()) {
                    continue;
                }
                // Rotation = A B C A' B' C' = [AB, CA'], conjugated back to w.
                let collect = |range: std::ops::Range<usize>| -> Vec<Letter> {
                    range.map(&at).collect()
                };
                let x = Word::from_letters(collect(0..alpha + beta));
                let mut y_letters = collect(alpha + beta..h);
                y_letters.extend(collect(0..alpha).iter().rev().map(|l| l.inverse()));
                let y = Word::from_letters(y_letters);
                let mut g_letters: Vec<Letter> = peel.to_vec();
                g_letters.extend((0..rot).map(|i| core_letters[i]));
                let g = Word::from_letters(g_letters);
                let gi = g.inverse();
                let expr = CommutatorExpression::new(vec![(x.conjugate(&gi), y.conjugate(&gi))]);
                debug_assert!(verify_expression(&expr, w));
                return Ok(CommutatorVerdict::Yes(expr));
            }
        }
    }
    Ok(CommutatorVerdict::No)
}

/// All commutator values [x,y] over |x|, |y| <= bound, with the first witness
/// pair found in shortlex enumeration order.
pub struct CommutatorTable {
    bound: usize,
    values: Vec<Word>,
    witnesses: Vec<(Word, Word)>,
    index: HashMap<Word, usize>,
}

impl CommutatorTable {
    pub fn build(ctx: &GroupContext, bound: usize) -> CommutatorTable {
        let balls: Vec<Word> = (0..=bound)
            .flat_map(|len| reduced_words_of_length(ctx, len))
            .collect();
        let mut values = Vec::new();
        let mut witnesses = Vec::new();
        let mut index = HashMap::new();
        for x in &balls {
            for y in &balls {
                let c = Word::commutator(x, y);
                if !index.contains_key(&c) {
                    index.insert(c.clone(), values.len());
                    values.push(c);
                    witnesses.push((x.clone(), y.clone()));
                }
            }
        }
        CommutatorTable { bound, values, witnesses, index }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn witness(&self, value: &Word) -> Option<&(Word, Word)> {
        self.index.get(value).map(|&i| &self.witnesses[i])
    }

    pub fn values(&self) -> &[Word] {
        &self.values
    }
}

/// Certified genus information for a derived-subgroup word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenusCertificate {
    Exact {
        genus: usize,
        witness: CommutatorExpression,
    },
    /// lower is proved; upper, when present, is witnessed. search_complete
    /// reports whether the table search ran to exhaustion or hit the budget.
    Bounds {
        lower: usize,
        upper: Option<usize>,
        witness: Option<CommutatorExpression>,
        g_max: usize,
        bound: usize,
        search_complete: bool,
    },
    NotInDerivedGroup,
}

impl GenusCertificate {
    pub fn lower(&self) -> Option<usize> {
        match self {
            GenusCertificate::Exact { genus, .. } => Some(*genus),
            GenusCertificate::Bounds { lower, .. } => Some(*lower),
            GenusCertificate::NotInDerivedGroup => None,
        }
    }

    pub fn upper(&self) -> Option<usize> {
        match self {
            GenusCertificate::Exact { genus, .. } => Some(*genus),
            GenusCertificate::Bounds { upper, .. } => *upper,
            GenusCertificate::NotInDerivedGroup => None,
        }
    }

    pub fn witness(&self) -> Option<&CommutatorExpression> {
        match self {
            GenusCertificate::Exact { witness, .. } => Some(witness),
            GenusCertificate::Bounds { witness, .. } => witness.as_ref(),
            GenusCertificate::NotInDerivedGroup => None,
        }
    }
}

pub const DEFAULT_SEARCH_BUDGET: u64 = 20_000_000;

/// Genus certificate by exact low-genus tests plus table search: genus 0 and
/// 1 are decided outright, genus 2 witnesses come from a hash join against
/// the bound-limited commutator table, and triple products certify an upper
/// bound of 3. Lower certificates stop at 2, so an exact answer of 3 is never
/// claimed.
pub fn genus(
    w: &Word,
    ctx: &GroupContext,
    g_max: usize,
    bound: usize,
) -> Result<GenusCertificate, GenusError> {
    let table = CommutatorTable::build(ctx, bound);
    genus_with_table(w, ctx, g_max, &table, DEFAULT_SEARCH_BUDGET)
}

/// As `genus`, but reusing a prebuilt table and an explicit operation budget
/// for the triple-product stage.
pub fn genus_with_table(
    w: &Word,
    ctx: &GroupContext,
    g_max: usize,
    table: &CommutatorTable,
    budget: u64,
) -> Result<GenusCertificate, GenusError> {
    match is_commutator(w, ctx)? {
        CommutatorVerdict::NotInDerivedGroup => return Ok(GenusCertificate::NotInDerivedGroup),
        CommutatorVerdict::Yes(expr) => {
            let genus = if w.is_empty() { 0 } else { 1 };
            let witness = if w.is_empty() {
                CommutatorExpression::new(vec![])
            } else {
                expr
            };
            return Ok(GenusCertificate::Exact { genus, witness });
        }
        CommutatorVerdict::No => {}
    }
    let bound = table.bound();
    let incomplete = |upper, witness| GenusCertificate::Bounds {
        lower: 2,
        upper,
        witness,
        g_max,
        bound,
        search_complete: true,
    };
    if g_max < 2 {
        return Ok(GenusCertificate::Bounds {
            lower: 2,
            upper: None,
            witness: None,
            g_max,
            bound,
            search_complete: true,
        });
    }
    for c1 in table.values() {
        let rest = c1.inverse().multiply(w);
        if let Some((x2, y2)) = table.witness(&rest) {
            let (x1, y1) = table.witness(c1).expect("value came from the table");
            let expr = CommutatorExpression::new(vec![
                (x1.clone(), y1.clone()),
                (x2.clone(), y2.clone()),
            ]);
            debug_assert!(verify_expression(&expr, w));
            return Ok(GenusCertificate::Exact { genus: 2, witness: expr });
        }
    }
    if g_max < 3 {
        return Ok(incomplete(None, None));
    }
    let mut ops = 0u64;
    for c1 in table.values() {
        let rest1 = c1.inverse().multiply(w);
        for c2 in table.values() {
            ops += 1;
            if ops > budget {
                return Ok(GenusCertificate::Bounds {
                    lower: 2,
                    upper: None,
                    witness: None,
                    g_max,
                    bound,
                    search_complete: false,
                });
            }
            let rest2 = c2.inverse().multiply(&rest1);
            if let Some((x3, y3)) = table.witness(&rest2) {
                let (x1, y1) = table.witness(c1).expect("table value");
                let (x2, y2) = table.witness(c2).expect("table value");
                let expr = CommutatorExpression::new(vec![
                    (x1.clone(), y1.clone()),
                    (x2.clone(), y2.clone()),
                    (x3.clone(), y3.clone()),
                ]);
                debug_assert!(verify_expression(&expr, w));
                return Ok(incomplete(Some(3), Some(expr)));
            }
        }
    }
    Ok(incomplete(None, None))
}

/// Canonical representatives of nontrivial derived-subgroup conjugacy classes
/// up to inversion: cyclically reduced, zero exponent vector, least rotation,
/// and no larger than the inverse's canonical form.
pub fn derived_class_reps(ctx: &GroupContext, l_max: usize) -> Vec<Word> {
    let mut reps = Vec::new();
    for len in (2..=l_max).step_by(2) {
        for w in reduced_words_of_length(ctx, len) {
            if !w.is_cyclically_reduced() {
                continue;
            }
            if !exponent_vector(&w, ctx).expect("enumerated in context").is_zero() {
                continue;
            }
            if canonical_cyclic(&w).as_word() != w {
                continue;
            }
            if w > canonical_cyclic(&w.inverse()).as_word() {
                continue;
            }
            reps.push(w);
        }
    }
    reps
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanInstance {
    pub z: Word,
    pub n: u32,
    pub genus_lower: usize,
    pub genus_upper: Option<usize>,
    pub witness: Option<CommutatorExpression>,
    /// Present when the instance could not be checked against the power law.
    pub skipped: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanViolation {
    pub z: Word,
    pub n: u32,
    pub genus_upper: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub l_max: usize,
    pub n_max: u32,
    pub g_max: usize,
    pub bound: usize,
    pub checked: usize,
    pub instances: Vec<ScanInstance>,
    pub violations: Vec<ScanViolation>,
}

/// Scans powers z^n of derived-subgroup class representatives and checks
/// every certified upper bound g against the power law n < 2g. Instances
/// without a certified upper bound are recorded as skipped, never asserted.
pub fn duncan_howie_scan(
    ctx: &GroupContext,
    l_max: usize,
    n_max: u32,
    g_max: usize,
    bound: usize,
) -> Result<ScanReport, GenusError> {
    let table = CommutatorTable::build(ctx, bound);
    let reps = derived_class_reps(ctx, l_max);
    let instances: Vec<ScanInstance> = reps
        .par_iter()
        .map(|z| {
            let mut out = Vec::new();
            for n in 2..=n_max {
                let w = z.pow(n as i64);
                let cert = genus_with_table(&w, ctx, g_max, &table, DEFAULT_SEARCH_BUDGET)?;
                let genus_lower = cert.lower().unwrap_or(0);
                let genus_upper = cert.upper();
                let witness = cert.witness().cloned();
                let skipped = if genus_upper.is_none() {
                    Some("no certified upper bound within the search".to_string())
                } else {
                    None
                };
                out.push(ScanInstance {
                    z: z.clone(),
                    n,
                    genus_lower,
                    genus_upper,
                    witness,
                    skipped,
                });
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>, GenusError>>()?
        .into_iter()
        .flatten()
        .collect();
    let violations = instances
        .iter()
        .filter_map(|inst| {
            let upper = inst.genus_upper?;
            ((inst.n as usize) >= 2 * upper).then(|| ScanViolation {
                z: inst.z.clone(),
                n: inst.n,
                genus_upper: upper,
            })
        })
        .collect();
    Ok(ScanReport {
        l_max,
        n_max,
        g_max,
        bound,
        checked: instances.len(),
        instances,
        violations,
    })
}

/// Largest certified genus lower bound among representatives z whose power
/// z^n has certified genus at most g.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FLowerBound {
    NoInstances,
    Value { value: usize, witness_z: Word },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FTableEntry {
    pub g: usize,
    pub n: u32,
    pub l_max: usize,
    pub bound: usize,
    pub result: FLowerBound,
}

pub fn f_lower_table(
    ctx: &GroupContext,
    g: usize,
    n: u32,
    l_max: usize,
    bound: usize,
) -> Result<FTableEntry, GenusError> {
    let table = CommutatorTable::build(ctx, bound);
    let mut result = FLowerBound::NoInstances;
    for z in derived_class_reps(ctx, l_max) {
        let power_cert = genus_with_table(&z.pow(n as i64), ctx, g, &table, DEFAULT_SEARCH_BUDGET)?;
        let Some(upper) = power_cert.upper() else { continue };
        if upper > g {
            continue;
        }
        let z_cert = genus_with_table(&z, ctx, 2, &table, DEFAULT_SEARCH_BUDGET)?;
        let Some(lower) = z_cert.lower() else { continue };
        let better = match &result {
            FLowerBound::NoInstances => true,
            FLowerBound::Value { value, .. } => lower > *value,
        };
        if better {
            result = FLowerBound::Value { value: lower, witness_z: z };
        }
    }
    Ok(FTableEntry { g, n, l_max, bound, result })
}
