//! Words in a free group of finite rank.
//!
//! A letter is a nonzero signed integer: `k` is the k-th generator, `-k` its
//! inverse. Rank is capped at 26 so words read and print as `a..z` (generators)
//! and `A..Z` (inverses), with `1` for the empty word. Letters are ordered
//! `a < a' < b < b' < ...`; that order fixes canonical cyclic forms and every
//! deterministic enumeration in the crate.

use std::cmp::Ordering;
use std::fmt;

/// Largest supported rank (one letter per lowercase ASCII character).
pub const MAX_RANK: usize = 26;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("rank {rank} out of range 1..={MAX_RANK}")]
    InvalidRank { rank: usize },
    #[error("letter {value} invalid at rank {rank}")]
    InvalidLetter { value: i32, rank: usize },
    #[error("character {ch:?} at position {pos} is not a word letter")]
    InvalidChar { ch: char, pos: usize },
    #[error("the empty word has no root")]
    EmptyWord,
    #[error("{op} takes {expected} word argument(s), got {got}")]
    ArityMismatch {
        op: &'static str,
        expected: usize,
        got: usize,
    },
}

/// Ambient free group: just a validated rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupContext {
    rank: usize,
}

impl GroupContext {
    pub fn new(rank: usize) -> Result<Self, WordError> {
        if rank == 0 || rank > MAX_RANK {
            return Err(WordError::InvalidRank { rank });
        }
        Ok(GroupContext { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// All letters in canonical order: a, a', b, b', ...
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(2 * self.rank);
        for i in 1..=self.rank as i32 {
            out.push(Letter(i));
            out.push(Letter(-i));
        }
        out
    }
}

/// One generator or inverse generator. Always nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter(i32);

impl Letter {
    pub fn new(value: i32, ctx: &GroupContext) -> Result<Self, WordError> {
        if value == 0 || value.unsigned_abs() as usize > ctx.rank() {
            return Err(WordError::InvalidLetter {
                value,
                rank: ctx.rank(),
            });
        }
        Ok(Letter(value))
    }

    pub fn value(self) -> i32 {
        self.0
    }

    /// 1-based generator index.
    pub fn index(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    /// Position in the canonical letter order a < a' < b < b' < ...
    fn ord_key(self) -> u32 {
        2 * self.index() as u32 + self.is_inverse() as u32
    }

    pub fn to_char(self) -> char {
        let base = if self.is_inverse() { b'A' } else { b'a' };
        (base + (self.index() as u8 - 1)) as char
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ord_key().cmp(&other.ord_key())
    }
}

/// A freely reduced word. The reduction invariant is maintained by every
/// constructor and operation; adjacent inverse pairs never survive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    /// Reduce an arbitrary letter sequence.
    pub fn from_letters(raw: impl IntoIterator<Item = Letter>) -> Word {
        let mut w = Word::empty();
        for l in raw {
            w.push_reduced(l);
        }
        w
    }

    fn push_reduced(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inverse()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Largest generator index used; 0 for the empty word.
    pub fn max_index(&self) -> usize {
        self.letters.iter().map(|l| l.index()).max().unwrap_or(0)
    }

    pub fn validate(&self, ctx: &GroupContext) -> Result<(), WordError> {
        for l in &self.letters {
            if l.index() > ctx.rank() {
                return Err(WordError::InvalidLetter {
                    value: l.value(),
                    rank: ctx.rank(),
                });
            }
        }
        Ok(())
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for &l in &other.letters {
            out.push_reduced(l);
        }
        out
    }

    /// g^-1 * w * g.
    pub fn conjugate(&self, g: &Word) -> Word {
        g.inverse().multiply(self).multiply(g)
    }

    /// [x, y] = x y x^-1 y^-1.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.multiply(y).multiply(&x.inverse()).multiply(&y.inverse())
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..e.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    /// Shortlex comparison: length first, then the canonical letter order.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }

    /// Split w = peel * core * peel^-1 with core cyclically reduced.
    fn cyclic_decompose(&self) -> (Vec<Letter>, Vec<Letter>) {
        let mut i = 0;
        let mut j = self.letters.len();
        while j - i >= 2 && self.letters[i] == self.letters[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        (self.letters[i..j].to_vec(), self.letters[..i].to_vec())
    }

    /// The cyclically reduced core as a plain word.
    pub fn cyclic_core(&self) -> Word {
        Word {
            letters: self.cyclic_decompose().0,
        }
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(a), Some(b)) => *a != b.inverse(),
            _ => true,
        }
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.shortlex_cmp(other)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

/// Freely reduce a raw signed-integer sequence.
pub fn free_reduce(values: &[i32], ctx: &GroupContext) -> Result<Word, WordError> {
    let mut w = Word::empty();
    for &v in values {
        w.push_reduced(Letter::new(v, ctx)?);
    }
    Ok(w)
}

/// Parse the a..z / A..Z text form; `1` alone is the empty word. The result is
/// freely reduced.
pub fn parse_word(s: &str, ctx: &GroupContext) -> Result<Word, WordError> {
    let s = s.trim();
    if s == "1" {
        return Ok(Word::empty());
    }
    let mut w = Word::empty();
    for (pos, ch) in s.chars().enumerate() {
        let value = match ch {
            'a'..='z' => (ch as u8 - b'a') as i32 + 1,
            'A'..='Z' => -((ch as u8 - b'A') as i32 + 1),
            _ => return Err(WordError::InvalidChar { ch, pos }),
        };
        w.push_reduced(Letter::new(value, ctx)?);
    }
    Ok(w)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupOpKind {
    Multiply,
    Invert,
    Conjugate,
    Commutator,
}

/// Uniform dispatcher over the basic operations, mainly for the CLI surface.
pub fn group_op(kind: GroupOpKind, args: &[Word]) -> Result<Word, WordError> {
    let need = |op: &'static str, n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(WordError::ArityMismatch {
                op,
                expected: n,
                got: args.len(),
            })
        }
    };
    match kind {
        GroupOpKind::Multiply => {
            need("multiply", 2)?;
            Ok(args[0].multiply(&args[1]))
        }
        GroupOpKind::Invert => {
            need("invert", 1)?;
            Ok(args[0].inverse())
        }
        GroupOpKind::Conjugate => {
            need("conjugate", 2)?;
            Ok(args[0].conjugate(&args[1]))
        }
        GroupOpKind::Commutator => {
            need("commutator", 2)?;
            Ok(Word::commutator(&args[0], &args[1]))
        }
    }
}

/// Canonical representative of a conjugacy class: the cyclically reduced core
/// rotated to its least position under the canonical letter order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicWord {
    letters: Vec<Letter>,
}

impl CyclicWord {
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn as_word(&self) -> Word {
        Word {
            letters: self.letters.clone(),
        }
    }
}

impl PartialOrd for CyclicWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CyclicWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.as_word().fmt(f)
    }
}

/// Index of the least rotation (Booth's algorithm).
fn least_rotation_index(seq: &[Letter]) -> usize {
    let n = seq.len();
    if n <= 1 {
        return 0;
    }
    let key = |i: usize| seq[i % n].ord_key();
    let mut f = vec![usize::MAX; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let mut i = f[j - k - 1];
        while i != usize::MAX && key(j) != key(k + i + 1) {
            if key(j) < key(k + i + 1) {
                k = j - i - 1;
            }
            i = f[i];
        }
        if i == usize::MAX && key(j) != key(k) {
            if key(j) < key(k) {
                k = j;
            }
            f[j - k] = usize::MAX;
        } else {
            f[j - k] = i.wrapping_add(1);
        }
    }
    k
}

pub fn canonical_cyclic(w: &Word) -> CyclicWord {
    let (core, _) = w.cyclic_decompose();
    let k = least_rotation_index(&core);
    let mut letters = Vec::with_capacity(core.len());
    letters.extend_from_slice(&core[k..]);
    letters.extend_from_slice(&core[..k]);
    CyclicWord { letters }
}

/// Conjugator g with g^-1 * w * g equal to the canonical cyclic form of w.
fn canonicalizing_conjugator(w: &Word) -> (CyclicWord, Word) {
    let (core, peel) = w.cyclic_decompose();
    let k = least_rotation_index(&core);
    let mut letters = Vec::with_capacity(core.len());
    letters.extend_from_slice(&core[k..]);
    letters.extend_from_slice(&core[..k]);
    let mut g = Word::from_letters(peel);
    for &l in &core[..k] {
        g.push_reduced(l);
    }
    (CyclicWord { letters }, g)
}

/// Conjugacy test with witness: Some(g) with g^-1 * u * g = v.
pub fn are_conjugate(u: &Word, v: &Word) -> Option<Word> {
    let (cu, gu) = canonicalizing_conjugator(u);
    let (cv, gv) = canonicalizing_conjugator(v);
    if cu == cv {
        Some(gu.multiply(&gv.inverse()))
    } else {
        None
    }
}

/// Image in the abelianization Z^rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentVector {
    entries: Vec<i64>,
}

impl ExponentVector {
    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// gcd of the absolute entries; 0 when the vector is zero.
    pub fn gcd(&self) -> u64 {
        self.entries.iter().fold(0u64, |g, &e| gcd(g, e.unsigned_abs()))
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

pub fn exponent_vector(w: &Word, ctx: &GroupContext) -> Result<ExponentVector, WordError> {
    w.validate(ctx)?;
    let mut entries = vec![0i64; ctx.rank()];
    for l in w.letters() {
        entries[l.index() - 1] += if l.is_inverse() { -1 } else { 1 };
    }
    Ok(ExponentVector { entries })
}

/// w = root^exponent with the root not itself a proper power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerDecomposition {
    pub root: Word,
    pub exponent: u32,
}

/// Maximal root: cyclically reduce w = u v u^-1, take the smallest literal
/// period of v, and conjugate the period block back by u. The root generates
/// the centralizer of w.
pub fn extract_root(w: &Word) -> Result<PowerDecomposition, WordError> {
    if w.is_empty() {
        return Err(WordError::EmptyWord);
    }
    let (core, peel) = w.cyclic_decompose();
    let n = core.len();
    let mut period = n;
    for p in 1..n {
        if n % p == 0 && (p..n).all(|i| core[i] == core[i % p]) {
            period = p;
            break;
        }
    }
    let mut letters = peel.clone();
    letters.extend_from_slice(&core[..period]);
    letters.extend(peel.iter().rev().map(|l| l.inverse()));
    // No junction cancels: w itself was reduced, and core[period-1] equals
    // core[n-1] because period divides n.
    Ok(PowerDecomposition {
        root: Word { letters },
        exponent: (n / period) as u32,
    })
}

pub fn is_proper_power(w: &Word) -> Result<bool, WordError> {
    Ok(extract_root(w)?.exponent >= 2)
}

/// All freely reduced words of exactly `len` letters, in shortlex order.
pub fn reduced_words_of_length(ctx: &GroupContext, len: usize) -> Vec<Word> {
    let letters = ctx.letters();
    let mut out = Vec::new();
    let mut cur: Vec<Letter> = Vec::with_capacity(len);
    fn rec(letters: &[Letter], len: usize, cur: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if cur.len() == len {
            out.push(Word {
                letters: cur.clone(),
            });
            return;
        }
        for &l in letters {
            if cur.last() == Some(&l.inverse()) {
                continue;
            }
            cur.push(l);
            rec(letters, len, cur, out);
            cur.pop();
        }
    }
    rec(&letters, len, &mut cur, &mut out);
    out
}

/// All freely reduced words of length at most `radius`, in shortlex order.
pub fn ball(ctx: &GroupContext, radius: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for len in 0..=radius {
        out.extend(reduced_words_of_length(ctx, len));
    }
    out
}
