//! Whitehead automorphisms and primitivity testing.
//!
//! Type I elements are the signed permutations of the generators. A Type II
//! element fixes a multiplier letter x and sends every other generator y to
//! one of y, yx, x'y, x'yx. Greedy descent through this finite set minimizes
//! word length over the full automorphism group, which decides primitivity:
//! a word is primitive exactly when its minimal length is 1.

use crate::word::{GroupContext, Letter, Word, WordError, exponent_vector};
use std::collections::HashMap;
use std::sync::OnceLock;

/// Enumeration is capped here; the Type II count grows as 2r * 4^(r-1).
pub const MAX_WHITEHEAD_RANK: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WhiteheadError {
    #[error("rank {rank} exceeds the Whitehead enumeration cap {MAX_WHITEHEAD_RANK}")]
    RankTooLarge { rank: usize },
    #[error("word uses generator {index} beyond rank {rank}")]
    ContextMismatch { index: usize, rank: usize },
    #[error("the empty word is not an element to test")]
    EmptyWord,
    #[error("images do not form a free basis")]
    NotABasis,
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutomorphismKind {
    TypeI,
    TypeII,
}

/// An automorphism given by generator images, basis-verified on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhiteheadAutomorphism {
    kind: AutomorphismKind,
    rank: usize,
    images: Vec<Word>,
}

impl WhiteheadAutomorphism {
    pub fn new(
        kind: AutomorphismKind,
        rank: usize,
        images: Vec<Word>,
    ) -> Result<Self, WhiteheadError> {
        if rank > MAX_WHITEHEAD_RANK {
            return Err(WhiteheadError::RankTooLarge { rank });
        }
        GroupContext::new(rank)?;
        if images.len() != rank || !images_form_basis(&images, rank) {
            return Err(WhiteheadError::NotABasis);
        }
        Ok(WhiteheadAutomorphism { kind, rank, images })
    }

    pub fn kind(&self) -> AutomorphismKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// images[i] is the image of generator i+1.
    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Result<Word, WhiteheadError> {
        if w.max_index() > self.rank {
            return Err(WhiteheadError::ContextMismatch {
                index: w.max_index(),
                rank: self.rank,
            });
        }
        let mut out = Word::empty();
        for l in w.letters() {
            let image = &self.images[l.index() - 1];
            if l.is_inverse() {
                out = out.multiply(&image.inverse());
            } else {
                out = out.multiply(image);
            }
        }
        Ok(out)
    }

    /// self after other: (self . other)(g) = self(other(g)).
    pub fn compose(
        &self,
        other: &WhiteheadAutomorphism,
    ) -> Result<WhiteheadAutomorphism, WhiteheadError> {
        if self.rank != other.rank {
            return Err(WhiteheadError::ContextMismatch {
                index: other.rank,
                rank: self.rank,
            });
        }
        let images = other
            .images
            .iter()
            .map(|im| self.apply(im))
            .collect::<Result<Vec<_>, _>>()?;
        // Compositions are not generally Whitehead elements of either type;
        // the kind field carries the left factor's tag.
        Ok(WhiteheadAutomorphism {
            kind: self.kind,
            rank: self.rank,
            images,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, im)| im.letters().len() == 1 && im.letters()[0].value() == i as i32 + 1)
    }
}

impl std::fmt::Display for WhiteheadAutomorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let ctx = GroupContext::new(self.rank).expect("rank checked at construction");
        let parts: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .map(|(i, im)| {
                let gen = Letter::new(i as i32 + 1, &ctx).expect("index within rank");
                format!("{}->{im}", gen.to_char())
            })
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Stallings folding graph for subgroup membership in a free group.
struct Folding {
    parent: Vec<usize>,
    adj: Vec<HashMap<i32, usize>>,
}

impl Folding {
    fn new() -> Self {
        Folding {
            parent: vec![0],
            adj: vec![HashMap::new()],
        }
    }

    fn fresh(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.adj.push(HashMap::new());
        self.parent.len() - 1
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn merge(&mut self, a: usize, b: usize) {
        let mut stack = vec![(a, b)];
        while let Some((a, b)) = stack.pop() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            let (keep, drop) = if self.adj[a].len() >= self.adj[b].len() {
                (a, b)
            } else {
                (b, a)
            };
            self.parent[drop] = keep;
            let dropped: Vec<(i32, usize)> = self.adj[drop].drain().collect();
            for (label, target) in dropped {
                if let Some(&existing) = self.adj[keep].get(&label) {
                    stack.push((existing, target));
                } else {
                    self.adj[keep].insert(label, target);
                }
            }
        }
    }

    /// Adds a directed edge and its reverse, folding as needed.
    fn add_edge(&mut self, u: usize, label: i32, v: usize) {
        let u = self.find(u);
        let v = self.find(v);
        match self.adj[u].get(&label) {
            Some(&t) => self.merge(t, v),
            None => {
                self.adj[u].insert(label, v);
            }
        }
        let u = self.find(u);
        let v = self.find(v);
        match self.adj[v].get(&-label) {
            Some(&t) => self.merge(t, u),
            None => {
                self.adj[v].insert(-label, u);
            }
        }
    }

    fn add_loop(&mut self, base: usize, w: &Word) {
        let letters = w.letters();
        let mut cur = base;
        for (i, l) in letters.iter().enumerate() {
            let target = if i + 1 == letters.len() {
                base
            } else {
                self.fresh()
            };
            self.add_edge(cur, l.value(), target);
            cur = self.find(target);
        }
    }

    fn has_loop_at(&mut self, base: usize, label: i32) -> bool {
        let b = self.find(base);
        match self.adj[b].get(&label).copied() {
            Some(t) => self.find(t) == b,
            None => false,
        }
    }
}

/// Whether the tuple is a free basis: fold the subgroup graph and ask if every
/// generator reads a loop at the base point. A tuple of r words generating the
/// whole rank-r group is automatically a basis.
fn images_form_basis(images: &[Word], rank: usize) -> bool {
    let mut graph = Folding::new();
    for w in images {
        graph.add_loop(0, w);
    }
    (1..=rank as i32).all(|g| graph.has_loop_at(0, g))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// The full Whitehead set at this rank: all Type I (signed permutations,
/// identity included) followed by all non-identity Type II, in a fixed order.
pub fn enumerate_whitehead(
    ctx: &GroupContext,
) -> Result<Vec<WhiteheadAutomorphism>, WhiteheadError> {
    let rank = ctx.rank();
    if rank > MAX_WHITEHEAD_RANK {
        return Err(WhiteheadError::RankTooLarge { rank });
    }
    let mut out = Vec::new();
    let single = |v: i32| Word::from_letters([Letter::new(v, ctx).unwrap()]);

    for perm in permutations(rank) {
        for mask in 0..(1u32 << rank) {
            let images: Vec<Word> = (0..rank)
                .map(|i| {
                    let sign = if mask >> i & 1 == 1 { -1 } else { 1 };
                    single(sign * (perm[i] as i32 + 1))
                })
                .collect();
            out.push(WhiteheadAutomorphism::new(
                AutomorphismKind::TypeI,
                rank,
                images,
            )?);
        }
    }

    // Choice digits per non-multiplier generator: 0 y, 1 yx, 2 x'y, 3 x'yx.
    for x in ctx.letters() {
        let others: Vec<usize> = (1..=rank).filter(|&i| i != x.index()).collect();
        let total = 4u64.pow(others.len() as u32);
        for code in 1..total {
            let mut digits = code;
            let mut images: Vec<Word> = (1..=rank).map(|i| single(i as i32)).collect();
            let xw = single(x.value());
            for &gen in &others {
                let choice = digits % 4;
                digits /= 4;
                let y = single(gen as i32);
                images[gen - 1] = match choice {
                    0 => y,
                    1 => y.multiply(&xw),
                    2 => xw.inverse().multiply(&y),
                    _ => xw.inverse().multiply(&y).multiply(&xw),
                };
            }
            out.push(WhiteheadAutomorphism::new(
                AutomorphismKind::TypeII,
                rank,
                images,
            )?);
        }
    }
    Ok(out)
}

fn cached_whitehead(rank: usize) -> &'static [WhiteheadAutomorphism] {
    static CACHE: [OnceLock<Vec<WhiteheadAutomorphism>>; MAX_WHITEHEAD_RANK] = [
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
    ];
    CACHE[rank - 1].get_or_init(|| enumerate_whitehead(&GroupContext::new(rank).unwrap()).unwrap())
}

/// Greedy descent record: each step applies the first automorphism in
/// enumeration order that strictly shortens the current word.
#[derive(Debug, Clone)]
pub struct MinimizationTrace {
    pub initial: Word,
    pub steps: Vec<(WhiteheadAutomorphism, Word)>,
    pub minimal: Word,
}

pub fn minimize_length(w: &Word, ctx: &GroupContext) -> Result<MinimizationTrace, WhiteheadError> {
    if ctx.rank() > MAX_WHITEHEAD_RANK {
        return Err(WhiteheadError::RankTooLarge { rank: ctx.rank() });
    }
    if w.max_index() > ctx.rank() {
        return Err(WhiteheadError::ContextMismatch {
            index: w.max_index(),
            rank: ctx.rank(),
        });
    }
    let auts = cached_whitehead(ctx.rank());
    let mut current = w.clone();
    let mut steps = Vec::new();
    loop {
        let mut advanced = false;
        for aut in auts {
            let image = aut.apply(&current)?;
            if image.len() < current.len() {
                steps.push((aut.clone(), image.clone()));
                current = image;
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }
    Ok(MinimizationTrace {
        initial: w.clone(),
        steps,
        minimal: current,
    })
}

/// Whitehead's criterion: w is an image of a generator under some automorphism
/// exactly when its minimized length is 1. A primitive word maps to a basis
/// vector of the abelianization, so a non-unit exponent gcd settles the
/// negative case without search.
pub fn is_primitive(w: &Word, ctx: &GroupContext) -> Result<bool, WhiteheadError> {
    if w.is_empty() {
        return Err(WhiteheadError::EmptyWord);
    }
    if ctx.rank() > MAX_WHITEHEAD_RANK {
        return Err(WhiteheadError::RankTooLarge { rank: ctx.rank() });
    }
    if exponent_vector(w, ctx)?.gcd() != 1 {
        return Ok(false);
    }
    Ok(minimize_length(w, ctx)?.minimal.len() == 1)
}
