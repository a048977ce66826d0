//! Desk-scale computations in free groups and their relatives:
//!
//! - [`word`]: free group words, cyclic normal forms, conjugacy, roots.
//! - [`whitehead`]: Whitehead automorphisms, length minimization, primitivity.
//! - [`abelian`]: Smith normal form, Szmielew invariants, elementary
//!   equivalence of direct sums of `Z`, `Z/d`, and localizations `Z[S^-1]`.
//! - [`genus`]: commutator recognition, genus certificates, power scans.
//! - [`sentences`]: a small first-order language over groups: parser,
//!   printer, prenex classification, sentence templates, exact and bounded
//!   evaluation, conjugacy separation in finite quotients.
//! - [`surface`]: the genus-4-relator surface group `K`, Dehn reduction,
//!   retractions onto a free subgroup.
//!
//! The `examples/` directory is the front door: each example is a runnable
//! tour of one capability (`cargo run --example word_arithmetic`, and so on).
//! The thin `flg` binary exposes the same operations as subcommands.

pub mod abelian;
pub mod cli;
pub mod genus;
pub mod sentences;
pub mod surface;
pub mod whitehead;
pub mod word;

pub use word::{GroupContext, Word};
