//! Exact Clifford theory for finite groups.
//!
//! Given a finite group `G`, a normal subgroup `N` and an irreducible
//! character `θ` of `N`, this crate computes good classes, σ-indicators,
//! Gow indicators and (extended) inertia groups, and uses them to count the
//! irreducible characters of `G` lying over `θ`, the real ones among them, and
//! the Frobenius–Schur indicator of `θ↑G`. Every count is paired with an
//! independent brute-force computation from the character table.
//!
//! All arithmetic is exact: character values live in a cyclotomic field with
//! a canonical (Zumbroich) basis, and character tables are computed with the
//! Dixon–Schneider method over a prime field.

pub mod catalog;
pub mod chartab;
pub mod cli;
pub mod clifford;
pub mod counting;
pub mod cyclotomic;
mod error;
mod fp;
pub mod group;
pub mod groupfile;
pub mod par;
pub mod report;

pub use chartab::{CharacterTable, ClassFunction};
pub use clifford::{Ambient, Triple};
pub use cyclotomic::Cyclotomic;
pub use error::{Error, Result};
pub use group::{ConjClassSet, GroupSpec, GroupTable, QuotientGroup, Subgroup};
pub use par::Execution;
