//! Finite set-theoretic Yang–Baxter machinery: braided sets and their
//! reflections, guitar maps and derived solutions, Drinfeld twist data,
//! braided groups and skew braces, graded structure monoids, and exhaustive
//! enumeration of all of the above at desk scale.
//!
//! Everything operates on dense tables over the carrier `0..n-1`. All types
//! are immutable after construction and all operations are pure, so values
//! can be shared freely between threads.
//!
//! # Table conventions
//!
//! A solution is stored as two `n × n` tables for the componentwise form
//! `r(a, b) = (sigma[a][b], rho[b][a])`. Note the index order of `rho`: the
//! acting element comes **first**, so `rho[b]` is the row of the right action
//! of `b` and both actions can be checked for bijectivity row by row. This is
//! the one convention worth memorising; everything else follows from it.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live in
//! the companion `reflectwist` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod brace;
pub mod error;
pub mod group;
pub mod group_twist;
pub mod map;
pub mod perm;
pub mod search;
pub mod solution;
pub mod twist;
pub mod words;

pub use brace::{BraidedGroup, SkewBrace};
pub use error::Error;
pub use group::FiniteGroup;
pub use map::{CubeMap, FiniteMap, Side, SquareMap};
pub use solution::{BraidedSet, Shelf};
pub use twist::TwistDatum;
