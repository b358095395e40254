//! Simplification of filtered simplicial complexes by edge contraction, with
//! control over how far the persistence diagrams move.
//!
//! A [`complex::FilteredComplex`] is contracted one edge at a time by
//! [`contraction::contract`]. On closed surfaces, [`surface`] decides which
//! contractions keep the persistence pairing intact. In general, [`stability`]
//! selects contractions whose effect on the dimension-`p` diagram is bounded
//! by `ε` in bottleneck distance, and [`stability::simplify`] applies them in
//! stages. [`persistence`] provides the matrix-reduction oracle and the
//! bottleneck distance used to check all of this.

pub mod chain;
pub mod complex;
pub mod contraction;
pub mod generate;
pub mod io;
pub mod pairing;
pub mod persistence;
pub mod stability;
pub mod surface;
pub mod union_find;
pub mod verify;
