//! Fundamental groups of complements of Fermat line arrangements
//! `(x^n - y^n)(y^n - z^n)(z^n - x^n) = 0`.
//!
//! - [`words`]: free-group words, reduction, conjugacy, substitutions.
//! - [`arrangement`]: the lines, their intersections and fiber punctures.
//! - [`presentation`]: monodromy actions and presentations from closed formulas.
//! - [`monodromy`]: numerical puncture tracking and braid extraction.
//! - [`invariants`]: Smith normal form, homomorphism counts, Tietze moves.
//! - [`cli`]: the `fermat` command-line tool.

pub mod arrangement;
pub mod cli;
pub mod invariants;
pub mod monodromy;
pub mod presentation;
pub mod words;
