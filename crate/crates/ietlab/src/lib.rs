//! An exact-arithmetic laboratory for interval exchange transformations
//! with flips: construction, iteration, minimality certificates, first-return
//! maps and the star modification, combinatorial suspensions of circle
//! exchanges, and rationally independent Cantor towers.
//!
//! Every certificate in this crate is computed over exact rationals; the
//! irrational inputs are declared basis symbols with refinable interval
//! enclosures, so equality is canonical and order is decidable. Reports state
//! the standing hypothesis: basis symbols (together with 1) are assumed
//! rationally independent.

pub mod rat;

pub mod numbers;

pub mod iet;

pub mod induction;

pub mod suspension;

pub mod cantor;

pub mod io;

pub mod report;

pub mod svg;

pub mod cli;

pub use numbers::{SymbolTable, SymbolicReal, Verdict};
