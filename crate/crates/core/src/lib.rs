//! Half-edged ribbon graphs and rank-n colored stranded graphs, their
//! Bollobás–Riordan-type polynomial invariants, and exact checks of the
//! expansion identities obtained from 2-decompositions.

pub mod decomp;
pub mod invariants;
pub mod linalg;
pub mod ops;
pub mod poly;
pub mod random;
pub mod reports;
pub mod ribbon;
pub mod stranded;

pub use poly::{MultiPoly, Monomial, Rat};
pub use ribbon::{HalfEdgedRibbonGraph, GraphStats};
