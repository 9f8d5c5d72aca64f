//! Rank-`n` colored graphs with half-edges: bubbles, faces and boundary,
//! the generalized invariant, and decompositions along colored edges.

pub mod census;
pub mod corpus;
pub mod decomp;
pub mod graph;
pub mod invariant;
pub mod parse;
pub mod strands;

pub use census::{colored_boundary, colored_stats, ColoredBoundary, StateContext, StrandedStats};
pub use decomp::{
    assemble_colored, colored_two_sum, verify_prop_stranded, ColoredDecomposition, ColoredPiece, StrandedReport,
};
pub use graph::{melon, ColoredBuilder, ColoredError, ColoredTensorGraph, Polarity};
pub use invariant::{invariant_t, multivariate_t, Alphas};
pub use parse::{parse_colored, parse_colored_manifest};
pub use strands::{contract_colored, StrandedGraph};
