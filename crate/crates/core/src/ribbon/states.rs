use thiserror::Error;

use super::faces::SideGraph;
use super::graph::HalfEdgedRibbonGraph;
use super::stats::{state_stats, GraphStats};

pub const DEFAULT_MAX_EDGES: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{edges} edges exceed the enumeration limit {limit}; set HERG_MAX_EDGES>={edges} to allow")]
pub struct LimitExceeded {
    pub edges: usize,
    pub limit: usize,
}

/// Limit from `HERG_MAX_EDGES`, falling back to the default.
pub fn max_edges() -> usize {
    std::env::var("HERG_MAX_EDGES")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_EDGES)
}

pub fn check_limit(edges: usize) -> Result<(), LimitExceeded> {
    let limit = max_edges();
    if edges > limit || edges >= 64 {
        Err(LimitExceeded { edges, limit })
    } else {
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct State {
    /// Bit `i` set iff edge `i` (natural id order) is retained.
    pub mask: u64,
    pub stats: GraphStats,
}

pub fn mask_to_retained(mask: u64, edges: usize) -> Vec<bool> {
    (0..edges).map(|i| mask >> i & 1 == 1).collect()
}

/// All `2^e` states in increasing bitmask order.
pub fn enumerate_states(g: &HalfEdgedRibbonGraph) -> Result<Vec<State>, LimitExceeded> {
    check_limit(g.num_edges())?;
    let sg = SideGraph::new(g);
    let ne = g.num_edges();
    Ok((0..1u64 << ne)
        .map(|mask| State {
            mask,
            stats: state_stats(&sg, &mask_to_retained(mask, ne)),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ribbon::parse::parse_graph;

    #[test]
    fn counts_and_cut_formula() {
        let g = parse_graph("graph g\nvertex v: e.1 e.2 h1\nvertex w: d.1\nvertex x: d.2\nedge e: twist=0\nedge d: twist=0\n")
            .unwrap();
        let states = enumerate_states(&g).unwrap();
        assert_eq!(states.len(), 4);
        for s in &states {
            assert_eq!(s.stats.f, 1 + 2 * (2 - s.stats.e));
            assert_eq!(s.stats.v, 3);
            assert_eq!(s.stats.bd, s.stats.f_int + s.stats.c_bd);
        }
        assert_eq!(states[0].stats.f, 5);
    }

    #[test]
    fn edgeless_graph_has_one_state() {
        let g = parse_graph("graph g\nvertex v: h1\n").unwrap();
        assert_eq!(enumerate_states(&g).unwrap().len(), 1);
    }
}
