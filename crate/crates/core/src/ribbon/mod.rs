//! Ribbon graphs with half-ribbons: data model, boundary tracing, statistics
//! and state enumeration.

pub mod faces;
pub mod graph;
pub mod parse;
pub mod states;
pub mod stats;

use serde::Serialize;

pub use faces::{trace_faces, FaceKind, FaceWalk, Side, SideGraph, SideVisit};
pub use graph::{natural_key, Edge, End, GraphError, HalfEdgedRibbonGraph, Mark, RawGraph, Vertex};
pub use parse::parse_graph;
pub use states::{enumerate_states, LimitExceeded, State};
pub use stats::{stats, GraphStats};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryGraph {
    /// Half-ribbon end labels.
    pub vertices: Vec<String>,
    /// One entry per external face: its two terminal half-ribbons.
    pub edges: Vec<(String, String)>,
    pub components: usize,
}

pub fn boundary_graph(g: &HalfEdgedRibbonGraph) -> BoundaryGraph {
    let hrs = g.half_ribbons();
    let pos = |end: usize| hrs.iter().position(|&h| h == end).expect("half-ribbon");
    let mut uf = stats::UnionFind::new(hrs.len());
    let mut edges = Vec::new();
    for w in trace_faces(g).into_iter().filter(|w| w.kind == FaceKind::External) {
        let (a, b) = (w.start_hr.expect("external"), w.end_hr.expect("external"));
        uf.union(pos(a), pos(b));
        edges.push((g.ends[a].label.clone(), g.ends[b].label.clone()));
    }
    BoundaryGraph {
        vertices: hrs.iter().map(|&h| g.ends[h].label.clone()).collect(),
        edges,
        components: uf.components,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_graph_has_empty_boundary() {
        let g = parse_graph("graph g\nvertex v: e.1 e.2\nedge e: twist=0\n").unwrap();
        let b = boundary_graph(&g);
        assert!(b.vertices.is_empty() && b.edges.is_empty());
        assert_eq!(b.components, 0);
    }

    #[test]
    fn single_half_ribbon_gives_loop() {
        let b = boundary_graph(&parse_graph("graph g\nvertex v: h1\n").unwrap());
        assert_eq!(b.edges, vec![("h1".to_string(), "h1".to_string())]);
        assert_eq!(b.components, 1);
    }

    #[test]
    fn two_half_ribbons_give_parallel_edges() {
        let b = boundary_graph(&parse_graph("graph g\nvertex v: h1 h2\n").unwrap());
        assert_eq!(b.vertices.len(), 2);
        assert_eq!(b.edges.len(), 2);
        assert_eq!(b.components, 1);
        for (x, y) in &b.edges {
            assert_ne!(x, y);
        }
    }
}
