//! Boundary tracing on (end, side) pairs.
//!
//! Every end has two sides, `A` then `B` in rotation-forward order. A corner
//! of a vertex joins `x.B` to `next(x).A`. An untwisted edge joins `x.A` to
//! `y.B` and `x.B` to `y.A`; a twisted edge joins equal sides. A half-ribbon
//! joins its own two sides through its free segment. The resulting graph on
//! sides is 2-regular; its cycles are the boundary circles.

use serde::Serialize;

use super::graph::HalfEdgedRibbonGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Side {
    A,
    B,
}

pub fn node(end: usize, side: Side) -> usize {
    2 * end + usize::from(side == Side::B)
}

pub fn node_end(n: usize) -> usize {
    n / 2
}

pub fn node_side(n: usize) -> Side {
    if n.is_multiple_of(2) {
        Side::A
    } else {
        Side::B
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SideVisit {
    pub end: usize,
    pub side: Side,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FaceKind {
    Internal,
    External,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceWalk {
    pub kind: FaceKind,
    pub steps: Vec<SideVisit>,
    /// Half-ribbon ends whose free segments bound an external walk.
    pub start_hr: Option<usize>,
    pub end_hr: Option<usize>,
}

/// One boundary circle: the alternating cycle of sides, plus the half-ribbons
/// whose free segments it crosses, in traversal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circle {
    pub nodes: Vec<usize>,
    pub free: Vec<usize>,
    /// Set for the boundary of a vertex without ends.
    pub bare_vertex: Option<usize>,
}

impl Circle {
    pub fn is_internal(&self) -> bool {
        self.free.is_empty()
    }
}

/// Precomputed corner links for a graph; reused across all of its states.
#[derive(Clone, Debug)]
pub struct SideGraph<'g> {
    pub g: &'g HalfEdgedRibbonGraph,
    pub corner: Vec<usize>,
}

impl<'g> SideGraph<'g> {
    pub fn new(g: &'g HalfEdgedRibbonGraph) -> Self {
        let mut corner = vec![usize::MAX; 2 * g.ends.len()];
        for v in &g.vertices {
            let r = &v.rotation;
            for i in 0..r.len() {
                let x = r[i];
                let y = r[(i + 1) % r.len()];
                corner[node(x, Side::B)] = node(y, Side::A);
                corner[node(y, Side::A)] = node(x, Side::B);
            }
        }
        SideGraph { g, corner }
    }

    /// Link across an edge or a free segment, given which edges are retained.
    pub fn across(&self, n: usize, retained: &[bool]) -> usize {
        let x = node_end(n);
        match self.g.end_edge[x] {
            Some(ei) if retained[ei] => {
                let e = &self.g.edges[ei];
                let y = if e.ends.0 == x { e.ends.1 } else { e.ends.0 };
                let side = node_side(n);
                let target = if e.twist {
                    side
                } else if side == Side::A {
                    Side::B
                } else {
                    Side::A
                };
                node(y, target)
            }
            _ => n ^ 1,
        }
    }

    fn is_free(&self, n: usize, retained: &[bool]) -> bool {
        match self.g.end_edge[node_end(n)] {
            Some(ei) => !retained[ei],
            None => true,
        }
    }

    pub fn circles(&self, retained: &[bool]) -> Vec<Circle> {
        let total = self.corner.len();
        let mut seen = vec![false; total];
        let mut out = Vec::new();
        for start in 0..total {
            if seen[start] {
                continue;
            }
            let mut nodes = Vec::new();
            let mut free = Vec::new();
            let mut cur = start;
            loop {
                seen[cur] = true;
                nodes.push(cur);
                let c = self.corner[cur];
                seen[c] = true;
                nodes.push(c);
                let nxt = self.across(c, retained);
                if nxt == (c ^ 1) && self.is_free(c, retained) {
                    free.push(node_end(c));
                }
                if nxt == start {
                    break;
                }
                cur = nxt;
            }
            out.push(Circle {
                nodes,
                free,
                bare_vertex: None,
            });
        }
        for (vi, v) in self.g.vertices.iter().enumerate() {
            if v.rotation.is_empty() {
                out.push(Circle {
                    nodes: Vec::new(),
                    free: Vec::new(),
                    bare_vertex: Some(vi),
                });
            }
        }
        out
    }

    /// Splits circles into internal faces and free-to-free external walks.
    pub fn walks(&self, retained: &[bool]) -> Vec<FaceWalk> {
        let visit = |n: usize| SideVisit {
            end: node_end(n),
            side: node_side(n),
        };
        let mut out = Vec::new();
        for c in self.circles(retained) {
            if c.is_internal() {
                out.push(FaceWalk {
                    kind: FaceKind::Internal,
                    steps: c.nodes.iter().map(|&n| visit(n)).collect(),
                    start_hr: None,
                    end_hr: None,
                });
                continue;
            }
            // Nodes come in (n, corner(n)) pairs; a free segment sits between
            // a corner node and the next pair's first node.
            let len = c.nodes.len();
            let breaks: Vec<usize> = (0..len / 2)
                .filter(|&i| {
                    let cn = c.nodes[2 * i + 1];
                    let next = c.nodes[(2 * i + 2) % len];
                    next == (cn ^ 1) && self.is_free(cn, retained)
                })
                .collect();
            for (j, &b) in breaks.iter().enumerate() {
                let from = (2 * b + 2) % len;
                let to_pair = breaks[(j + 1) % breaks.len()];
                let to = 2 * to_pair + 1;
                let mut steps = Vec::new();
                let mut i = from;
                loop {
                    steps.push(visit(c.nodes[i]));
                    if i == to {
                        break;
                    }
                    i = (i + 1) % len;
                }
                out.push(FaceWalk {
                    kind: FaceKind::External,
                    start_hr: Some(node_end(c.nodes[from])),
                    end_hr: Some(node_end(c.nodes[to])),
                    steps,
                });
            }
        }
        out
    }
}

pub fn all_retained(g: &HalfEdgedRibbonGraph) -> Vec<bool> {
    vec![true; g.num_edges()]
}

pub fn trace_faces(g: &HalfEdgedRibbonGraph) -> Vec<FaceWalk> {
    SideGraph::new(g).walks(&all_retained(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ribbon::parse::parse_graph;

    fn counts(src: &str) -> (usize, usize) {
        let g = parse_graph(src).unwrap();
        let w = trace_faces(&g);
        let int = w.iter().filter(|f| f.kind == FaceKind::Internal).count();
        (int, w.len() - int)
    }

    #[test]
    fn one_half_ribbon() {
        assert_eq!(counts("graph g\nvertex v: h1\n"), (0, 1));
    }

    #[test]
    fn two_half_ribbons() {
        assert_eq!(counts("graph g\nvertex v: h1 h2\n"), (0, 2));
    }

    #[test]
    fn annulus_and_moebius() {
        assert_eq!(counts("graph g\nvertex v: e.1 e.2\nedge e: twist=0\n"), (2, 0));
        assert_eq!(counts("graph g\nvertex v: e.1 e.2\nedge e: twist=1\n"), (1, 0));
    }

    #[test]
    fn every_side_visited_once() {
        let g = parse_graph(
            "graph g\nvertex u: a.1 h1 b.1 c.1\nvertex w: b.2 a.2 h2\nvertex x: c.2\nedge a: twist=0\nedge b: twist=1\nedge c: twist=0\n",
        )
        .unwrap();
        let walks = trace_faces(&g);
        let mut visited: Vec<(usize, Side)> = walks
            .iter()
            .flat_map(|w| w.steps.iter().map(|s| (s.end, s.side)))
            .collect();
        visited.sort();
        let before = visited.len();
        visited.dedup();
        assert_eq!(before, visited.len());
        assert_eq!(visited.len(), 2 * g.ends.len());
        for w in walks.iter().filter(|w| w.kind == FaceKind::External) {
            assert!(g.end_edge[w.start_hr.unwrap()].is_none());
            assert!(g.end_edge[w.end_hr.unwrap()].is_none());
        }
    }
}
