use serde::Serialize;

use super::faces::{all_retained, Circle, SideGraph};
use super::graph::HalfEdgedRibbonGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GraphStats {
    pub v: usize,
    pub e: usize,
    pub k: usize,
    pub r: usize,
    pub n: usize,
    pub f: usize,
    pub f_int: usize,
    pub f_ext: usize,
    pub c_bd: usize,
    pub t: u8,
    pub bd: usize,
}

/// Minimal union-find used for component counts.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    pub components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            components: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        self.components -= 1;
        true
    }
}

/// Connected components of the retained subgraph.
pub fn components(g: &HalfEdgedRibbonGraph, retained: &[bool]) -> UnionFind {
    let mut uf = UnionFind::new(g.num_vertices());
    for (i, _) in g.edges.iter().enumerate().filter(|(i, _)| retained[*i]) {
        let (u, w) = g.edge_vertices(i);
        uf.union(u, w);
    }
    uf
}

/// 1 when some cycle of the retained subgraph carries an odd number of twists.
pub fn nonorientable(g: &HalfEdgedRibbonGraph, retained: &[bool]) -> bool {
    // Signs relative to a spanning forest, propagated to a fixpoint.
    let nv = g.num_vertices();
    let mut sign: Vec<Option<bool>> = vec![None; nv];
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); nv];
    for (i, e) in g.edges.iter().enumerate() {
        if !retained[i] {
            continue;
        }
        let (u, w) = g.edge_vertices(i);
        if u == w {
            if e.twist {
                return true;
            }
            continue;
        }
        adj[u].push((w, e.twist));
        adj[w].push((u, e.twist));
    }
    for root in 0..nv {
        if sign[root].is_some() {
            continue;
        }
        sign[root] = Some(false);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            let su = sign[u].expect("visited");
            for &(w, tw) in &adj[u] {
                let want = su ^ tw;
                match sign[w] {
                    None => {
                        sign[w] = Some(want);
                        stack.push(w);
                    }
                    Some(sw) if sw != want => return true,
                    _ => {}
                }
            }
        }
    }
    false
}

pub fn stats_from_circles(
    g: &HalfEdgedRibbonGraph,
    retained: &[bool],
    circles: &[Circle],
) -> GraphStats {
    let v = g.num_vertices();
    let e = retained.iter().filter(|&&b| b).count();
    let k = components(g, retained).components;
    let r = v - k;
    let f = g.num_half_ribbons() + 2 * (g.num_edges() - e);
    let f_int = circles.iter().filter(|c| c.is_internal()).count();
    let c_bd = circles.len() - f_int;
    let f_ext: usize = circles.iter().map(|c| c.free.len()).sum();
    debug_assert_eq!(f_ext, f);
    GraphStats {
        v,
        e,
        k,
        r,
        n: e - r,
        f,
        f_int,
        f_ext,
        c_bd,
        t: u8::from(nonorientable(g, retained)),
        bd: circles.len(),
    }
}

pub fn state_stats(sg: &SideGraph<'_>, retained: &[bool]) -> GraphStats {
    let circles = sg.circles(retained);
    stats_from_circles(sg.g, retained, &circles)
}

pub fn stats(g: &HalfEdgedRibbonGraph) -> GraphStats {
    state_stats(&SideGraph::new(g), &all_retained(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ribbon::parse::parse_graph;

    #[test]
    fn bare_vertex() {
        let s = stats(&parse_graph("graph g\nvertex v:\n").unwrap());
        assert_eq!((s.v, s.e, s.k, s.r, s.n, s.f_int, s.c_bd, s.f), (1, 0, 1, 0, 0, 1, 0, 0));
    }

    #[test]
    fn loops() {
        let s = stats(&parse_graph("graph g\nvertex v: e.1 e.2\nedge e: twist=0\n").unwrap());
        assert_eq!((s.bd, s.f_int, s.t), (2, 2, 0));
        let s = stats(&parse_graph("graph g\nvertex v: e.1 e.2\nedge e: twist=1\n").unwrap());
        assert_eq!((s.bd, s.f_int, s.t), (1, 1, 1));
    }

    #[test]
    fn torus_genus() {
        // Two interlaced untwisted loops: one face, genus one.
        let s = stats(&parse_graph("graph g\nvertex v: a.1 b.1 a.2 b.2\nedge a: twist=0\nedge b: twist=0\n").unwrap());
        assert_eq!(s.bd, 1);
        assert_eq!((2 - s.v as i64 + s.e as i64 - s.bd as i64) / 2, 1);
    }

    #[test]
    fn twisted_cycle_parity() {
        let two = "graph g\nvertex u: a.1 b.1\nvertex w: b.2 a.2\nedge a: twist=1\nedge b: twist=1\n";
        assert_eq!(stats(&parse_graph(two).unwrap()).t, 0);
        let one = "graph g\nvertex u: a.1 b.1\nvertex w: b.2 a.2\nedge a: twist=1\nedge b: twist=0\n";
        assert_eq!(stats(&parse_graph(one).unwrap()).t, 1);
    }
}
