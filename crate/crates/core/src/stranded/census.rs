//! Compact-level statistics of a state: components, bubbles per color
//! subset, open and closed faces, and the boundary graph.

use serde::Serialize;

use super::graph::ColoredTensorGraph;
use crate::ribbon::stats::UnionFind;

/// A leg of a vertex in a state: an edge end or a half-edge.
#[derive(Clone, Copy, Debug)]
enum Leg {
    Edge(usize),
    Half(usize),
}

/// Per-graph data reused across all states.
#[derive(Clone, Debug)]
pub struct StateContext<'g> {
    pub graph: &'g ColoredTensorGraph,
    legs: Vec<Vec<(usize, Leg)>>,
    free: Vec<usize>,
    /// Color subsets of size 2..=rank, as bitmasks, by size then value.
    subsets: Vec<u32>,
    contracted_forest: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct StrandedStats {
    /// Vertices after compact-level contractions.
    pub v: usize,
    /// Retained edges that are not contracted.
    pub e: usize,
    pub k: usize,
    pub r: usize,
    pub nullity: usize,
    /// Half-edges, original plus those left by cut edges.
    pub f: usize,
    /// Closed faces.
    pub f_int: usize,
    /// Open faces, the edges of the boundary graph.
    pub e_bd: usize,
    /// Components of the boundary graph.
    pub c_bd: usize,
    /// `bubbles[p]` for `p = 0..=rank`; index 0 and 1 are vertices and edges.
    pub bubbles: Vec<usize>,
    /// Open bubbles per size.
    pub open_bubbles: Vec<usize>,
}

/// One open face: its color pair and the half-edges it ends on.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct OpenFace {
    pub colors: (usize, usize),
    pub ends: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoredBoundary {
    pub vertices: Vec<String>,
    /// Sorted.
    pub edges: Vec<OpenFace>,
    pub components: usize,
}

pub fn subsets_by_size(rank: usize) -> Vec<u32> {
    let colors = rank + 1;
    let mut out: Vec<u32> = (0u32..1 << colors)
        .filter(|m| (2..=rank).contains(&(m.count_ones() as usize)))
        .collect();
    out.sort_by_key(|m| (m.count_ones(), *m));
    out
}

impl<'g> StateContext<'g> {
    pub fn new(graph: &'g ColoredTensorGraph) -> Self {
        let mut legs = vec![Vec::new(); graph.vertices.len()];
        for (i, e) in graph.edges.iter().enumerate() {
            legs[e.ends.0].push((e.color, Leg::Edge(i)));
            legs[e.ends.1].push((e.color, Leg::Edge(i)));
        }
        for (i, h) in graph.halves.iter().enumerate() {
            legs[h.vertex].push((h.color, Leg::Half(i)));
        }
        for l in &mut legs {
            l.sort_by_key(|(c, _)| *c);
        }
        let mut uf = UnionFind::new(graph.vertices.len());
        let contracted_forest = graph
            .edges
            .iter()
            .filter(|e| e.contracted && uf.union(e.ends.0, e.ends.1))
            .count();
        StateContext {
            graph,
            legs,
            free: graph.free_edges(),
            subsets: subsets_by_size(graph.rank),
            contracted_forest,
        }
    }

    pub fn num_free(&self) -> usize {
        self.free.len()
    }

    /// Retention flags over all edges for a mask over free edges.
    pub fn retained(&self, mask: u64) -> Vec<bool> {
        let mut r: Vec<bool> = self.graph.edges.iter().map(|e| e.contracted).collect();
        for (bit, &i) in self.free.iter().enumerate() {
            r[i] = mask >> bit & 1 == 1;
        }
        r
    }

    /// Half-edge labels of the state: originals, then one per end of each cut edge.
    fn half_labels(&self, retained: &[bool]) -> (Vec<String>, Vec<Option<[usize; 2]>>) {
        let g = self.graph;
        let mut labels: Vec<String> = g.halves.iter().map(|h| h.id.clone()).collect();
        let mut cut_index = vec![None; g.edges.len()];
        for (i, e) in g.edges.iter().enumerate() {
            if !retained[i] {
                let at = labels.len();
                labels.push(format!("{}.1", e.id));
                labels.push(format!("{}.2", e.id));
                cut_index[i] = Some([at, at + 1]);
            }
        }
        (labels, cut_index)
    }

    /// Half-edge index of a leg at vertex `v` in the state, if it is one.
    fn half_at(&self, v: usize, leg: Leg, retained: &[bool], cut: &[Option<[usize; 2]>]) -> Option<usize> {
        match leg {
            Leg::Half(h) => Some(h),
            Leg::Edge(i) if !retained[i] => {
                let e = &self.graph.edges[i];
                let [a, b] = cut[i].expect("cut edge indexed");
                Some(if e.ends.0 == v { a } else { b })
            }
            Leg::Edge(_) => None,
        }
    }

    pub fn stats(&self, mask: u64) -> StrandedStats {
        self.stats_and_boundary(mask, false).0
    }

    pub fn boundary(&self, mask: u64) -> ColoredBoundary {
        self.stats_and_boundary(mask, true).1.expect("requested")
    }

    fn stats_and_boundary(&self, mask: u64, want_boundary: bool) -> (StrandedStats, Option<ColoredBoundary>) {
        let g = self.graph;
        let nv = g.vertices.len();
        let retained = self.retained(mask);
        let (labels, cut) = self.half_labels(&retained);
        let mut comp = UnionFind::new(nv);
        for (i, e) in g.edges.iter().enumerate() {
            if retained[i] {
                comp.union(e.ends.0, e.ends.1);
            }
        }
        let k = comp.components;
        let e = self.free.iter().filter(|&&i| retained[i]).count();
        let v = nv - self.contracted_forest;
        let r = v - k;
        let mut bubbles = vec![0usize; g.rank + 1];
        let mut open_bubbles = vec![0usize; g.rank + 1];
        bubbles[0] = v;
        bubbles[1] = e;
        let (mut f_int, mut e_bd) = (0, 0);
        let mut bd = UnionFind::new(labels.len());
        let mut faces = Vec::new();
        for &s in &self.subsets {
            let p = s.count_ones() as usize;
            let in_s = |c: usize| s >> c & 1 == 1;
            let mut uf = UnionFind::new(nv);
            for (i, ed) in g.edges.iter().enumerate() {
                if retained[i] && in_s(ed.color) {
                    uf.union(ed.ends.0, ed.ends.1);
                }
            }
            // root -> (touched, half-edges of colors in s)
            let mut groups: Vec<Option<Vec<usize>>> = vec![None; nv];
            for vtx in 0..nv {
                let halves: Vec<usize> = self.legs[vtx]
                    .iter()
                    .filter(|(c, _)| in_s(*c))
                    .filter_map(|&(_, leg)| self.half_at(vtx, leg, &retained, &cut))
                    .collect();
                if !self.legs[vtx].iter().any(|(c, _)| in_s(*c)) {
                    continue;
                }
                let root = uf.find(vtx);
                groups[root].get_or_insert_with(Vec::new).extend(halves);
            }
            for hs in groups.into_iter().flatten() {
                bubbles[p] += 1;
                if hs.is_empty() {
                    if p == 2 {
                        f_int += 1;
                    }
                    continue;
                }
                open_bubbles[p] += 1;
                if p == 2 {
                    e_bd += 1;
                    for w in hs.windows(2) {
                        bd.union(w[0], w[1]);
                    }
                    if want_boundary {
                        let colors: Vec<usize> = (0..=g.rank).filter(|&c| in_s(c)).collect();
                        let mut ends: Vec<String> = hs.iter().map(|&h| labels[h].clone()).collect();
                        ends.sort();
                        faces.push(OpenFace {
                            colors: (colors[0], colors[1]),
                            ends,
                        });
                    }
                }
            }
        }
        let stats = StrandedStats {
            v,
            e,
            k,
            r,
            nullity: e - r,
            f: labels.len(),
            f_int,
            e_bd,
            c_bd: bd.components,
            bubbles,
            open_bubbles,
        };
        let boundary = want_boundary.then(|| {
            faces.sort();
            let mut vertices = labels.clone();
            vertices.sort();
            ColoredBoundary {
                vertices,
                edges: faces,
                components: stats.c_bd,
            }
        });
        (stats, boundary)
    }
}

/// Statistics of the graph itself (every free edge retained).
pub fn colored_stats(g: &ColoredTensorGraph) -> StrandedStats {
    let ctx = StateContext::new(g);
    ctx.stats((1u64 << ctx.num_free()) - 1)
}

pub fn colored_boundary(g: &ColoredTensorGraph) -> ColoredBoundary {
    let ctx = StateContext::new(g);
    ctx.boundary((1u64 << ctx.num_free()) - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stranded::graph::{melon, ColoredBuilder};

    #[test]
    fn melon_full_state() {
        let m = melon(3);
        let s = colored_stats(&m);
        assert_eq!((s.v, s.e, s.k), (2, 4, 1));
        assert_eq!(s.bubbles, vec![2, 4, 6, 4]);
        assert_eq!((s.f_int, s.c_bd, s.e_bd, s.f), (6, 0, 0, 0));
    }

    #[test]
    fn melon_empty_state() {
        let m = melon(3);
        let s = StateContext::new(&m).stats(0);
        assert_eq!((s.f, s.f_int, s.k), (8, 0, 2));
        assert_eq!(s.e_bd, 12);
        assert_eq!(s.c_bd, 2);
    }

    #[test]
    fn cutting_color_zero_opens_its_faces() {
        let m = melon(3);
        let s = StateContext::new(&m).stats(0b1110);
        assert_eq!(s.f_int, 3);
        assert_eq!(s.e_bd, 3);
        assert_eq!(s.c_bd, 1);
        let b = StateContext::new(&m).boundary(0b1110);
        assert!(b.edges.iter().all(|f| f.colors.0 == 0 && f.ends == vec!["c0.1", "c0.2"]));
    }

    #[test]
    fn bare_vertex() {
        let g = ColoredBuilder::new("g", 3).vertex("v", None).build().unwrap();
        let s = colored_stats(&g);
        assert_eq!(s.bubbles, vec![1, 0, 0, 0]);
        assert_eq!((s.f_int, s.c_bd), (0, 0));
    }

    #[test]
    fn contracted_edge_reduces_vertex_count_only() {
        let m = melon(3);
        let mut b = m.to_builder();
        b.edges[0].4 = true;
        let c = b.build().unwrap();
        let (s, t) = (colored_stats(&m), colored_stats(&c));
        assert_eq!(t.v, 1);
        assert_eq!(t.e, 3);
        assert_eq!((s.f_int, s.k), (t.f_int, t.k));
        assert_eq!(&s.bubbles[2..], &t.bubbles[2..]);
    }
}
