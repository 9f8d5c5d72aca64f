//! Strand-level view of a tensor graph: every leg carries one strand point
//! per other color, vertices pair points by chords, edges link the points of
//! their two legs. Contraction splices chords through the removed edge and
//! merges the two vertices into one chord diagram.

use std::collections::BTreeMap;

use super::census::{ColoredBoundary, OpenFace};
use super::graph::{ColoredError, ColoredTensorGraph};
use crate::ribbon::stats::UnionFind;

#[derive(Clone, Debug)]
enum LegKind {
    Edge(usize),
    Half(String),
}

#[derive(Clone, Debug)]
struct StrandLeg {
    vertex: usize,
    color: usize,
    kind: LegKind,
}

#[derive(Clone, Debug)]
pub struct StrandedGraph {
    legs: Vec<StrandLeg>,
    /// Point `(leg, other color)`.
    points: Vec<(usize, usize)>,
    chord: Vec<usize>,
    link: Vec<Option<usize>>,
    alive: Vec<bool>,
    /// Merged-into representative per original vertex.
    vertex_rep: Vec<usize>,
    edge_legs: Vec<[usize; 2]>,
    edge_contracted: Vec<bool>,
}

impl StrandedGraph {
    /// Requires every vertex to carry all colors. Edges flagged as
    /// contracted are spliced out.
    pub fn from_colored(g: &ColoredTensorGraph) -> Result<Self, ColoredError> {
        if !g.is_tensor() {
            return Err(ColoredError::Invalid(format!("{} is not a tensor graph", g.name)));
        }
        let mut legs = Vec::new();
        let mut edge_legs = Vec::new();
        for (i, e) in g.edges.iter().enumerate() {
            let a = legs.len();
            legs.push(StrandLeg {
                vertex: e.ends.0,
                color: e.color,
                kind: LegKind::Edge(i),
            });
            legs.push(StrandLeg {
                vertex: e.ends.1,
                color: e.color,
                kind: LegKind::Edge(i),
            });
            edge_legs.push([a, a + 1]);
        }
        for h in &g.halves {
            legs.push(StrandLeg {
                vertex: h.vertex,
                color: h.color,
                kind: LegKind::Half(h.id.clone()),
            });
        }
        let mut points = Vec::new();
        let mut index = BTreeMap::new();
        for (l, leg) in legs.iter().enumerate() {
            for other in (0..=g.rank).filter(|&c| c != leg.color) {
                index.insert((l, other), points.len());
                points.push((l, other));
            }
        }
        let mut leg_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (l, leg) in legs.iter().enumerate() {
            leg_of.insert((leg.vertex, leg.color), l);
        }
        let chord = points
            .iter()
            .map(|&(l, other)| {
                let partner = leg_of[&(legs[l].vertex, other)];
                index[&(partner, legs[l].color)]
            })
            .collect();
        let link = points
            .iter()
            .map(|&(l, other)| match legs[l].kind {
                LegKind::Edge(i) => {
                    let [a, b] = edge_legs[i];
                    Some(index[&(if l == a { b } else { a }, other)])
                }
                LegKind::Half(_) => None,
            })
            .collect();
        let mut sg = StrandedGraph {
            alive: vec![true; points.len()],
            points,
            chord,
            link,
            legs,
            vertex_rep: (0..g.vertices.len()).collect(),
            edge_contracted: vec![false; g.edges.len()],
            edge_legs,
        };
        for (i, e) in g.edges.iter().enumerate() {
            if e.contracted {
                sg.contract(i)?;
            }
        }
        Ok(sg)
    }

    fn vertex_of(&self, leg: usize) -> usize {
        let mut v = self.legs[leg].vertex;
        while self.vertex_rep[v] != v {
            v = self.vertex_rep[v];
        }
        v
    }

    pub fn contract(&mut self, edge: usize) -> Result<(), ColoredError> {
        if self.edge_contracted[edge] {
            return Err(ColoredError::Invalid(format!("edge #{edge} already contracted")));
        }
        let [la, lb] = self.edge_legs[edge];
        let (va, vb) = (self.vertex_of(la), self.vertex_of(lb));
        if va == vb {
            return Err(ColoredError::Invalid(format!("edge #{edge} is a loop after earlier contractions")));
        }
        let on_edge = |p: usize, pts: &[(usize, usize)]| pts[p].0 == la || pts[p].0 == lb;
        for x in 0..self.points.len() {
            if !self.alive[x] || on_edge(x, &self.points) || !on_edge(self.chord[x], &self.points) {
                continue;
            }
            let mut y = self.chord[x];
            let w = loop {
                let z = self.link[y].expect("edge point is linked");
                let w = self.chord[z];
                if !on_edge(w, &self.points) {
                    break w;
                }
                y = w;
            };
            self.chord[x] = w;
        }
        for p in 0..self.points.len() {
            if on_edge(p, &self.points) {
                self.alive[p] = false;
            }
        }
        self.vertex_rep[vb] = va;
        self.edge_contracted[edge] = true;
        Ok(())
    }

    /// Faces as point sets: `(colors, half-edge ends)`, `None` ends for closed.
    #[allow(clippy::type_complexity)]
    fn faces(&self) -> Vec<((usize, usize), Option<Vec<String>>)> {
        let mut uf = UnionFind::new(self.points.len());
        for p in (0..self.points.len()).filter(|&p| self.alive[p]) {
            uf.union(p, self.chord[p]);
            if let Some(q) = self.link[p] {
                uf.union(p, q);
            }
        }
        let mut groups: BTreeMap<usize, (usize, Vec<String>)> = BTreeMap::new();
        for p in (0..self.points.len()).filter(|&p| self.alive[p]) {
            let entry = groups.entry(uf.find(p)).or_insert((p, Vec::new()));
            if let LegKind::Half(id) = &self.legs[self.points[p].0].kind {
                entry.1.push(id.clone());
            }
        }
        groups
            .into_values()
            .map(|(p, mut ends)| {
                let (l, other) = self.points[p];
                let c = self.legs[l].color;
                ends.sort();
                ((c.min(other), c.max(other)), (!ends.is_empty()).then_some(ends))
            })
            .collect()
    }

    pub fn closed_faces(&self) -> usize {
        self.faces().iter().filter(|(_, e)| e.is_none()).count()
    }

    pub fn num_vertices(&self) -> usize {
        (0..self.vertex_rep.len()).filter(|&v| self.vertex_rep[v] == v).count()
    }

    pub fn boundary(&self) -> ColoredBoundary {
        let mut vertices: Vec<String> = self
            .legs
            .iter()
            .filter_map(|l| match &l.kind {
                LegKind::Half(id) => Some(id.clone()),
                LegKind::Edge(_) => None,
            })
            .collect();
        vertices.sort();
        let pos = |id: &String| vertices.binary_search(id).expect("half-edge listed");
        let mut uf = UnionFind::new(vertices.len());
        let mut edges = Vec::new();
        for (colors, ends) in self.faces() {
            if let Some(ends) = ends {
                for w in ends.windows(2) {
                    uf.union(pos(&w[0]), pos(&w[1]));
                }
                edges.push(OpenFace { colors, ends });
            }
        }
        edges.sort();
        ColoredBoundary {
            vertices,
            edges,
            components: uf.components,
        }
    }
}

/// Marks edge `id` as contracted at the compact level.
pub fn contract_colored(g: &ColoredTensorGraph, id: &str) -> Result<ColoredTensorGraph, ColoredError> {
    let i = g.edge_index(id)?;
    let e = &g.edges[i];
    if e.contracted {
        return Err(ColoredError::Invalid(format!("edge {id} already contracted")));
    }
    let mut uf = UnionFind::new(g.vertices.len());
    for c in g.edges.iter().filter(|c| c.contracted) {
        uf.union(c.ends.0, c.ends.1);
    }
    if uf.find(e.ends.0) == uf.find(e.ends.1) {
        return Err(ColoredError::Invalid(format!("edge {id} is a loop of the contracted graph")));
    }
    let mut out = g.clone();
    out.edges[i].contracted = true;
    out.bipartite = false;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stranded::census::{colored_boundary, colored_stats};
    use crate::stranded::graph::melon;

    #[test]
    fn strand_faces_match_bubbles() {
        let m = melon(3);
        let sg = StrandedGraph::from_colored(&m).unwrap();
        assert_eq!(sg.closed_faces(), colored_stats(&m).f_int);
    }

    #[test]
    fn contracting_melon_edge_keeps_faces() {
        let m = melon(3);
        let c = contract_colored(&m, "c0").unwrap();
        let sg = StrandedGraph::from_colored(&c).unwrap();
        assert_eq!(sg.num_vertices(), 1);
        assert_eq!(sg.closed_faces(), 6);
        assert!(sg.boundary().vertices.is_empty());
        assert!(contract_colored(&c, "c1").is_err());
    }

    #[test]
    fn contraction_keeps_open_boundary() {
        let mut b = melon(3).to_builder();
        b.edges.retain(|e| e.0 != "c3");
        b.halves.push(("h3u".into(), "u".into(), 3, None));
        b.halves.push(("h3w".into(), "w".into(), 3, None));
        let g = b.build().unwrap();
        let before = colored_boundary(&g);
        let sg = StrandedGraph::from_colored(&contract_colored(&g, "c0").unwrap()).unwrap();
        assert_eq!(sg.boundary(), before);
        assert_eq!(before.components, 1);
        assert_eq!(before.edges.len(), 3);
    }
}
