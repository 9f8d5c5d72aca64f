use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::ribbon::{natural_key, Mark};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoredError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {vertex} carries color {color} twice")]
    ColorClash { vertex: String, color: usize },
    #[error("vertex {vertex} has degree {degree}, above rank+1 = {max}")]
    DegreeOverflow { vertex: String, degree: usize, max: usize },
    #[error("color {color} outside 0..={rank}")]
    BadColor { color: usize, rank: usize },
    #[error("duplicate id {0}")]
    Duplicate(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("edge {0} joins vertices of the same class")]
    NotBipartite(String),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Polarity {
    Plus,
    Minus,
}

impl Polarity {
    pub fn opposite(self) -> Self {
        match self {
            Polarity::Plus => Polarity::Minus,
            Polarity::Minus => Polarity::Plus,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Polarity::Plus => "+",
            Polarity::Minus => "-",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredVertex {
    pub id: String,
    pub polarity: Option<Polarity>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredEdge {
    pub id: String,
    pub ends: (usize, usize),
    pub color: usize,
    /// Contracted at the compact level: always present in every state and
    /// not counted as an edge.
    pub contracted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfEdge {
    pub id: String,
    pub vertex: usize,
    pub color: usize,
    pub mark: Option<Mark>,
}

/// Rank-`n` properly edge-colored graph with colored half-edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredTensorGraph {
    pub name: String,
    pub rank: usize,
    pub bipartite: bool,
    pub vertices: Vec<ColoredVertex>,
    /// Sorted by natural id order.
    pub edges: Vec<ColoredEdge>,
    pub halves: Vec<HalfEdge>,
}

/// Unvalidated description; `build` checks and orders it.
#[derive(Clone, Debug, Default)]
pub struct ColoredBuilder {
    pub name: String,
    pub rank: usize,
    pub bipartite: bool,
    pub vertices: Vec<(String, Option<Polarity>)>,
    pub edges: Vec<(String, String, String, usize, bool)>,
    pub halves: Vec<(String, String, usize, Option<Mark>)>,
}

impl ColoredBuilder {
    pub fn new(name: &str, rank: usize) -> Self {
        ColoredBuilder {
            name: name.into(),
            rank,
            ..Default::default()
        }
    }

    pub fn bipartite(mut self) -> Self {
        self.bipartite = true;
        self
    }

    pub fn vertex(mut self, id: &str, polarity: Option<Polarity>) -> Self {
        self.vertices.push((id.into(), polarity));
        self
    }

    pub fn edge(mut self, id: &str, u: &str, w: &str, color: usize) -> Self {
        self.edges.push((id.into(), u.into(), w.into(), color, false));
        self
    }

    pub fn contracted_edge(mut self, id: &str, u: &str, w: &str, color: usize) -> Self {
        self.edges.push((id.into(), u.into(), w.into(), color, true));
        self
    }

    pub fn half(mut self, id: &str, v: &str, color: usize) -> Self {
        self.halves.push((id.into(), v.into(), color, None));
        self
    }

    pub fn marked_half(mut self, id: &str, v: &str, color: usize, mark: Mark) -> Self {
        self.halves.push((id.into(), v.into(), color, Some(mark)));
        self
    }

    pub fn build(self) -> Result<ColoredTensorGraph, ColoredError> {
        ColoredTensorGraph::from_builder(self)
    }
}

impl ColoredTensorGraph {
    pub fn from_builder(b: ColoredBuilder) -> Result<Self, ColoredError> {
        if b.rank < 2 {
            return Err(ColoredError::Invalid(format!("rank {} below 2", b.rank)));
        }
        let mut ids = BTreeSet::new();
        let mut vindex = BTreeMap::new();
        let mut vertices = Vec::new();
        for (id, pol) in &b.vertices {
            if !ids.insert(id.clone()) {
                return Err(ColoredError::Duplicate(id.clone()));
            }
            vindex.insert(id.clone(), vertices.len());
            vertices.push(ColoredVertex {
                id: id.clone(),
                polarity: *pol,
            });
        }
        let lookup = |id: &str| vindex.get(id).copied().ok_or_else(|| ColoredError::UnknownVertex(id.into()));
        let check_color = |c: usize| {
            if c > b.rank {
                Err(ColoredError::BadColor { color: c, rank: b.rank })
            } else {
                Ok(())
            }
        };
        let mut edges = Vec::new();
        for (id, u, w, c, contracted) in &b.edges {
            if !ids.insert(id.clone()) {
                return Err(ColoredError::Duplicate(id.clone()));
            }
            check_color(*c)?;
            edges.push(ColoredEdge {
                id: id.clone(),
                ends: (lookup(u)?, lookup(w)?),
                color: *c,
                contracted: *contracted,
            });
        }
        edges.sort_by_key(|e| natural_key(&e.id));
        let mut halves = Vec::new();
        for (id, v, c, mark) in &b.halves {
            if !ids.insert(id.clone()) {
                return Err(ColoredError::Duplicate(id.clone()));
            }
            check_color(*c)?;
            halves.push(HalfEdge {
                id: id.clone(),
                vertex: lookup(v)?,
                color: *c,
                mark: *mark,
            });
        }
        let g = ColoredTensorGraph {
            name: b.name,
            rank: b.rank,
            bipartite: b.bipartite,
            vertices,
            edges,
            halves,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn to_builder(&self) -> ColoredBuilder {
        ColoredBuilder {
            name: self.name.clone(),
            rank: self.rank,
            bipartite: self.bipartite,
            vertices: self.vertices.iter().map(|v| (v.id.clone(), v.polarity)).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| {
                    let (u, w) = e.ends;
                    (e.id.clone(), self.vertices[u].id.clone(), self.vertices[w].id.clone(), e.color, e.contracted)
                })
                .collect(),
            halves: self
                .halves
                .iter()
                .map(|h| (h.id.clone(), self.vertices[h.vertex].id.clone(), h.color, h.mark))
                .collect(),
        }
    }

    fn validate(&self) -> Result<(), ColoredError> {
        let mut seen: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.vertices.len()];
        let mut put = |v: usize, c: usize| {
            if !seen[v].insert(c) {
                return Err(ColoredError::ColorClash {
                    vertex: self.vertices[v].id.clone(),
                    color: c,
                });
            }
            Ok(())
        };
        for e in &self.edges {
            put(e.ends.0, e.color)?;
            put(e.ends.1, e.color)?;
        }
        for h in &self.halves {
            put(h.vertex, h.color)?;
        }
        for (v, cols) in seen.iter().enumerate() {
            if cols.len() > self.rank + 1 {
                return Err(ColoredError::DegreeOverflow {
                    vertex: self.vertices[v].id.clone(),
                    degree: cols.len(),
                    max: self.rank + 1,
                });
            }
        }
        if self.bipartite {
            for v in &self.vertices {
                if v.polarity.is_none() {
                    return Err(ColoredError::Invalid(format!("vertex {} lacks a class in a bipartite graph", v.id)));
                }
            }
            for e in &self.edges {
                if self.vertices[e.ends.0].polarity == self.vertices[e.ends.1].polarity {
                    return Err(ColoredError::NotBipartite(e.id.clone()));
                }
            }
        }
        Ok(())
    }

    /// Edges that can be cut in a state, in id order.
    pub fn free_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| !self.edges[i].contracted).collect()
    }

    pub fn num_free_edges(&self) -> usize {
        self.edges.iter().filter(|e| !e.contracted).count()
    }

    pub fn num_contracted(&self) -> usize {
        self.edges.len() - self.num_free_edges()
    }

    pub fn degree(&self, v: usize) -> usize {
        let e = self.edges.iter().filter(|e| e.ends.0 == v || e.ends.1 == v).count();
        let h = self.halves.iter().filter(|h| h.vertex == v).count();
        e + h
    }

    /// Every vertex carries all `rank + 1` colors.
    pub fn is_tensor(&self) -> bool {
        (0..self.vertices.len()).all(|v| self.degree(v) == self.rank + 1)
    }

    pub fn edge_index(&self, id: &str) -> Result<usize, ColoredError> {
        self.edges
            .iter()
            .position(|e| e.id == id)
            .ok_or_else(|| ColoredError::UnknownEdge(id.into()))
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize, ColoredError> {
        self.vertices
            .iter()
            .position(|v| v.id == id)
            .ok_or_else(|| ColoredError::UnknownVertex(id.into()))
    }

    pub fn marked(&self, m: Mark) -> Vec<usize> {
        (0..self.halves.len()).filter(|&i| self.halves[i].mark == Some(m)).collect()
    }

    pub fn to_ctg_text(&self) -> String {
        let mut s = format!("cgraph {} rank={}", self.name, self.rank);
        if self.bipartite {
            s.push_str(" bipartite");
        }
        s.push('\n');
        for v in &self.vertices {
            match v.polarity {
                Some(p) => writeln!(s, "vertex {} {}", v.id, p.symbol()),
                None => writeln!(s, "vertex {}", v.id),
            }
            .expect("write to string");
        }
        for e in &self.edges {
            let (u, w) = e.ends;
            let tail = if e.contracted { " contracted" } else { "" };
            writeln!(
                s,
                "edge {}: {} {} color={}{tail}",
                e.id, self.vertices[u].id, self.vertices[w].id, e.color
            )
            .expect("write to string");
        }
        for h in &self.halves {
            let tail = match h.mark {
                Some(Mark::M) => " mark=m",
                Some(Mark::N) => " mark=n",
                None => "",
            };
            writeln!(s, "half {}: {} color={}{tail}", h.id, self.vertices[h.vertex].id, h.color).expect("write to string");
        }
        s
    }
}

/// The rank-`n` melon: two vertices joined by one edge of every color.
pub fn melon(rank: usize) -> ColoredTensorGraph {
    let mut b = ColoredBuilder::new(&format!("melon{rank}"), rank)
        .bipartite()
        .vertex("u", Some(Polarity::Plus))
        .vertex("w", Some(Polarity::Minus));
    for c in 0..=rank {
        b = b.edge(&format!("c{c}"), "u", "w", c);
    }
    b.build().expect("melon is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn melon_is_tensor() {
        let m = melon(3);
        assert_eq!(m.vertices.len(), 2);
        assert_eq!(m.edges.len(), 4);
        assert!(m.is_tensor());
    }

    #[test]
    fn color_clash_rejected() {
        let r = ColoredBuilder::new("g", 3)
            .vertex("u", None)
            .vertex("w", None)
            .edge("a", "u", "w", 0)
            .half("h", "u", 0)
            .build();
        assert!(matches!(r, Err(ColoredError::ColorClash { .. })));
    }

    #[test]
    fn partial_vertex_is_valid() {
        let g = ColoredBuilder::new("g", 3)
            .vertex("u", None)
            .half("h0", "u", 0)
            .half("h1", "u", 1)
            .build()
            .unwrap();
        assert!(!g.is_tensor());
    }
}
