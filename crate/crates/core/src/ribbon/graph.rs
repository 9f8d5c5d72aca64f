use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("end {0} occurs more than once")]
    DuplicateEnd(String),
    #[error("edge {0} references an end that is not listed at any vertex")]
    DanglingEdge(String),
    #[error("edge {0} pairs an end with itself")]
    FixedPoint(String),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(String),
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("{0}")]
    Invalid(String),
}

/// Marks on half-ribbons of a piece: the arc glued at `u_e` or at `w_e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mark {
    M,
    N,
}

impl Mark {
    pub fn suffix(self) -> &'static str {
        match self {
            Mark::M => "!m",
            Mark::N => "!n",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct End {
    pub label: String,
    pub vertex: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    /// End indices in rotation order.
    pub rotation: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub ends: (usize, usize),
    pub twist: bool,
}

/// Editable description of a graph by labels; every operation goes through it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawGraph {
    pub name: String,
    pub vertices: Vec<(String, Vec<String>)>,
    /// (edge id, first end label, second end label, twist)
    pub edges: Vec<(String, String, String, bool)>,
    pub marks: BTreeMap<String, Mark>,
    pub header: BTreeMap<String, String>,
}

impl RawGraph {
    pub fn new(name: &str) -> Self {
        RawGraph {
            name: name.to_string(),
            ..Default::default()
        }
    }

    /// Adds a vertex whose rotation lists end labels. Labels of the form
    /// `<eid>.1` / `<eid>.2` are expected to be paired by [`RawGraph::edge`].
    pub fn vertex(mut self, id: &str, rotation: &[&str]) -> Self {
        self.vertices
            .push((id.to_string(), rotation.iter().map(|s| s.to_string()).collect()));
        self
    }

    pub fn edge(mut self, id: &str, twist: bool) -> Self {
        self.edges
            .push((id.to_string(), format!("{id}.1"), format!("{id}.2"), twist));
        self
    }

    pub fn mark(mut self, end: &str, m: Mark) -> Self {
        self.marks.insert(end.to_string(), m);
        self
    }

    pub fn header(mut self, key: &str, value: &str) -> Self {
        self.header.insert(key.to_string(), value.to_string());
        self
    }

    pub fn build(self) -> Result<HalfEdgedRibbonGraph, GraphError> {
        HalfEdgedRibbonGraph::from_raw(self)
    }
}

/// A signed rotation system whose unpaired ends are half-ribbons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfEdgedRibbonGraph {
    pub name: String,
    pub vertices: Vec<Vertex>,
    pub ends: Vec<End>,
    /// Sorted by natural order of edge ids; state bitmasks index this list.
    pub edges: Vec<Edge>,
    pub end_edge: Vec<Option<usize>>,
    pub marks: BTreeMap<usize, Mark>,
    pub header: BTreeMap<String, String>,
}

/// Orders `e2` before `e10` by comparing digit runs numerically.
pub fn natural_key(s: &str) -> Vec<(u8, u64, String)> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        let mut run = String::new();
        if c.is_ascii_digit() {
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                run.push(d);
                chars.next();
            }
            out.push((1, run.parse::<u64>().unwrap_or(u64::MAX), run));
        } else {
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    break;
                }
                run.push(d);
                chars.next();
            }
            out.push((0, 0, run));
        }
    }
    out
}

impl HalfEdgedRibbonGraph {
    pub fn from_raw(raw: RawGraph) -> Result<Self, GraphError> {
        let mut ends = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut vertices = Vec::new();
        let mut vids = BTreeSet::new();
        for (vi, (vid, rot)) in raw.vertices.iter().enumerate() {
            if !vids.insert(vid.clone()) {
                return Err(GraphError::DuplicateVertex(vid.clone()));
            }
            let mut rotation = Vec::with_capacity(rot.len());
            for label in rot {
                if index.contains_key(label) {
                    return Err(GraphError::DuplicateEnd(label.clone()));
                }
                index.insert(label.clone(), ends.len());
                rotation.push(ends.len());
                ends.push(End {
                    label: label.clone(),
                    vertex: vi,
                });
            }
            vertices.push(Vertex {
                id: vid.clone(),
                rotation,
            });
        }
        let mut raw_edges = raw.edges.clone();
        raw_edges.sort_by_key(|e| natural_key(&e.0));
        let mut end_edge = vec![None; ends.len()];
        let mut edges = Vec::with_capacity(raw_edges.len());
        let mut eids = BTreeSet::new();
        for (id, l1, l2, twist) in raw_edges {
            if !eids.insert(id.clone()) {
                return Err(GraphError::DuplicateEdge(id));
            }
            if l1 == l2 {
                return Err(GraphError::FixedPoint(id));
            }
            let x = *index.get(&l1).ok_or_else(|| GraphError::DanglingEdge(id.clone()))?;
            let y = *index.get(&l2).ok_or_else(|| GraphError::DanglingEdge(id.clone()))?;
            if end_edge[x].is_some() || end_edge[y].is_some() {
                return Err(GraphError::DuplicateEnd(id));
            }
            end_edge[x] = Some(edges.len());
            end_edge[y] = Some(edges.len());
            edges.push(Edge {
                id,
                ends: (x, y),
                twist,
            });
        }
        let mut marks = BTreeMap::new();
        for (label, m) in raw.marks {
            let i = *index
                .get(&label)
                .ok_or_else(|| GraphError::Invalid(format!("mark on unknown end {label}")))?;
            if end_edge[i].is_some() {
                return Err(GraphError::Invalid(format!(
                    "mark on {label}, which is an edge end rather than a half-ribbon"
                )));
            }
            marks.insert(i, m);
        }
        Ok(HalfEdgedRibbonGraph {
            name: raw.name,
            vertices,
            ends,
            edges,
            end_edge,
            marks,
            header: raw.header,
        })
    }

    pub fn to_raw(&self) -> RawGraph {
        RawGraph {
            name: self.name.clone(),
            vertices: self
                .vertices
                .iter()
                .map(|v| {
                    (
                        v.id.clone(),
                        v.rotation.iter().map(|&x| self.ends[x].label.clone()).collect(),
                    )
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| {
                    (
                        e.id.clone(),
                        self.ends[e.ends.0].label.clone(),
                        self.ends[e.ends.1].label.clone(),
                        e.twist,
                    )
                })
                .collect(),
            marks: self
                .marks
                .iter()
                .map(|(&i, &m)| (self.ends[i].label.clone(), m))
                .collect(),
            header: self.header.clone(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn half_ribbons(&self) -> Vec<usize> {
        (0..self.ends.len()).filter(|&i| self.end_edge[i].is_none()).collect()
    }

    pub fn num_half_ribbons(&self) -> usize {
        self.end_edge.iter().filter(|e| e.is_none()).count()
    }

    pub fn edge_index(&self, id: &str) -> Result<usize, GraphError> {
        self.edges
            .iter()
            .position(|e| e.id == id)
            .ok_or_else(|| GraphError::UnknownEdge(id.to_string()))
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize, GraphError> {
        self.vertices
            .iter()
            .position(|v| v.id == id)
            .ok_or_else(|| GraphError::UnknownVertex(id.to_string()))
    }

    pub fn end_index(&self, label: &str) -> Option<usize> {
        self.ends.iter().position(|e| e.label == label)
    }

    pub fn edge_vertices(&self, e: usize) -> (usize, usize) {
        let (x, y) = self.edges[e].ends;
        (self.ends[x].vertex, self.ends[y].vertex)
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (u, w) = self.edge_vertices(e);
        u == w
    }

    pub fn partner(&self, end: usize) -> Option<usize> {
        self.end_edge[end].map(|ei| {
            let (x, y) = self.edges[ei].ends;
            if x == end {
                y
            } else {
                x
            }
        })
    }

    /// Position of `end` within its vertex rotation.
    pub fn rotation_position(&self, end: usize) -> usize {
        let v = self.ends[end].vertex;
        self.vertices[v]
            .rotation
            .iter()
            .position(|&x| x == end)
            .expect("end listed at its vertex")
    }

    pub fn marked(&self, m: Mark) -> Vec<usize> {
        self.marks
            .iter()
            .filter(|(_, &mm)| mm == m)
            .map(|(&i, _)| i)
            .collect()
    }

    /// Renders the graph in the `.herg` text format.
    pub fn to_herg_text(&self) -> String {
        let mut out = String::new();
        let mut head = format!("graph {}", self.name);
        for (k, v) in &self.header {
            head.push_str(&format!(" {k}={v}"));
        }
        out.push_str(&head);
        out.push('\n');
        for v in &self.vertices {
            out.push_str(&format!("vertex {}:", v.id));
            for &x in &v.rotation {
                out.push(' ');
                out.push_str(&self.end_token(x));
            }
            out.push('\n');
        }
        for e in &self.edges {
            out.push_str(&format!("edge {}: twist={}\n", e.id, u8::from(e.twist)));
        }
        out
    }

    fn end_token(&self, x: usize) -> String {
        let label = &self.ends[x].label;
        match self.end_edge[x] {
            Some(ei) => {
                let e = &self.edges[ei];
                let side = if e.ends.0 == x { 1 } else { 2 };
                format!("{}.{}", e.id, side)
            }
            None => {
                let base = if label.starts_with('h') {
                    label.clone()
                } else {
                    format!("h{label}")
                };
                match self.marks.get(&x) {
                    Some(m) => format!("{base}{}", m.suffix()),
                    None => base,
                }
            }
        }
    }

    /// Relabels so that edge ends read `<eid>.1`/`<eid>.2` and half-ribbons start with `h`.
    pub fn normalized_labels(&self) -> HalfEdgedRibbonGraph {
        let mut g = self.clone();
        for x in 0..g.ends.len() {
            g.ends[x].label = self.end_token(x).trim_end_matches("!m").trim_end_matches("!n").to_string();
        }
        g
    }
}

impl fmt::Display for HalfEdgedRibbonGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_herg_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_order_of_ids() {
        let mut v = vec!["e10", "e2", "e1", "a"];
        v.sort_by_key(|s| natural_key(s));
        assert_eq!(v, vec!["a", "e1", "e2", "e10"]);
    }

    #[test]
    fn build_and_roundtrip() {
        let g = RawGraph::new("t")
            .vertex("u", &["e1.1", "h1"])
            .vertex("w", &["e1.2"])
            .edge("e1", true)
            .build()
            .unwrap();
        assert_eq!(g.num_edges(), 1);
        assert_eq!(g.half_ribbons().len(), 1);
        assert!(g.edges[0].twist);
        let again = HalfEdgedRibbonGraph::from_raw(g.to_raw()).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn duplicate_end_rejected() {
        let r = RawGraph::new("t").vertex("u", &["h1", "h1"]).build();
        assert_eq!(r, Err(GraphError::DuplicateEnd("h1".into())));
    }

    #[test]
    fn dangling_edge_rejected() {
        let r = RawGraph::new("t").vertex("u", &["e1.1"]).edge("e1", false).build();
        assert_eq!(r, Err(GraphError::DanglingEdge("e1".into())));
    }
}
