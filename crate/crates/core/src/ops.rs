//! Structural operations on half-edged ribbon graphs and the assembly of a
//! graph from a template and per-edge pieces.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::ribbon::{GraphError, HalfEdgedRibbonGraph, Mark, RawGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OpError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("edge {0} is a loop; a non-loop edge is required")]
    LoopEdge(String),
    #[error("piece error: {0}")]
    Piece(String),
    #[error("decomposition error: {0}")]
    Decomposition(String),
}

type Raw = RawGraph;

fn end_pos(raw: &Raw, label: &str) -> (usize, usize) {
    for (vi, (_, rot)) in raw.vertices.iter().enumerate() {
        if let Some(p) = rot.iter().position(|l| l == label) {
            return (vi, p);
        }
    }
    panic!("end {label} not present");
}

fn raw_edge_index(raw: &Raw, id: &str) -> Result<usize, OpError> {
    raw.edges
        .iter()
        .position(|e| e.0 == id)
        .ok_or_else(|| GraphError::UnknownEdge(id.to_string()).into())
}

/// Removes the edge and both of its ends; vertices stay.
pub fn delete_edge(g: &HalfEdgedRibbonGraph, id: &str) -> Result<HalfEdgedRibbonGraph, OpError> {
    let mut raw = g.to_raw();
    let i = raw_edge_index(&raw, id)?;
    let (_, l1, l2, _) = raw.edges.remove(i);
    for (_, rot) in raw.vertices.iter_mut() {
        rot.retain(|l| *l != l1 && *l != l2);
    }
    Ok(raw.build()?)
}

/// Replaces the edge by two half-ribbons in the same rotation positions.
pub fn cut_edge(g: &HalfEdgedRibbonGraph, id: &str) -> Result<HalfEdgedRibbonGraph, OpError> {
    let mut raw = g.to_raw();
    let i = raw_edge_index(&raw, id)?;
    let (_, l1, l2, _) = raw.edges.remove(i);
    for (_, rot) in raw.vertices.iter_mut() {
        for l in rot.iter_mut() {
            if *l == l1 || *l == l2 {
                *l = format!("h{l}");
            }
        }
    }
    Ok(raw.build()?)
}

/// Reverses the rotation at a vertex and toggles the twist of every edge with
/// exactly one end there.
pub fn flip_vertex(g: &HalfEdgedRibbonGraph, vid: &str) -> Result<HalfEdgedRibbonGraph, OpError> {
    let v = g.vertex_index(vid)?;
    let mut raw = g.to_raw();
    raw.vertices[v].1.reverse();
    let at_v: BTreeSet<String> = raw.vertices[v].1.iter().cloned().collect();
    for e in raw.edges.iter_mut() {
        if at_v.contains(&e.1) != at_v.contains(&e.2) {
            e.3 = !e.3;
        }
    }
    Ok(raw.build()?)
}

fn fresh_vertex_id(raw: &Raw, base: &str) -> String {
    let taken: BTreeSet<&str> = raw.vertices.iter().map(|(v, _)| v.as_str()).collect();
    let mut k = 0;
    loop {
        let cand = if k == 0 {
            format!("{base}'")
        } else {
            format!("{base}'{k}")
        };
        if !taken.contains(cand.as_str()) {
            return cand;
        }
        k += 1;
    }
}

pub fn contract_edge(g: &HalfEdgedRibbonGraph, id: &str) -> Result<HalfEdgedRibbonGraph, OpError> {
    let ei = g.edge_index(id)?;
    let (u, w) = g.edge_vertices(ei);
    if u != w {
        let g = if g.edges[ei].twist {
            flip_vertex(g, &g.vertices[w].id)?
        } else {
            g.clone()
        };
        let mut raw = g.to_raw();
        let i = raw_edge_index(&raw, id)?;
        let (_, l1, l2, _) = raw.edges.remove(i);
        let (vu, pu) = end_pos(&raw, &l1);
        let (vw, pw) = end_pos(&raw, &l2);
        let ru = &raw.vertices[vu].1;
        let rw = &raw.vertices[vw].1;
        let mut merged: Vec<String> = Vec::new();
        merged.extend(ru[pu + 1..].iter().cloned());
        merged.extend(ru[..pu].iter().cloned());
        merged.extend(rw[pw + 1..].iter().cloned());
        merged.extend(rw[..pw].iter().cloned());
        raw.vertices[vu].1 = merged;
        raw.vertices.remove(vw);
        return Ok(raw.build()?);
    }
    // Loop at a single vertex: rotation reads [x, P, y, Q].
    let mut raw = g.to_raw();
    let i = raw_edge_index(&raw, id)?;
    let (_, l1, l2, twist) = raw.edges.remove(i);
    let (v, p1) = end_pos(&raw, &l1);
    let rot = raw.vertices[v].1.clone();
    let n = rot.len();
    let p2 = rot.iter().position(|l| *l == l2).expect("loop end");
    let between = |a: usize, b: usize| -> Vec<String> {
        let mut out = Vec::new();
        let mut j = (a + 1) % n;
        while j != b {
            out.push(rot[j].clone());
            j = (j + 1) % n;
        }
        out
    };
    let p = between(p1, p2);
    let q = between(p2, p1);
    if !twist {
        let new_id = fresh_vertex_id(&raw, &raw.vertices[v].0);
        raw.vertices[v].1 = p;
        raw.vertices.push((new_id, q));
    } else {
        let flipped: BTreeSet<String> = p.iter().cloned().collect();
        let mut merged = q;
        merged.extend(p.into_iter().rev());
        raw.vertices[v].1 = merged;
        for e in raw.edges.iter_mut() {
            if flipped.contains(&e.1) != flipped.contains(&e.2) {
                e.3 = !e.3;
            }
        }
    }
    Ok(raw.build()?)
}

/// Disjoint union; labels of `h` get `prefix` prepended.
pub fn disjoint_union(
    g: &HalfEdgedRibbonGraph,
    h: &HalfEdgedRibbonGraph,
    prefix: &str,
) -> Result<HalfEdgedRibbonGraph, OpError> {
    let mut raw = g.to_raw();
    let other = prefixed_raw(h, prefix);
    raw.vertices.extend(other.vertices);
    raw.edges.extend(other.edges);
    raw.marks.extend(other.marks);
    Ok(raw.build()?)
}

fn prefixed_raw(h: &HalfEdgedRibbonGraph, prefix: &str) -> Raw {
    let mut raw = h.to_raw();
    let pl = |l: &str| format!("{prefix}{l}");
    for (vid, rot) in raw.vertices.iter_mut() {
        *vid = pl(vid);
        for l in rot.iter_mut() {
            *l = pl(l);
        }
    }
    for e in raw.edges.iter_mut() {
        e.0 = pl(&e.0);
        e.1 = pl(&e.1);
        e.2 = pl(&e.2);
    }
    raw.marks = raw.marks.into_iter().map(|(l, m)| (pl(&l), m)).collect();
    raw
}

/// A graph with one `!m` half-ribbon on `u_e` and one `!n` half-ribbon on
/// `w_e`, to be glued in place of a template edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub graph: HalfEdgedRibbonGraph,
    pub u: usize,
    pub w: usize,
    pub m: usize,
    pub n: usize,
}

impl Piece {
    /// Reads marks and the `um`/`wm` header keys.
    pub fn from_graph(graph: HalfEdgedRibbonGraph) -> Result<Piece, OpError> {
        let ms = graph.marked(Mark::M);
        let ns = graph.marked(Mark::N);
        if ms.len() != 1 || ns.len() != 1 {
            return Err(OpError::Piece(format!(
                "expected exactly one !m and one !n half-ribbon, found {} and {}",
                ms.len(),
                ns.len()
            )));
        }
        let (m, n) = (ms[0], ns[0]);
        let u = graph.ends[m].vertex;
        let w = graph.ends[n].vertex;
        if u == w {
            return Err(OpError::Piece("marks must sit on two distinct vertices".into()));
        }
        for (key, v) in [("um", u), ("wm", w)] {
            if let Some(id) = graph.header.get(key) {
                if *id != graph.vertices[v].id {
                    return Err(OpError::Piece(format!(
                        "header {key}={id} disagrees with the marked vertex {}",
                        graph.vertices[v].id
                    )));
                }
            }
        }
        Ok(Piece { graph, u, w, m, n })
    }

    /// Cut of the distinguished non-loop edge of `a`: the piece `A ∨ e`.
    pub fn from_distinguished(a: &HalfEdgedRibbonGraph, id: &str) -> Result<Piece, OpError> {
        let ei = a.edge_index(id)?;
        if a.is_loop(ei) {
            return Err(OpError::LoopEdge(id.to_string()));
        }
        let (uv, wv) = a.edge_vertices(ei);
        let mut raw = a.to_raw();
        let i = raw_edge_index(&raw, id)?;
        let (_, l1, l2, twist) = raw.edges.remove(i);
        let (mlabel, nlabel) = (format!("h{l1}"), format!("h{l2}"));
        for (_, rot) in raw.vertices.iter_mut() {
            for l in rot.iter_mut() {
                if *l == l1 {
                    *l = mlabel.clone();
                } else if *l == l2 {
                    *l = nlabel.clone();
                }
            }
        }
        raw.marks.insert(mlabel, Mark::M);
        raw.marks.insert(nlabel, Mark::N);
        raw.header.insert("um".into(), a.vertices[uv].id.clone());
        raw.header.insert("wm".into(), a.vertices[wv].id.clone());
        let mut p = Piece::from_graph(raw.build()?)?;
        if twist {
            p = p.flipped_at_w()?;
        }
        Ok(p)
    }

    /// The piece that reproduces the template edge: one retained edge.
    pub fn identity() -> Piece {
        let g = RawGraph::new("identity")
            .vertex("u", &["hm", "p.1"])
            .vertex("w", &["hn", "p.2"])
            .edge("p", false)
            .mark("hm", Mark::M)
            .mark("hn", Mark::N)
            .header("um", "u")
            .header("wm", "w")
            .build()
            .expect("identity piece is valid");
        Piece::from_graph(g).expect("identity piece is valid")
    }

    pub fn flipped_at_w(&self) -> Result<Piece, OpError> {
        let g = flip_vertex(&self.graph, &self.graph.vertices[self.w].id)?;
        Piece::from_graph(g)
    }

    /// `A_e = H_e` with the marked half-ribbons rejoined by an edge `e'`.
    pub fn closure(&self) -> Result<HalfEdgedRibbonGraph, OpError> {
        let mut raw = self.graph.to_raw();
        let ml = self.graph.ends[self.m].label.clone();
        let nl = self.graph.ends[self.n].label.clone();
        let id = fresh_edge_id(&raw, "e'");
        for (_, rot) in raw.vertices.iter_mut() {
            for l in rot.iter_mut() {
                if *l == ml {
                    *l = format!("{id}.1");
                } else if *l == nl {
                    *l = format!("{id}.2");
                }
            }
        }
        raw.marks.clear();
        raw.header.clear();
        raw.edges.push((id.clone(), format!("{id}.1"), format!("{id}.2"), false));
        Ok(raw.build()?)
    }

    /// `A_e / e'`: the closure with the rejoining edge contracted.
    pub fn closure_contracted(&self) -> Result<HalfEdgedRibbonGraph, OpError> {
        let a = self.closure()?;
        let id = a
            .edges
            .iter()
            .find(|e| e.id.starts_with("e'"))
            .map(|e| e.id.clone())
            .expect("closure edge");
        contract_edge(&a, &id)
    }

    /// The graph `A_e − e'` used by the vertex-gluing form of the construction.
    pub fn deleted_form(&self) -> Result<HalfEdgedRibbonGraph, OpError> {
        let mut raw = self.graph.to_raw();
        let ml = self.graph.ends[self.m].label.clone();
        let nl = self.graph.ends[self.n].label.clone();
        for (_, rot) in raw.vertices.iter_mut() {
            rot.retain(|l| *l != ml && *l != nl);
        }
        raw.marks.clear();
        Ok(raw.build()?)
    }
}

fn fresh_edge_id(raw: &Raw, base: &str) -> String {
    let taken: BTreeSet<&str> = raw.edges.iter().map(|e| e.0.as_str()).collect();
    let mut k = 0;
    loop {
        let cand = if k == 0 { base.to_string() } else { format!("{base}{k}") };
        if !taken.contains(cand.as_str()) {
            return cand;
        }
        k += 1;
    }
}

/// Replaces template edge `id` by `piece`, its `m` arc glued at the vertex of
/// the edge's first end and `n` at the second. Piece labels get `<id>:`.
/// The `w_e` side is flipped first when the edge is twisted xor `flip`.
pub fn glue_piece(
    g: &HalfEdgedRibbonGraph,
    id: &str,
    piece: &Piece,
    flip: bool,
) -> Result<HalfEdgedRibbonGraph, OpError> {
    let ei = g.edge_index(id)?;
    if g.is_loop(ei) {
        return Err(OpError::LoopEdge(id.to_string()));
    }
    let effective = if g.edges[ei].twist ^ flip {
        piece.flipped_at_w()?
    } else {
        piece.clone()
    };
    let prefix = format!("{id}:");
    let ph = &effective.graph;
    let praw = prefixed_raw(ph, &prefix);
    let mut raw = g.to_raw();
    let i = raw_edge_index(&raw, id)?;
    let (_, l1, l2, _) = raw.edges.remove(i);
    let after = |v: usize, skip: usize| -> Vec<String> {
        let rot = &praw.vertices[v].1;
        let pos = ph.rotation_position(skip);
        (1..rot.len()).map(|j| rot[(pos + j) % rot.len()].clone()).collect()
    };
    let at_u = after(effective.u, effective.m);
    let at_w = after(effective.w, effective.n);
    for (_, rot) in raw.vertices.iter_mut() {
        if let Some(p) = rot.iter().position(|l| *l == l1) {
            rot.splice(p..=p, at_u.iter().cloned());
        }
        if let Some(p) = rot.iter().position(|l| *l == l2) {
            rot.splice(p..=p, at_w.iter().cloned());
        }
    }
    for (vi, v) in praw.vertices.iter().enumerate() {
        if vi != effective.u && vi != effective.w {
            raw.vertices.push(v.clone());
        }
    }
    raw.edges.extend(praw.edges);
    Ok(raw.build()?)
}

/// 2-sum of `g` and `a` along non-loop edges `e` and `e'`.
pub fn two_sum(
    g: &HalfEdgedRibbonGraph,
    e: &str,
    a: &HalfEdgedRibbonGraph,
    e_prime: &str,
) -> Result<HalfEdgedRibbonGraph, OpError> {
    let ei = g.edge_index(e)?;
    if g.is_loop(ei) {
        return Err(OpError::LoopEdge(e.to_string()));
    }
    let piece = Piece::from_distinguished(a, e_prime)?;
    glue_piece(g, e, &piece, false)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceSlot {
    pub piece: Piece,
    pub flip: bool,
}

/// A template together with one piece per template edge (indexed like
/// `template.edges`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub template: HalfEdgedRibbonGraph,
    pub slots: Vec<PieceSlot>,
}

impl Decomposition {
    pub fn new(template: HalfEdgedRibbonGraph, slots: Vec<PieceSlot>) -> Result<Self, OpError> {
        if slots.len() != template.num_edges() {
            return Err(OpError::Decomposition(format!(
                "template has {} edges but {} pieces were given",
                template.num_edges(),
                slots.len()
            )));
        }
        for (i, e) in template.edges.iter().enumerate() {
            if template.is_loop(i) {
                return Err(OpError::LoopEdge(e.id.clone()));
            }
        }
        Ok(Decomposition { template, slots })
    }

    pub fn uniform(template: HalfEdgedRibbonGraph, piece: &Piece) -> Result<Self, OpError> {
        let slots = (0..template.num_edges())
            .map(|_| PieceSlot {
                piece: piece.clone(),
                flip: false,
            })
            .collect();
        Decomposition::new(template, slots)
    }

    /// The piece as actually glued: flipped at `w_e` when the manifest asks.
    pub fn effective_piece(&self, i: usize) -> Result<Piece, OpError> {
        let s = &self.slots[i];
        if s.flip {
            s.piece.flipped_at_w()
        } else {
            Ok(s.piece.clone())
        }
    }
}

pub fn assemble_hat(d: &Decomposition) -> Result<HalfEdgedRibbonGraph, OpError> {
    let mut g = d.template.clone();
    for (i, e) in d.template.edges.iter().enumerate() {
        let slot = &d.slots[i];
        g = glue_piece(&g, &e.id, &slot.piece, slot.flip)?;
    }
    g.name = format!("{}^", d.template.name);
    Ok(g)
}

pub fn tensor_product(g: &HalfEdgedRibbonGraph, piece: &Piece) -> Result<HalfEdgedRibbonGraph, OpError> {
    assemble_hat(&Decomposition::uniform(g.clone(), piece)?)
}

/// Manifest: `template <file>` then `piece <edge-id> <file> [flip]` lines.
pub fn parse_manifest<F>(text: &str, mut load: F) -> Result<Decomposition, OpError>
where
    F: FnMut(&str) -> Result<HalfEdgedRibbonGraph, OpError>,
{
    let mut template = None;
    let mut pieces: BTreeMap<String, PieceSlot> = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let bad = |msg: &str| {
            OpError::Graph(GraphError::Parse {
                line: i + 1,
                msg: msg.to_string(),
            })
        };
        match toks.as_slice() {
            ["template", file] => template = Some(load(file)?),
            ["piece", eid, file] | ["piece", eid, file, "flip"] => {
                let flip = toks.len() == 4;
                let piece = Piece::from_graph(load(file)?)?;
                if pieces
                    .insert(eid.to_string(), PieceSlot { piece, flip })
                    .is_some()
                {
                    return Err(bad(&format!("second piece for edge {eid}")));
                }
            }
            _ => return Err(bad(&format!("unrecognized manifest line '{line}'"))),
        }
    }
    let template = template.ok_or_else(|| OpError::Decomposition("missing template line".into()))?;
    let mut slots = Vec::new();
    for e in &template.edges {
        slots.push(
            pieces
                .remove(&e.id)
                .ok_or_else(|| OpError::Decomposition(format!("no piece for edge {}", e.id)))?,
        );
    }
    if let Some(extra) = pieces.keys().next() {
        return Err(OpError::Decomposition(format!("piece given for unknown edge {extra}")));
    }
    Decomposition::new(template, slots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ribbon::{boundary_graph, parse_graph, stats};

    fn g(src: &str) -> HalfEdgedRibbonGraph {
        parse_graph(src).unwrap()
    }

    const DIGON: &str = "graph d\nvertex u: a.1 b.1\nvertex w: b.2 a.2\nedge a: twist=0\nedge b: twist=0\n";

    #[test]
    fn delete_loop_leaves_bare_vertex() {
        let h = delete_edge(&g("graph g\nvertex v: e.1 e.2\nedge e: twist=0\n"), "e").unwrap();
        assert_eq!(h.num_edges(), 0);
        assert!(h.vertices[0].rotation.is_empty());
    }

    #[test]
    fn delete_bridge_splits() {
        let h = delete_edge(&g("graph g\nvertex u: e.1\nvertex w: e.2\nedge e: twist=0\n"), "e").unwrap();
        assert_eq!(stats(&h).k, 2);
    }

    #[test]
    fn contract_bridge() {
        let h = contract_edge(&g("graph g\nvertex u: e.1\nvertex w: e.2\nedge e: twist=1\n"), "e").unwrap();
        assert_eq!(h.num_vertices(), 1);
        assert!(h.vertices[0].rotation.is_empty());
    }

    #[test]
    fn contract_trivial_loops() {
        let src = "graph g\nvertex v: e.1 e.2 h1\nedge e: twist=0\n";
        let h = contract_edge(&g(src), "e").unwrap();
        assert_eq!(h.num_vertices(), 2);
        assert_eq!(stats(&h).k, 2);
        let tw = contract_edge(&g("graph g\nvertex v: e.1 e.2 h1\nedge e: twist=1\n"), "e").unwrap();
        assert_eq!(tw, delete_edge(&g("graph g\nvertex v: e.1 e.2 h1\nedge e: twist=1\n"), "e").unwrap());
    }

    #[test]
    fn contraction_keeps_boundary_of_non_loops() {
        let src = "graph g\nvertex u: a.1 h1 b.1 c.1\nvertex w: b.2 a.2 h2\nvertex x: c.2\nedge a: twist=0\nedge b: twist=1\nedge c: twist=0\n";
        let base = g(src);
        for id in ["a", "b", "c"] {
            let h = contract_edge(&base, id).unwrap();
            let (s0, s1) = (stats(&base), stats(&h));
            assert_eq!((s1.v, s1.e, s1.k), (s0.v - 1, s0.e - 1, s0.k));
            assert_eq!((s1.f_int, s1.c_bd, s1.t), (s0.f_int, s0.c_bd, s0.t));
            assert_eq!(boundary_graph(&h).components, boundary_graph(&base).components);
        }
    }

    #[test]
    fn cut_loop_gives_two_half_ribbons_on_vertex() {
        let h = cut_edge(&g("graph g\nvertex v: e.1 e.2\nedge e: twist=0\n"), "e").unwrap();
        assert_eq!(h.num_half_ribbons(), 2);
        assert_eq!(h.vertices[0].rotation.len(), 2);
    }

    #[test]
    fn two_sum_of_digons() {
        let s = two_sum(&g(DIGON), "a", &g(DIGON), "a").unwrap();
        let st = stats(&s);
        assert_eq!((st.v, st.e), (2, 2));
    }

    #[test]
    fn identity_piece_reproduces_template() {
        for tw in ["0", "1"] {
            let src = format!(
                "graph t\nvertex u: a.1 h1 b.1\nvertex w: b.2 a.2\nvertex x: c.1\nvertex y: c.2 h2\nedge a: twist={tw}\nedge b: twist=0\nedge c: twist=1\n"
            );
            let t = g(&src);
            let hat = tensor_product(&t, &Piece::identity()).unwrap();
            assert_eq!(hat.num_edges(), t.num_edges());
            let (a, b) = (stats(&t), stats(&hat));
            assert_eq!(a, b);
            assert_eq!(
                crate::ribbon::states::enumerate_states(&t).unwrap().iter().map(|s| s.stats).collect::<Vec<_>>(),
                crate::ribbon::states::enumerate_states(&hat).unwrap().iter().map(|s| s.stats).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn piece_from_distinguished_edge_rejects_loops() {
        assert!(matches!(
            Piece::from_distinguished(&g("graph g\nvertex v: e.1 e.2\nedge e: twist=0\n"), "e"),
            Err(OpError::LoopEdge(_))
        ));
    }

    #[test]
    fn manifest_parse() {
        let d = parse_manifest("template t\npiece a p\npiece b p flip\n", |f| {
            Ok(match f {
                "t" => g(DIGON),
                _ => Piece::identity().graph,
            })
        })
        .unwrap();
        assert!(d.slots[1].flip);
        assert_eq!(assemble_hat(&d).unwrap().num_edges(), 2);
    }
}
