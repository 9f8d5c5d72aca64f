//! Decompositions of colored graphs: pieces glued along two marked
//! half-edges of a template edge's color, their state sums, and exact checks
//! of the expansion and the per-state counting identities.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::census::{StateContext, StrandedStats};
use super::graph::{ColoredBuilder, ColoredError, ColoredTensorGraph, Polarity};
use crate::decomp::expansion::{chunks, CountingReport, Violation};
use crate::poly::{IntTermAccumulator, MultiPoly};
use crate::ribbon::states::{check_limit, LimitExceeded};
use crate::ribbon::stats::UnionFind;
use crate::ribbon::Mark;

#[derive(Debug, thiserror::Error)]
pub enum StrandedError {
    #[error(transparent)]
    Graph(#[from] ColoredError),
    #[error(transparent)]
    Limit(#[from] LimitExceeded),
}

/// A colored graph with one half-edge marked `m` and one marked `n`, both of
/// the color of the template edge it replaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredPiece {
    pub graph: ColoredTensorGraph,
    pub color: usize,
    m: usize,
    n: usize,
}

impl ColoredPiece {
    pub fn from_graph(graph: ColoredTensorGraph) -> Result<Self, ColoredError> {
        let (ms, ns) = (graph.marked(Mark::M), graph.marked(Mark::N));
        let ([m], [n]) = (ms.as_slice(), ns.as_slice()) else {
            return Err(ColoredError::Invalid(format!(
                "piece {} needs exactly one m and one n half-edge",
                graph.name
            )));
        };
        let color = graph.halves[*m].color;
        if graph.halves[*n].color != color {
            return Err(ColoredError::Invalid("marked half-edges differ in color".into()));
        }
        Ok(ColoredPiece {
            color,
            m: *m,
            n: *n,
            graph,
        })
    }

    /// Cuts edge `id` of `a`: the end at its second vertex becomes `m`, the
    /// one at its first vertex `n`.
    pub fn from_distinguished(a: &ColoredTensorGraph, id: &str) -> Result<Self, ColoredError> {
        let i = a.edge_index(id)?;
        let e = &a.edges[i];
        if e.contracted {
            return Err(ColoredError::Invalid(format!("edge {id} is contracted")));
        }
        let mut b = a.to_builder();
        b.edges.retain(|x| x.0 != id);
        b.halves.push((format!("{id}.m"), a.vertices[e.ends.1].id.clone(), e.color, Some(Mark::M)));
        b.halves.push((format!("{id}.n"), a.vertices[e.ends.0].id.clone(), e.color, Some(Mark::N)));
        ColoredPiece::from_graph(b.build()?)
    }

    /// The rank-`n` melon cut at `color`: gluing it inserts a dipole.
    pub fn dipole(rank: usize, color: usize) -> Self {
        let m = super::graph::melon(rank);
        ColoredPiece::from_distinguished(&m, &format!("c{color}")).expect("melon edge")
    }

    pub fn m_vertex(&self) -> usize {
        self.graph.halves[self.m].vertex
    }

    pub fn n_vertex(&self) -> usize {
        self.graph.halves[self.n].vertex
    }

    pub fn m_id(&self) -> &str {
        &self.graph.halves[self.m].id
    }

    pub fn n_id(&self) -> &str {
        &self.graph.halves[self.n].id
    }

    /// Same piece with colors `self.color` and `c` swapped.
    pub fn recolored(&self, c: usize) -> Self {
        if c == self.color {
            return self.clone();
        }
        let swap = |x: usize| {
            if x == c {
                self.color
            } else if x == self.color {
                c
            } else {
                x
            }
        };
        let mut b = self.graph.to_builder();
        for e in &mut b.edges {
            e.3 = swap(e.3);
        }
        for h in &mut b.halves {
            h.2 = swap(h.2);
        }
        ColoredPiece::from_graph(b.build().expect("recoloring keeps validity")).expect("marks kept")
    }

    fn closure_with(&self, contracted: bool) -> ColoredTensorGraph {
        let mut b = self.graph.to_builder();
        let (m, n) = (self.m_id().to_string(), self.n_id().to_string());
        b.halves.retain(|h| h.0 != m && h.0 != n);
        let (u, w) = (&self.graph.vertices[self.m_vertex()].id, &self.graph.vertices[self.n_vertex()].id);
        b.edges.push((CLOSING_EDGE.into(), u.clone(), w.clone(), self.color, contracted));
        b.bipartite = false;
        b.build().expect("closing edge uses the freed color")
    }

    /// The marked half-edges joined into one edge.
    pub fn closure(&self) -> ColoredTensorGraph {
        self.closure_with(false)
    }

    pub fn closure_contracted(&self) -> ColoredTensorGraph {
        self.closure_with(true)
    }
}

/// Id of the edge added by `ColoredPiece::closure`.
pub const CLOSING_EDGE: &str = "closing";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredDecomposition {
    pub template: ColoredTensorGraph,
    /// One per free template edge, in edge order.
    pub pieces: Vec<ColoredPiece>,
}

impl ColoredDecomposition {
    pub fn new(template: ColoredTensorGraph, pieces: Vec<ColoredPiece>) -> Result<Self, ColoredError> {
        let free = template.free_edges();
        if free.len() != pieces.len() {
            return Err(ColoredError::Invalid(format!(
                "{} free template edges but {} pieces",
                free.len(),
                pieces.len()
            )));
        }
        for (&i, p) in free.iter().zip(&pieces) {
            if template.edges[i].color != p.color {
                return Err(ColoredError::Invalid(format!(
                    "edge {} has color {} but its piece is glued along color {}",
                    template.edges[i].id, template.edges[i].color, p.color
                )));
            }
            if p.graph.rank != template.rank {
                return Err(ColoredError::Invalid("piece rank differs from template rank".into()));
            }
        }
        Ok(ColoredDecomposition { template, pieces })
    }

    /// The same piece at every free edge, recolored to the edge's color.
    pub fn uniform(template: ColoredTensorGraph, piece: &ColoredPiece) -> Result<Self, ColoredError> {
        let pieces = template
            .free_edges()
            .iter()
            .map(|&i| piece.recolored(template.edges[i].color))
            .collect();
        ColoredDecomposition::new(template, pieces)
    }
}

/// Replaces every free template edge by its piece, joined through two
/// contracted edges of the edge's color.
pub fn assemble_colored(d: &ColoredDecomposition) -> Result<ColoredTensorGraph, ColoredError> {
    let t = &d.template;
    let free = t.free_edges();
    let mut b = ColoredBuilder::new(&format!("{}_hat", t.name), t.rank);
    b.vertices = t.vertices.iter().map(|v| (v.id.clone(), v.polarity)).collect();
    b.halves = t
        .halves
        .iter()
        .map(|h| (h.id.clone(), t.vertices[h.vertex].id.clone(), h.color, h.mark))
        .collect();
    for e in t.edges.iter().filter(|e| e.contracted) {
        b.edges.push((e.id.clone(), t.vertices[e.ends.0].id.clone(), t.vertices[e.ends.1].id.clone(), e.color, true));
    }
    let mut bipartite = t.bipartite;
    for (&i, p) in free.iter().zip(&d.pieces) {
        let e = &t.edges[i];
        let pre = |s: &str| format!("{}:{s}", e.id);
        let pg = &p.graph;
        bipartite &= pg.bipartite;
        b.vertices.extend(pg.vertices.iter().map(|v| (pre(&v.id), v.polarity)));
        for pe in &pg.edges {
            b.edges.push((
                pre(&pe.id),
                pre(&pg.vertices[pe.ends.0].id),
                pre(&pg.vertices[pe.ends.1].id),
                pe.color,
                pe.contracted,
            ));
        }
        for h in pg.halves.iter().filter(|h| h.mark.is_none()) {
            b.halves.push((pre(&h.id), pre(&pg.vertices[h.vertex].id), h.color, None));
        }
        let join = [(e.ends.0, p.m_vertex(), "m"), (e.ends.1, p.n_vertex(), "n")];
        for (tv, pv, tag) in join {
            let (tp, pp) = (t.vertices[tv].polarity, pg.vertices[pv].polarity);
            bipartite &= matches!((tp, pp), (Some(x), Some(y)) if x == y.opposite());
            b.edges
                .push((pre(tag), t.vertices[tv].id.clone(), pre(&pg.vertices[pv].id), e.color, true));
        }
    }
    b.bipartite = bipartite;
    b.build()
}

/// `g ⊕₂ a` along `e` in `g` and `e2` in `a`, both of one color.
pub fn colored_two_sum(
    g: &ColoredTensorGraph,
    e: &str,
    a: &ColoredTensorGraph,
    e2: &str,
) -> Result<ColoredTensorGraph, ColoredError> {
    let i = g.edge_index(e)?;
    let j = a.edge_index(e2)?;
    if g.edges[i].color != a.edges[j].color {
        return Err(ColoredError::Invalid(format!(
            "colors differ: {} has {}, {} has {}",
            e, g.edges[i].color, e2, a.edges[j].color
        )));
    }
    let piece = ColoredPiece::from_distinguished(a, e2)?;
    let mut template = g.clone();
    for (k, x) in template.edges.iter_mut().enumerate() {
        x.contracted |= k != i;
    }
    let d = ColoredDecomposition::new(template, vec![piece])?;
    let mut out = assemble_colored(&d)?;
    for x in &mut out.edges {
        if let Some(orig) = g.edges.iter().find(|o| o.id == x.id) {
            x.contracted = orig.contracted;
        }
    }
    out.name = format!("{}+{}", g.name, a.name);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ColoredClass {
    /// Marked half-edges in one component.
    S1,
    S2,
}

#[derive(Clone, Debug, Serialize)]
pub struct ColoredPieceState {
    pub mask: u64,
    pub class: ColoredClass,
    pub stats: StrandedStats,
    /// The two marked half-edges share a boundary component.
    pub same_boundary: bool,
    /// Every open face through `m` ends at `n`.
    pub edge_like: bool,
}

pub fn analyze_colored_piece(p: &ColoredPiece) -> Result<Vec<ColoredPieceState>, StrandedError> {
    let ctx = StateContext::new(&p.graph);
    check_limit(ctx.num_free())?;
    let pair = {
        let mut v = vec![p.m_id().to_string(), p.n_id().to_string()];
        v.sort();
        v
    };
    let rank = p.graph.rank;
    Ok((0..1u64 << ctx.num_free())
        .map(|mask| {
            let stats = ctx.stats(mask);
            let bd = ctx.boundary(mask);
            let pos = |id: &str| bd.vertices.iter().position(|x| x == id).expect("half-edge");
            let mut uf = UnionFind::new(bd.vertices.len());
            for f in &bd.edges {
                for w in f.ends.windows(2) {
                    uf.union(pos(&w[0]), pos(&w[1]));
                }
            }
            let (mi, ni) = (pos(p.m_id()), pos(p.n_id()));
            let through_m = bd.edges.iter().filter(|f| f.ends.iter().any(|x| x == p.m_id()));
            let edge_like = through_m.clone().count() == rank && through_m.clone().all(|f| f.ends == pair);
            let retained = ctx.retained(mask);
            let mut comp = UnionFind::new(p.graph.vertices.len());
            for (i, e) in p.graph.edges.iter().enumerate() {
                if retained[i] {
                    comp.union(e.ends.0, e.ends.1);
                }
            }
            let class = if comp.find(p.m_vertex()) == comp.find(p.n_vertex()) {
                ColoredClass::S1
            } else {
                ColoredClass::S2
            };
            ColoredPieceState {
                mask,
                class,
                same_boundary: uf.find(mi) == uf.find(ni),
                edge_like,
                stats,
            }
        })
        .collect())
}

/// Connected states have the marks on one boundary component and
/// disconnected states on two.
pub fn standing_condition(states: &[ColoredPieceState]) -> bool {
    states.iter().all(|s| (s.class == ColoredClass::S1) == s.same_boundary)
}

pub fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Variable names: `a b c d f g3 .. gn`.
pub fn stranded_vars(rank: usize) -> Vec<String> {
    let mut v: Vec<String> = ["a", "b", "c", "d", "f"].iter().map(|s| s.to_string()).collect();
    v.extend((3..=rank).map(|p| format!("g{p}")));
    v
}

fn accumulator(rank: usize) -> IntTermAccumulator {
    let names = stranded_vars(rank);
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    IntTermAccumulator::new(&refs)
}

/// Exponents `(k, e, F_int, C_∂, E_∂, B^3..B^n)` shifted by `slots` copies of
/// the per-slot offsets.
fn exponents(st: &StrandedStats, rank: usize, slots: i64, with_edges: bool) -> Vec<i64> {
    let mut v = vec![
        st.k as i64 - slots,
        if with_edges { st.e as i64 } else { 0 },
        st.f_int as i64,
        st.c_bd as i64 - slots,
        st.e_bd as i64 - slots * rank as i64,
    ];
    v.extend((3..=rank).map(|p| st.bubbles[p] as i64 - slots * binomial(rank, p - 1)));
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoredEtaTable {
    pub eta1: MultiPoly,
    pub eta2: MultiPoly,
}

pub fn colored_eta(states: &[ColoredPieceState], rank: usize) -> ColoredEtaTable {
    let (mut one, mut two) = (accumulator(rank), accumulator(rank));
    for s in states {
        match s.class {
            ColoredClass::S1 => one.push(exponents(&s.stats, rank, 1, true)),
            ColoredClass::S2 => two.push(exponents(&s.stats, rank, 2, true)),
        }
    }
    ColoredEtaTable {
        eta1: one.into_poly(),
        eta2: two.into_poly(),
    }
}

/// `Σ a^k (∏ weights) c^F d^C f^E ∏ g_p^{B^p}`; the edge `weighted` carries
/// `x` instead of `b`.
pub fn colored_z(g: &ColoredTensorGraph, weighted: Option<&str>) -> Result<MultiPoly, StrandedError> {
    let ctx = StateContext::new(g);
    check_limit(ctx.num_free())?;
    let free = g.free_edges();
    let special = weighted.map(|id| g.edge_index(id)).transpose()?;
    let special_bit = special.map(|s| free.iter().position(|&i| i == s).expect("free edge"));
    let mut acc = accumulator(g.rank);
    let mut with_x = accumulator(g.rank);
    for mask in 0..1u64 << ctx.num_free() {
        let st = ctx.stats(mask);
        let mut ex = exponents(&st, g.rank, 0, true);
        match special_bit {
            Some(bit) if mask >> bit & 1 == 1 => {
                ex[1] -= 1;
                with_x.push(ex);
            }
            _ => acc.push(ex),
        }
    }
    Ok(acc.into_poly() + with_x.into_poly().mul_monomial(&crate::poly::Monomial::var("x")))
}

/// Everything the checks need about one decomposition.
#[derive(Clone, Debug)]
pub struct PreparedColored {
    pub decomposition: ColoredDecomposition,
    pub hat: ColoredTensorGraph,
    pub piece_states: Vec<Vec<ColoredPieceState>>,
    pub tables: Vec<ColoredEtaTable>,
    pub template_stats: Vec<StrandedStats>,
    /// Per free edge of the assembled graph: slot and bit in that piece.
    origin: Vec<(usize, usize)>,
}

impl PreparedColored {
    pub fn new(d: &ColoredDecomposition) -> Result<Self, StrandedError> {
        let hat = assemble_colored(d)?;
        check_limit(hat.num_free_edges())?;
        let rank = d.template.rank;
        let mut piece_states = Vec::new();
        let mut tables = Vec::new();
        for p in &d.pieces {
            let st = analyze_colored_piece(p)?;
            tables.push(colored_eta(&st, rank));
            piece_states.push(st);
        }
        let tctx = StateContext::new(&d.template);
        check_limit(tctx.num_free())?;
        let template_stats = (0..1u64 << tctx.num_free()).map(|m| tctx.stats(m)).collect();
        let t = &d.template;
        let mut origin = Vec::new();
        for &h in &hat.free_edges() {
            let id = &hat.edges[h].id;
            let (tid, pid) = id.split_once(':').expect("piece edges are prefixed");
            let slot = t.free_edges().iter().position(|&i| t.edges[i].id == tid).expect("template edge");
            let pg = &d.pieces[slot].graph;
            let bit = pg.free_edges().iter().position(|&i| pg.edges[i].id == pid).expect("piece edge");
            origin.push((slot, bit));
        }
        Ok(PreparedColored {
            decomposition: d.clone(),
            hat,
            piece_states,
            tables,
            template_stats,
            origin,
        })
    }

    pub fn standing_condition(&self) -> bool {
        self.piece_states.iter().all(|s| standing_condition(s))
    }

    /// Every connected piece state joins the marks by all their open faces.
    pub fn edge_like(&self) -> bool {
        self.piece_states
            .iter()
            .flatten()
            .all(|s| s.class == ColoredClass::S2 || s.edge_like)
    }

    fn split(&self, mask: u64) -> Vec<u64> {
        let mut out = vec![0u64; self.decomposition.pieces.len()];
        for (h, &(slot, bit)) in self.origin.iter().enumerate() {
            if mask >> h & 1 == 1 {
                out[slot] |= 1 << bit;
            }
        }
        out
    }

    fn template_mask(&self, piece_masks: &[u64]) -> u64 {
        piece_masks
            .iter()
            .enumerate()
            .filter(|(i, &m)| self.piece_states[*i][m as usize].class == ColoredClass::S1)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }
}

/// `Σ_s a^k c^F d^C f^E ∏ g^{B} ∏_{e∈s} η¹ ∏_{e∉s} η²`.
pub fn expand_proposition(p: &PreparedColored) -> MultiPoly {
    let rank = p.decomposition.template.rank;
    let terms: Vec<MultiPoly> = p
        .template_stats
        .par_iter()
        .enumerate()
        .map(|(mask, st)| {
            let mut acc = accumulator(rank);
            acc.push(exponents(st, rank, 0, false));
            let mut term = acc.into_poly();
            for (i, t) in p.tables.iter().enumerate() {
                let factor = if mask >> i & 1 == 1 { &t.eta1 } else { &t.eta2 };
                term = &term * factor;
            }
            term
        })
        .collect();
    terms.into_iter().sum()
}

pub fn direct_sum(p: &PreparedColored) -> Result<MultiPoly, StrandedError> {
    colored_z(&p.hat, None)
}

/// Per-state identities on every state of the assembled graph.
pub fn verify_colored_counting(p: &PreparedColored) -> CountingReport {
    let ctx = StateContext::new(&p.hat);
    let rank = p.hat.rank;
    let parts: Vec<CountingReport> = chunks(ctx.num_free())
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut rep = CountingReport::default();
            for mask in lo..hi {
                rep.composite_states += 1;
                let hat = ctx.stats(mask);
                let pm = p.split(mask);
                let tm = p.template_mask(&pm);
                let s = &p.template_stats[tm as usize];
                let pieces: Vec<&StrandedStats> =
                    pm.iter().enumerate().map(|(i, &m)| &p.piece_states[i][m as usize].stats).collect();
                let n1 = tm.count_ones() as i64;
                let n2 = pieces.len() as i64 - n1;
                let sum = |f: &dyn Fn(&StrandedStats) -> usize| pieces.iter().map(|x| f(x) as i64).sum::<i64>() + f(s) as i64;
                let mut check = |identity: &'static str, expected: i64, actual: usize| {
                    if expected != actual as i64 {
                        rep.record(Violation {
                            identity,
                            template_state: tm,
                            piece_states: pm.clone(),
                            expected,
                            actual: actual as i64,
                        });
                    }
                };
                check("components", sum(&|x| x.k) - n1 - 2 * n2, hat.k);
                check("boundary_components", sum(&|x| x.c_bd) - n1 - 2 * n2, hat.c_bd);
                check("internal_faces", sum(&|x| x.f_int), hat.f_int);
                check("half_edges", sum(&|x| x.f) - 2 * n1 - 4 * n2, hat.f);
                let r = rank as i64;
                check("open_faces", sum(&|x| x.e_bd) - r * n1 - 2 * r * n2, hat.e_bd);
                for (q, id) in BUBBLE_IDS.iter().enumerate().take(rank + 1).skip(2) {
                    let c = binomial(rank, q - 1);
                    check(id, sum(&|x| x.bubbles[q]) - c * n1 - 2 * c * n2, hat.bubbles[q]);
                }
            }
            rep
        })
        .collect();
    let mut out = CountingReport::default();
    for r in parts {
        out.merge(r);
    }
    out
}

const BUBBLE_IDS: [&str; 9] = [
    "bubbles_0",
    "bubbles_1",
    "bubbles_2",
    "bubbles_3",
    "bubbles_4",
    "bubbles_5",
    "bubbles_6",
    "bubbles_7",
    "bubbles_8",
];

#[derive(Clone, Debug, Serialize)]
pub struct ClosureCheck {
    pub piece: String,
    pub holds: bool,
}

/// `Z(A) = Z(H) + x Z(A/e)` for a piece.
pub fn closure_split(p: &ColoredPiece) -> Result<bool, StrandedError> {
    let za = colored_z(&p.closure(), Some(CLOSING_EDGE))?;
    let zh = colored_z(&p.graph, None)?;
    let zc = colored_z(&p.closure_contracted(), None)?;
    Ok(za == zh + zc.mul_monomial(&crate::poly::Monomial::var("x")))
}

#[derive(Clone, Debug, Serialize)]
pub struct StrandedReport {
    pub name: String,
    pub standing_condition: bool,
    pub edge_like: bool,
    /// `None` when the standing condition fails and the instance is skipped.
    pub proposition: Option<bool>,
    pub first_difference: Option<String>,
    pub counting: Option<CountingReport>,
    pub closure_split: Vec<bool>,
}

impl StrandedReport {
    pub fn skipped(&self) -> bool {
        self.proposition.is_none()
    }

    pub fn holds(&self) -> bool {
        self.proposition == Some(true)
            && self.counting.as_ref().is_some_and(CountingReport::holds)
            && self.closure_split.iter().all(|&b| b)
    }
}

pub fn verify_prop_stranded(name: &str, d: &ColoredDecomposition) -> Result<StrandedReport, StrandedError> {
    let p = PreparedColored::new(d)?;
    let closure = d.pieces.iter().map(closure_split).collect::<Result<Vec<_>, _>>()?;
    let standing = p.standing_condition();
    let mut rep = StrandedReport {
        name: name.into(),
        standing_condition: standing,
        edge_like: p.edge_like(),
        proposition: None,
        first_difference: None,
        counting: None,
        closure_split: closure,
    };
    if standing {
        let diff = &expand_proposition(&p) - &direct_sum(&p)?;
        rep.first_difference = diff
            .sorted_terms()
            .first()
            .map(|(m, c)| format!("{} {}", crate::poly::rat_to_string(c), m));
        rep.proposition = Some(diff.is_zero());
        rep.counting = Some(verify_colored_counting(&p));
    }
    Ok(rep)
}

/// Rank-3 pieces with marks of color 0 and at most two edges, on the marked
/// vertices plus at most one more; every vertex completed by half-edges.
pub fn small_pieces(rank: usize) -> Vec<ColoredPiece> {
    let slots: [(&str, &str); 3] = [("u", "w"), ("u", "x"), ("w", "x")];
    let mut choices: Vec<(usize, usize)> = Vec::new();
    for s in 0..3 {
        for c in 1..=rank {
            choices.push((s, c));
        }
    }
    let mut sets: Vec<Vec<(usize, usize)>> = vec![vec![]];
    for i in 0..choices.len() {
        sets.push(vec![choices[i]]);
        for j in i + 1..choices.len() {
            sets.push(vec![choices[i], choices[j]]);
        }
    }
    let mut out = Vec::new();
    for set in sets {
        let mut used: BTreeMap<&str, Vec<usize>> = BTreeMap::from([("u", vec![0]), ("w", vec![0])]);
        let mut ok = true;
        for &(s, c) in &set {
            let (a, b) = slots[s];
            for v in [a, b] {
                let cols = used.entry(v).or_default();
                ok &= !cols.contains(&c);
                cols.push(c);
            }
        }
        if !ok {
            continue;
        }
        let name = set.iter().map(|&(s, c)| format!("{}{}{c}", slots[s].0, slots[s].1)).collect::<Vec<_>>().join("_");
        let mut b = ColoredBuilder::new(if name.is_empty() { "bare" } else { &name }, rank);
        for v in used.keys() {
            b = b.vertex(v, None);
        }
        for (k, &(s, c)) in set.iter().enumerate() {
            let (x, y) = slots[s];
            b = b.edge(&format!("p{k}"), x, y, c);
        }
        b = b.marked_half("m", "u", 0, Mark::M).marked_half("n", "w", 0, Mark::N);
        for (v, cols) in &used {
            for c in (0..=rank).filter(|c| !cols.contains(c)) {
                b = b.half(&format!("h{v}{c}"), v, c);
            }
        }
        out.push(ColoredPiece::from_graph(b.build().expect("proper by construction")).expect("marked"));
    }
    out
}

/// The melon with its edges of colors above `keep` cut into half-edges.
pub fn melon_template(rank: usize, keep: usize) -> ColoredTensorGraph {
    let mut b = ColoredBuilder::new(&format!("melon{rank}_{keep}"), rank)
        .bipartite()
        .vertex("u", Some(Polarity::Plus))
        .vertex("w", Some(Polarity::Minus));
    for c in 0..=rank {
        if c < keep {
            b = b.edge(&format!("c{c}"), "u", "w", c);
        } else {
            b = b.half(&format!("hu{c}"), "u", c).half(&format!("hw{c}"), "w", c);
        }
    }
    b.build().expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stranded::census::colored_stats;
    use crate::stranded::graph::melon;

    #[test]
    fn two_sum_of_melons() {
        let m = melon(3);
        let s = colored_two_sum(&m, "c0", &m, "c0").unwrap();
        let st = colored_stats(&s);
        assert_eq!(st.v, 2 + 2 - 2);
        assert_eq!(st.e, 4 + 4 - 2);
        assert!(s.bipartite);
        assert!(colored_two_sum(&m, "c0", &m, "c1").is_err());
    }

    #[test]
    fn dipole_piece_classes() {
        let d = ColoredPiece::dipole(3, 0);
        let st = analyze_colored_piece(&d).unwrap();
        assert_eq!(st.len(), 8);
        assert_eq!(st.iter().filter(|s| s.class == ColoredClass::S1).count(), 7);
        assert!(standing_condition(&st));
        assert!(st[7].edge_like);
        assert!(!st[1].edge_like);
    }

    #[test]
    fn small_piece_family() {
        let ps = small_pieces(3);
        assert_eq!(ps.len(), 37);
        assert!(ps.iter().all(|p| p.graph.is_tensor()));
    }

    #[test]
    fn closure_identity() {
        for p in small_pieces(3).iter().take(6) {
            assert!(closure_split(p).unwrap());
        }
    }

    #[test]
    fn single_edge_template_with_dipole() {
        let d = ColoredDecomposition::uniform(melon_template(3, 1), &ColoredPiece::dipole(3, 0)).unwrap();
        let r = verify_prop_stranded("t", &d).unwrap();
        assert!(r.standing_condition);
        assert!(r.holds(), "{r:?}");
    }
}
