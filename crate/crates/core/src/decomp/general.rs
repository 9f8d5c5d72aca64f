//! Expansion through the auxiliary graph obtained by gluing a two-edge piece
//! at every template edge, one state class per boundary class of the pieces.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::analysis::{analyze_piece, BoundaryClass, MarkProfile};
use super::expansion::{for_each_composite, CountingReport, Violation};
use super::{DecompError, EtaTable, Prepared};
use crate::invariants::{herg_z, EdgeWeights};
use crate::ops::{tensor_product, Piece};
use crate::poly::{rat, rat_frac, Monomial, MultiPoly};
use crate::ribbon::faces::SideGraph;
use crate::ribbon::graph::{Mark, RawGraph};
use crate::ribbon::states::mask_to_retained;
use crate::ribbon::stats::state_stats;
use crate::ribbon::{GraphStats, HalfEdgedRibbonGraph};

/// Two vertices joined by untwisted `f` and `g`, `f` first at both.
pub fn digon_piece() -> Piece {
    let g = RawGraph::new("digon")
        .vertex("u", &["hm", "f.1", "g.1"])
        .vertex("w", &["hn", "g.2", "f.2"])
        .edge("f", false)
        .edge("g", false)
        .mark("hm", Mark::M)
        .mark("hn", Mark::N)
        .header("um", "u")
        .header("wm", "w")
        .build()
        .expect("digon piece is valid");
    Piece::from_graph(g).expect("digon piece is valid")
}

pub const CLASSES: [BoundaryClass; 3] = [BoundaryClass::S1Ddot, BoundaryClass::S1Bar, BoundaryClass::S2Ddot];

/// Edges of the digon piece kept by the fewest-edge representative of a
/// class, as `(f, g)`.
pub fn representative(class: BoundaryClass) -> (bool, bool) {
    match class {
        BoundaryClass::S1Ddot => (true, true),
        BoundaryClass::S1Bar => (false, true),
        BoundaryClass::S2Ddot => (false, false),
    }
}

fn digon_mask((f, g): (bool, bool)) -> u64 {
    u64::from(f) | u64::from(g) << 1
}

/// Profile of the marked half-ribbons in each representative state of the
/// digon piece.
pub fn representative_profiles() -> BTreeMap<BoundaryClass, MarkProfile> {
    let states = analyze_piece(&digon_piece()).expect("digon piece analyses");
    CLASSES
        .iter()
        .map(|&c| (c, states[digon_mask(representative(c)) as usize].profile))
        .collect()
}

pub fn f_var(eid: &str) -> String {
    format!("f_{eid}")
}

pub fn g_var(eid: &str) -> String {
    format!("g_{eid}")
}

/// The auxiliary graph with its two edges per template edge weighted by
/// `f_<e>` and `g_<e>`.
pub struct Auxiliary {
    pub graph: HalfEdgedRibbonGraph,
    pub weights: EdgeWeights,
    /// Per template edge, indices of its `f` and `g` copies.
    pub copies: Vec<(usize, usize)>,
}

pub fn auxiliary(template: &HalfEdgedRibbonGraph) -> Result<Auxiliary, DecompError> {
    let graph = tensor_product(template, &digon_piece())?;
    let mut by_edge = BTreeMap::new();
    let mut copies = Vec::new();
    for e in &template.edges {
        let (fid, gid) = (format!("{}:f", e.id), format!("{}:g", e.id));
        copies.push((graph.edge_index(&fid).expect("f copy"), graph.edge_index(&gid).expect("g copy")));
        by_edge.insert(fid, f_var(&e.id));
        by_edge.insert(gid, g_var(&e.id));
    }
    Ok(Auxiliary {
        graph,
        weights: EdgeWeights::Named {
            default: "b".into(),
            by_edge,
        },
        copies,
    })
}

impl Auxiliary {
    pub fn mask_for(&self, classes: &[BoundaryClass]) -> u64 {
        classes
            .iter()
            .zip(&self.copies)
            .fold(0, |acc, (&c, &(fi, gi))| {
                let (f, g) = representative(c);
                acc | u64::from(f) << fi | u64::from(g) << gi
            })
    }

    pub fn stats(&self, mask: u64) -> GraphStats {
        let sg = SideGraph::new(&self.graph);
        state_stats(&sg, &mask_to_retained(mask, self.graph.num_edges()))
    }
}

fn class_assignments(ne: usize) -> Vec<Vec<BoundaryClass>> {
    let total = 3usize.pow(ne as u32);
    (0..total)
        .map(|mut i| {
            (0..ne)
                .map(|_| {
                    let c = CLASSES[i % 3];
                    i /= 3;
                    c
                })
                .collect()
        })
        .collect()
}

/// Sum over state classes of `a^k ∏ f_e^α g_e^β c^F d^C` at the
/// fewest-edge representatives.
pub fn phi(template: &HalfEdgedRibbonGraph, aux: &Auxiliary) -> MultiPoly {
    let terms: Vec<MultiPoly> = class_assignments(template.num_edges())
        .into_par_iter()
        .map(|classes| {
            let st = aux.stats(aux.mask_for(&classes));
            let mut m = Monomial::from_ints(&[("a", st.k as i64), ("c", st.f_int as i64), ("d", st.c_bd as i64)]);
            for (e, &c) in template.edges.iter().zip(&classes) {
                let (f, g) = representative(c);
                if f {
                    m = m.mul(&Monomial::var(&f_var(&e.id)));
                }
                if g {
                    m = m.mul(&Monomial::var(&g_var(&e.id)));
                }
            }
            MultiPoly::mono(m)
        })
        .collect();
    terms.into_iter().sum()
}

/// Replaces each `f_e^α g_e^β` by the polynomial chosen for `(α, β)`.
fn apply_edge_map<F>(p: &MultiPoly, eids: &[String], image: F) -> Result<MultiPoly, DecompError>
where
    F: Fn(usize, i64, i64) -> MultiPoly,
{
    let mut grouped: BTreeMap<Vec<(i64, i64)>, MultiPoly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut key = Vec::with_capacity(eids.len());
        let mut rest = m.clone();
        for e in eids {
            let (fv, gv) = (f_var(e), g_var(e));
            let exp = |v: &str| -> Result<i64, DecompError> {
                let x = m.exponent(v);
                if x.is_integer() && (x == rat(0) || x == rat(1)) {
                    Ok(x.to_integer().try_into().expect("0 or 1"))
                } else {
                    Err(crate::poly::PolyError::NotMultilinear {
                        var: v.to_string(),
                        monomial: m.to_string(),
                    }
                    .into())
                }
            };
            key.push((exp(&fv)?, exp(&gv)?));
            rest = rest.without(&fv).without(&gv);
        }
        grouped.entry(key).or_default().add_term(rest, c.clone());
    }
    let mut out = MultiPoly::zero();
    for (key, rest) in grouped {
        let mut acc = rest;
        for (i, &(alpha, beta)) in key.iter().enumerate() {
            acc = &acc * &image(i, alpha, beta);
        }
        out += &acc;
    }
    Ok(out)
}

/// `f^α g^β ↦ (η̈¹)^{αβ} (η̈²)^{1-β} (η̄¹)^{β-αβ}` per template edge.
pub fn class_map(p: &MultiPoly, eids: &[String], tables: &[EtaTable]) -> Result<MultiPoly, DecompError> {
    apply_edge_map(p, eids, |i, alpha, beta| {
        let t = &tables[i];
        match (alpha, beta) {
            (1, 1) => t.ddot1_total(),
            (0, 1) => t.bar1_total(),
            _ => t.ddot2.clone(),
        }
    })
}

/// `f^α g^β ↦ (r/ac)^{αβ} (q/2ac)^{1-β} c^{αβ-α} (p/ac)^{β-αβ}` with the
/// candidate `(p, q, r)` of each piece.
pub fn normalized_class_map(p: &MultiPoly, eids: &[String], tables: &[EtaTable]) -> Result<MultiPoly, DecompError> {
    let inv_ac = Monomial::from_ints(&[("a", -1), ("c", -1)]);
    apply_edge_map(p, eids, |i, alpha, beta| {
        let (pp, qq, rr) = candidate(&tables[i]);
        match (alpha, beta) {
            (1, 1) => rr.mul_monomial(&inv_ac),
            (0, 1) => pp.mul_monomial(&inv_ac),
            (a, _) => qq
                .mul_monomial(&inv_ac)
                .scale(&rat_frac(1, 2))
                .mul_monomial(&Monomial::from_ints(&[("c", -a)])),
        }
    })
}

/// `(p, q, r) = (a d η̄¹, a d η̈², a d η̈¹)`.
pub fn candidate(t: &EtaTable) -> (MultiPoly, MultiPoly, MultiPoly) {
    let ad = Monomial::from_ints(&[("a", 1), ("d", 1)]);
    (
        t.bar1_total().mul_monomial(&ad),
        t.ddot2.mul_monomial(&ad),
        t.ddot1_total().mul_monomial(&ad),
    )
}

pub fn at_unit_l(p: &MultiPoly) -> MultiPoly {
    p.substitute(&BTreeMap::from([("l".to_string(), MultiPoly::one())]))
        .expect("integer exponents")
}

fn m(pairs: &[(&str, i64)]) -> MultiPoly {
    MultiPoly::monomial(pairs)
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneralPieceCheck {
    /// `a d (η̄¹ + d η̈¹ + a d η̈²) = Z(H)` at `l = 1`.
    pub piece_identity: bool,
    /// `a (d² η̄¹⁰ + c d η̄¹¹ + c² η̄¹² + d η̈¹⁰ + c d² η̈¹¹ + d η̈²) = Z(A/e)` at `l = 1`.
    pub contracted_identity: bool,
    /// `p + a d q + d r = Z(H)`.
    pub candidate_first: bool,
    /// `a d (d-c) η̄¹⁰ + a c (c-d) η̄¹² + a d (1-c d) η̈¹⁰ + c p + q + c d r = Z(A/e)`.
    pub candidate_second: bool,
    pub typed: bool,
}

impl GeneralPieceCheck {
    pub fn holds(&self) -> bool {
        self.piece_identity && self.contracted_identity && self.candidate_first && self.candidate_second && self.typed
    }
}

pub fn general_piece_check(piece: &Piece, t: &EtaTable) -> Result<GeneralPieceCheck, DecompError> {
    let common = EdgeWeights::common();
    let z_h = at_unit_l(&herg_z(&piece.graph, &common)?);
    let z_c = at_unit_l(&herg_z(&piece.closure_contracted()?, &common)?);
    let bar = &t.bar1;
    let dd = &t.ddot1;
    let (c, d) = (MultiPoly::var("c"), MultiPoly::var("d"));
    let piece_identity = (t.bar1_total() + t.ddot1_total().mul_monomial(&Monomial::var("d"))
        + t.ddot2.mul_monomial(&Monomial::from_ints(&[("a", 1), ("d", 1)])))
    .mul_monomial(&Monomial::from_ints(&[("a", 1), ("d", 1)]))
        == z_h;
    let contracted = (bar[0].mul_monomial(&Monomial::from_ints(&[("d", 2)]))
        + bar[1].mul_monomial(&Monomial::from_ints(&[("c", 1), ("d", 1)]))
        + bar[2].mul_monomial(&Monomial::from_ints(&[("c", 2)]))
        + dd[0].mul_monomial(&Monomial::var("d"))
        + dd[1].mul_monomial(&Monomial::from_ints(&[("c", 1), ("d", 2)]))
        + t.ddot2.mul_monomial(&Monomial::var("d")))
    .mul_monomial(&Monomial::var("a"));
    let (p, q, r) = candidate(t);
    let first = &p + &q.mul_monomial(&Monomial::from_ints(&[("a", 1), ("d", 1)])) + r.mul_monomial(&Monomial::var("d"));
    let second = &(&m(&[("a", 1), ("d", 1)]) * &(&d - &c)) * &bar[0]
        + &(&m(&[("a", 1), ("c", 1)]) * &(&c - &d)) * &bar[2]
        + &(&m(&[("a", 1), ("d", 1)]) * &(MultiPoly::one() - m(&[("c", 1), ("d", 1)]))) * &dd[0]
        + p.mul_monomial(&Monomial::var("c"))
        + q
        + r.mul_monomial(&Monomial::from_ints(&[("c", 1), ("d", 1)]));
    Ok(GeneralPieceCheck {
        piece_identity,
        contracted_identity: contracted == z_c,
        candidate_first: first == z_h,
        candidate_second: second == z_c,
        typed: t.ddot1_untyped.is_zero(),
    })
}

/// A piece state whose marks sit differently from the digon representative
/// of its class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Nonconforming {
    pub slot: usize,
    pub mask: u64,
    pub class: BoundaryClass,
}

pub fn nonconforming_states(p: &Prepared) -> Vec<Nonconforming> {
    let reps = representative_profiles();
    let mut out = Vec::new();
    for (slot, states) in p.piece_states.iter().enumerate() {
        for s in states {
            if reps[&s.class] != s.profile {
                out.push(Nonconforming {
                    slot,
                    mask: s.mask,
                    class: s.class,
                });
            }
        }
    }
    out
}

/// Component and boundary offsets per class: `(k, C)`.
fn offsets(c: BoundaryClass) -> (i64, i64) {
    match c {
        BoundaryClass::S1Ddot => (1, 2),
        BoundaryClass::S2Ddot => (2, 2),
        BoundaryClass::S1Bar => (1, 1),
    }
}

/// Counting identities against the representative state of the auxiliary
/// graph.
pub fn verify_class_counting(p: &Prepared, aux: &Auxiliary) -> CountingReport {
    let ne = aux.graph.num_edges();
    let sg = SideGraph::new(&aux.graph);
    let aux_stats: Vec<GraphStats> = (0..1u64 << ne)
        .map(|mask| state_stats(&sg, &mask_to_retained(mask, ne)))
        .collect();
    for_each_composite(p, |c, hat, rep| {
        let classes: Vec<BoundaryClass> = c
            .piece_masks
            .iter()
            .enumerate()
            .map(|(i, &m)| p.piece_states[i][m as usize].class)
            .collect();
        let s = &aux_stats[aux.mask_for(&classes) as usize];
        let (mut k, mut cb) = (s.k as i64, s.c_bd as i64);
        for (st, &cl) in c.pieces.iter().zip(&classes) {
            let (ok, oc) = offsets(cl);
            k += st.k as i64 - ok;
            cb += st.c_bd as i64 - oc;
        }
        let checks = [
            ("class_components", k, hat.k),
            ("class_boundary_components", cb, hat.c_bd),
            ("class_internal_faces", c.sum(|x| x.f_int) + s.f_int as i64, hat.f_int),
            ("class_edges", c.sum(|x| x.e), hat.e),
        ];
        for (identity, expected, actual) in checks {
            if expected != actual as i64 {
                rep.record(Violation {
                    identity,
                    template_state: c.template_state,
                    piece_states: c.piece_masks.clone(),
                    expected,
                    actual: actual as i64,
                });
            }
        }
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneralReport {
    pub conforming: bool,
    pub nonconforming: Vec<Nonconforming>,
    pub classes: usize,
    pub phi: MultiPoly,
    /// `Z(Ĝ)` at `l = 1`.
    pub direct: MultiPoly,
    pub class_map_of_phi: bool,
    pub class_map_of_auxiliary: bool,
    /// Size of `Z(Ĝ) - H(Z(G̃))`.
    pub auxiliary_residual_terms: usize,
    pub normalized_map_of_auxiliary: bool,
    pub pieces: Vec<GeneralPieceCheck>,
    pub counting: Option<CountingReport>,
}

impl GeneralReport {
    /// The asserted identities; the normalized map is report-only.
    pub fn holds(&self) -> bool {
        self.conforming
            && self.class_map_of_phi
            && self.class_map_of_auxiliary
            && self.pieces.iter().all(GeneralPieceCheck::holds)
            && self.counting.as_ref().is_some_and(CountingReport::holds)
    }
}

pub fn verify_general_case(p: &Prepared) -> Result<GeneralReport, DecompError> {
    let template = &p.decomposition.template;
    let aux = auxiliary(template)?;
    let eids: Vec<String> = template.edges.iter().map(|e| e.id.clone()).collect();
    let nonconforming = nonconforming_states(p);
    let conforming = nonconforming.is_empty();
    let phi = phi(template, &aux);
    let direct = at_unit_l(&herg_z(&p.hat, &EdgeWeights::common())?);
    let class_map_of_phi = class_map(&phi, &eids, &p.tables)? == direct;
    let z_aux = at_unit_l(&herg_z(&aux.graph, &aux.weights)?);
    let residual = &direct - &class_map(&z_aux, &eids, &p.tables)?;
    let normalized_map_of_auxiliary = normalized_class_map(&z_aux, &eids, &p.tables)? == direct;
    let pieces = p
        .pieces
        .iter()
        .zip(&p.tables)
        .map(|(pc, t)| general_piece_check(pc, t))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GeneralReport {
        counting: conforming.then(|| verify_class_counting(p, &aux)),
        conforming,
        nonconforming,
        classes: 3usize.pow(template.num_edges() as u32),
        phi,
        direct,
        class_map_of_phi,
        class_map_of_auxiliary: residual.is_zero(),
        auxiliary_residual_terms: residual.len(),
        normalized_map_of_auxiliary,
        pieces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::Decomposition;
    use crate::ribbon::parse_graph;

    #[test]
    fn one_edge_template_has_three_classes() {
        let t = parse_graph("graph t\nvertex u: a.1\nvertex w: a.2\nedge a: twist=0\n").unwrap();
        let aux = auxiliary(&t).unwrap();
        assert_eq!(class_assignments(1).len(), 3);
        assert_eq!(phi(&t, &aux).len(), 3);
    }

    #[test]
    fn class_map_images() {
        let p = Piece::identity();
        let t = crate::decomp::eta_sums(&analyze_piece(&p).unwrap());
        let eids = vec!["e".to_string()];
        let img = |a: i64, b: i64| {
            let mut pairs = vec![];
            if a == 1 {
                pairs.push(("f_e", 1));
            }
            if b == 1 {
                pairs.push(("g_e", 1));
            }
            class_map(&m(&pairs), &eids, std::slice::from_ref(&t)).unwrap()
        };
        assert_eq!(img(1, 1), t.ddot1_total());
        assert_eq!(img(0, 1), t.bar1_total());
        assert_eq!(img(0, 0), t.ddot2);
        assert_eq!(img(1, 0), t.ddot2);
    }

    #[test]
    fn identity_piece_general_identities() {
        let p = Piece::identity();
        let t = crate::decomp::eta_sums(&analyze_piece(&p).unwrap());
        assert!(general_piece_check(&p, &t).unwrap().holds());
    }

    #[test]
    fn conforming_piece_with_extra_half_ribbon() {
        let piece = Piece::from_graph(
            parse_graph("graph p\nvertex u: hm!m h1 p.1\nvertex w: hn!n p.2\nedge p: twist=0\n").unwrap(),
        )
        .unwrap();
        let t = parse_graph("graph t\nvertex u: a.1 b.1\nvertex w: b.2 a.2\nedge a: twist=0\nedge b: twist=0\n").unwrap();
        let prep = Prepared::new(&Decomposition::uniform(t, &piece).unwrap()).unwrap();
        let r = verify_general_case(&prep).unwrap();
        assert!(r.conforming, "{:?}", r.nonconforming);
        assert!(r.class_map_of_phi);
        assert!(r.counting.as_ref().unwrap().holds());
    }
}
