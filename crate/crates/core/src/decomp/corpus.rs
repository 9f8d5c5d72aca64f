//! Deterministic families of small templates, pieces and decompositions
//! used for exhaustive identity checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::analysis::{analyze_piece, screen};
use super::general::{nonconforming_states, representative_profiles};
use super::{DecompError, Prepared};
use crate::ops::{Decomposition, Piece, PieceSlot};
use crate::ribbon::graph::{Mark, RawGraph};
use crate::ribbon::HalfEdgedRibbonGraph;

/// Name, vertex count and edge list of a small multigraph.
type Shape = (&'static str, usize, &'static [(usize, usize)]);

/// Underlying loop-free multigraphs of the templates: name, vertex count,
/// edges.
pub const TEMPLATE_SHAPES: &[Shape] = &[
    ("k2", 2, &[(0, 1)]),
    ("path3", 3, &[(0, 1), (1, 2)]),
    ("digon", 2, &[(0, 1), (0, 1)]),
    ("path4", 4, &[(0, 1), (1, 2), (2, 3)]),
    ("star", 4, &[(0, 1), (0, 2), (0, 3)]),
    ("triangle", 3, &[(0, 1), (1, 2), (2, 0)]),
    ("digon_pendant", 3, &[(0, 1), (0, 1), (1, 2)]),
    ("theta", 2, &[(0, 1), (0, 1), (0, 1)]),
];

const EDGE_IDS: [&str; 3] = ["a", "b", "c"];
const VERTEX_IDS: [&str; 4] = ["u", "v", "w", "x"];

/// Cyclic orders of `items` with the first element fixed.
fn cyclic_orders(items: &[String]) -> Vec<Vec<String>> {
    if items.len() <= 2 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    let rest = &items[1..];
    for perm in permutations(rest) {
        let mut v = vec![items[0].clone()];
        v.extend(perm);
        out.push(v);
    }
    out
}

fn permutations(items: &[String]) -> Vec<Vec<String>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x.clone());
            out.push(p);
        }
    }
    out
}

fn cartesian<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    choices.iter().fold(vec![Vec::new()], |acc, opts| {
        acc.iter()
            .flat_map(|prefix| {
                opts.iter().map(move |o| {
                    let mut p = prefix.clone();
                    p.push(o.clone());
                    p
                })
            })
            .collect()
    })
}

/// Every way to insert `labels` into the rotations, each label in a slot
/// no earlier than the previous one's and after it within a shared slot.
fn insert_half_ribbons(rotations: &[Vec<String>], labels: &[String]) -> Vec<Vec<Vec<String>>> {
    let slots: Vec<(usize, usize)> = rotations
        .iter()
        .enumerate()
        .flat_map(|(vi, r)| (0..r.len().max(1)).map(move |p| (vi, p)))
        .collect();
    let mut choices: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in labels {
        choices = choices
            .into_iter()
            .flat_map(|c| {
                let lo = c.last().copied().unwrap_or(0);
                (lo..slots.len()).map(move |s| {
                    let mut n = c.clone();
                    n.push(s);
                    n
                })
            })
            .collect();
    }
    choices
        .into_iter()
        .map(|c| {
            let mut rots = rotations.to_vec();
            // Insert back to front so earlier positions stay valid.
            for (label, &s) in labels.iter().zip(&c).rev() {
                let (vi, pos) = slots[s];
                rots[vi].insert(pos, label.clone());
            }
            rots
        })
        .collect()
}

fn build(name: &str, ids: &[&str], rotations: &[Vec<String>], edges: &[(String, bool)], marks: &[(String, Mark)]) -> HalfEdgedRibbonGraph {
    let mut raw = RawGraph::new(name);
    for (id, rot) in ids.iter().zip(rotations) {
        let refs: Vec<&str> = rot.iter().map(String::as_str).collect();
        raw = raw.vertex(id, &refs);
    }
    for (id, tw) in edges {
        raw = raw.edge(id, *tw);
    }
    for (l, m) in marks {
        raw = raw.mark(l, *m);
    }
    raw.build().expect("generated graph is valid")
}

fn twist_choices(ne: usize) -> Vec<Vec<bool>> {
    (0..1u32 << ne).map(|m| (0..ne).map(|i| m >> i & 1 == 1).collect()).collect()
}

/// Ends incident to each vertex for a given edge list.
fn incidence(nv: usize, edges: &[(usize, usize)], ids: &[&str]) -> Vec<Vec<String>> {
    let mut at = vec![Vec::new(); nv];
    for (i, &(x, y)) in edges.iter().enumerate() {
        at[x].push(format!("{}.1", ids[i]));
        at[y].push(format!("{}.2", ids[i]));
    }
    at
}

/// All templates: every shape, rotation system, placement of up to two
/// half-ribbons and twist assignment.
pub fn template_family() -> Vec<HalfEdgedRibbonGraph> {
    let mut out = Vec::new();
    for &(shape, nv, edges) in TEMPLATE_SHAPES {
        let at = incidence(nv, edges, &EDGE_IDS);
        let rotation_systems = cartesian(&at.iter().map(|ends| cyclic_orders(ends)).collect::<Vec<_>>());
        for (ri, rots) in rotation_systems.iter().enumerate() {
            for hrs in 0..=2 {
                let labels: Vec<String> = (1..=hrs).map(|i| format!("h{i}")).collect();
                for (hi, placed) in insert_half_ribbons(rots, &labels).iter().enumerate() {
                    for twists in twist_choices(edges.len()) {
                        let tw: String = twists.iter().map(|&t| if t { '1' } else { '0' }).collect();
                        let name = format!("{shape}_r{ri}_h{hrs}p{hi}_t{tw}");
                        let e: Vec<(String, bool)> = EDGE_IDS.iter().zip(&twists).map(|(i, &t)| (i.to_string(), t)).collect();
                        out.push(build(&name, &VERTEX_IDS[..nv], placed, &e, &[]));
                    }
                }
            }
        }
    }
    out
}

/// Piece shapes on `u` (index 0), `w` (1) and optionally `v` (2).
const PIECE_SHAPES: &[Shape] = &[
    ("bridge", 2, &[(0, 1)]),
    ("double", 2, &[(0, 1), (0, 1)]),
    ("path", 3, &[(0, 2), (2, 1)]),
    ("fork", 3, &[(0, 1), (0, 2)]),
    ("split", 2, &[]),
    ("pendant", 3, &[(0, 2)]),
];

const PIECE_EDGE_IDS: [&str; 2] = ["p", "q"];
const PIECE_VERTEX_IDS: [&str; 3] = ["u", "w", "v"];

/// All pieces with at most two edges and at most one unmarked half-ribbon.
pub fn piece_family() -> Vec<Piece> {
    let mut out = Vec::new();
    for &(shape, nv, edges) in PIECE_SHAPES {
        let mut at = incidence(nv, edges, &PIECE_EDGE_IDS);
        at[0].insert(0, "hm".into());
        at[1].insert(0, "hn".into());
        let rotation_systems = cartesian(&at.iter().map(|ends| cyclic_orders(ends)).collect::<Vec<_>>());
        for (ri, rots) in rotation_systems.iter().enumerate() {
            for extra in 0..=1 {
                let labels: Vec<String> = (0..extra).map(|_| "h1".to_string()).collect();
                for (hi, placed) in insert_half_ribbons(rots, &labels).iter().enumerate() {
                    for twists in twist_choices(edges.len()) {
                        let tw: String = twists.iter().map(|&t| if t { '1' } else { '0' }).collect();
                        let name = format!("{shape}_r{ri}_x{extra}p{hi}_t{tw}");
                        let e: Vec<(String, bool)> =
                            PIECE_EDGE_IDS.iter().zip(&twists).map(|(i, &t)| (i.to_string(), t)).collect();
                        let marks = [("hm".to_string(), Mark::M), ("hn".to_string(), Mark::N)];
                        let g = build(&name, &PIECE_VERTEX_IDS[..nv], placed, &e, &marks);
                        out.push(Piece::from_graph(g).expect("generated piece is valid"));
                    }
                }
            }
        }
    }
    out
}

/// Pieces meeting the arc conditions of the per-edge expansion.
pub fn screened_pieces() -> Vec<Piece> {
    piece_family()
        .into_iter()
        .filter(|p| analyze_piece(p).map(|st| screen(&st).passes()).unwrap_or(false))
        .collect()
}

/// Pieces whose every state sits like the digon representative of its class.
pub fn conforming_pieces() -> Vec<Piece> {
    let reps = representative_profiles();
    piece_family()
        .into_iter()
        .filter(|p| {
            analyze_piece(p).is_ok_and(|st| st.iter().all(|s| reps[&s.class] == s.profile))
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub decomposition: Decomposition,
}

fn instance(template: &HalfEdgedRibbonGraph, slots: Vec<(usize, bool)>, pieces: &[Piece]) -> Instance {
    let name = format!(
        "{}[{}]",
        template.name,
        slots
            .iter()
            .map(|(i, f)| format!("{}{}", pieces[*i].graph.name, if *f { "~" } else { "" }))
            .collect::<Vec<_>>()
            .join(",")
    );
    let slots = slots
        .into_iter()
        .map(|(i, flip)| PieceSlot {
            piece: pieces[i].clone(),
            flip,
        })
        .collect();
    Instance {
        name,
        decomposition: Decomposition::new(template.clone(), slots).expect("loop-free template"),
    }
}

/// Tensor products of every template with one screened piece (cycling
/// through the pieces), plus `mixed` seeded assignments with distinct pieces
/// and manifest flips per edge. Flips are only drawn where the flipped piece
/// still screens.
pub fn expansion_corpus(seed: u64, mixed: usize) -> Vec<Instance> {
    let pieces = screened_pieces();
    let flippable = flip_keeps(&pieces, |p| analyze_piece(p).is_ok_and(|st| screen(&st).passes()));
    corpus_over(&template_family(), 1, &pieces, &flippable, seed, mixed)
}

/// Decompositions whose pieces all conform to the class representatives:
/// tensor products over every `stride`-th template plus `mixed` seeded ones.
pub fn conforming_corpus(seed: u64, stride: usize, mixed: usize) -> Vec<Instance> {
    let reps = representative_profiles();
    let pieces = conforming_pieces();
    let flippable = flip_keeps(&pieces, |p| {
        analyze_piece(p).is_ok_and(|st| st.iter().all(|s| reps[&s.class] == s.profile))
    });
    corpus_over(&template_family(), stride, &pieces, &flippable, seed, mixed)
}

fn flip_keeps(pieces: &[Piece], keep: impl Fn(&Piece) -> bool) -> Vec<bool> {
    pieces
        .iter()
        .map(|p| p.flipped_at_w().is_ok_and(|f| keep(&f)))
        .collect()
}

fn corpus_over(
    templates: &[HalfEdgedRibbonGraph],
    stride: usize,
    pieces: &[Piece],
    flippable: &[bool],
    seed: u64,
    mixed: usize,
) -> Vec<Instance> {
    if pieces.is_empty() {
        return Vec::new();
    }
    let mut out: Vec<Instance> = templates
        .iter()
        .enumerate()
        .step_by(stride.max(1))
        .map(|(i, t)| instance(t, vec![(i % pieces.len(), false); t.num_edges()], pieces))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..mixed {
        let t = templates.choose(&mut rng).expect("non-empty family");
        let slots = (0..t.num_edges())
            .map(|_| {
                let i = rng.gen_range(0..pieces.len());
                let flip = rng.gen_bool(0.5) && flippable[i];
                (i, flip)
            })
            .collect();
        out.push(instance(t, slots, pieces));
    }
    out
}

/// Instances whose pieces, as glued, conform; manifest flips can break it.
pub fn is_conforming(p: &Prepared) -> bool {
    nonconforming_states(p).is_empty()
}

/// Prepares every instance, failing on the first error.
pub fn prepare_all(instances: &[Instance]) -> Result<Vec<Prepared>, DecompError> {
    use rayon::prelude::*;
    instances.par_iter().map(|i| Prepared::new(&i.decomposition)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_ribbon_placements_keep_order() {
        let rots = vec![vec!["a.1".to_string()], vec!["a.2".to_string()]];
        let one = insert_half_ribbons(&rots, &["h1".into()]);
        assert_eq!(one.len(), 2);
        let two = insert_half_ribbons(&rots, &["h1".into(), "h2".into()]);
        // Same vertex (h2 after h1) twice, or h1 at u and h2 at w.
        assert_eq!(two.len(), 3);
    }

    #[test]
    fn families_are_nonempty_and_valid() {
        let t = template_family();
        assert!(t.iter().all(|g| g.num_edges() <= 3 && g.num_half_ribbons() <= 2));
        let p = piece_family();
        assert!(p.iter().all(|x| x.graph.num_edges() <= 2));
        assert!(!screened_pieces().is_empty());
        assert!(!conforming_pieces().is_empty());
    }
}
