//! Per-state description of a piece: where the marked half-ribbons sit
//! relative to components and boundary circles, and what inserting the
//! reconnecting edge does.

use serde::Serialize;

use crate::ops::{OpError, Piece};
use crate::ribbon::faces::{node, node_end, Side, SideGraph};
use crate::ribbon::states::{check_limit, mask_to_retained};
use crate::ribbon::stats::{components, state_stats};
use crate::ribbon::{GraphStats, HalfEdgedRibbonGraph, LimitExceeded};

/// Connectivity class of the marked vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Connectivity {
    /// `u_e` and `w_e` in one component.
    S1,
    S2,
}

/// Refined class using boundary circles of the marked half-ribbons.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BoundaryClass {
    /// Same component, same boundary circle.
    S1Bar,
    /// Same component, different boundary circles.
    S1Ddot,
    /// Different components.
    S2Ddot,
}

/// Shape of the boundary around the two marks in one state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MarkProfile {
    pub same_component: bool,
    pub same_circle: bool,
    /// Walking from `m` on side B, `n` is entered on side A.
    pub aligned: bool,
    /// Another free segment lies on the walk from `m` to `n`.
    pub arc1_open: bool,
    /// Another free segment lies on the walk from `n` back to `m`.
    pub arc2_open: bool,
    pub m_circle_shared: bool,
    pub n_circle_shared: bool,
}

/// Change of statistics when the reconnecting edge is inserted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct InsertionDelta {
    pub k: i64,
    pub f_int: i64,
    pub c_bd: i64,
    pub f: i64,
}

impl InsertionDelta {
    /// The insertion type for the class, when the change has one of the
    /// expected shapes.
    pub fn theta(&self, class: BoundaryClass) -> Option<u8> {
        if self.f != -2 {
            return None;
        }
        match class {
            BoundaryClass::S1Bar if self.k == 0 && (0..=2).contains(&self.f_int) && self.c_bd == 1 - self.f_int => {
                Some(self.f_int as u8)
            }
            BoundaryClass::S1Ddot if self.k == 0 && (0..=1).contains(&self.f_int) && self.c_bd == -1 - self.f_int => {
                Some(self.f_int as u8)
            }
            BoundaryClass::S2Ddot if self.k == -1 && self.f_int == 0 && self.c_bd == -1 => Some(0),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieceState {
    pub mask: u64,
    pub stats: GraphStats,
    pub connectivity: Connectivity,
    pub class: BoundaryClass,
    pub profile: MarkProfile,
    pub delta: InsertionDelta,
    pub theta: Option<u8>,
}

/// Free segments met while walking a boundary circle from `start`, as
/// `(half-ribbon end, side the walk arrives on)`. The walk ends with the
/// free segment that leads back to `start`.
pub fn free_segments_from(sg: &SideGraph<'_>, retained: &[bool], start: usize) -> Vec<(usize, Side)> {
    let mut out = Vec::new();
    let mut cur = start;
    loop {
        let c = sg.corner[cur];
        let nxt = sg.across(c, retained);
        let end = node_end(c);
        let free = match sg.g.end_edge[end] {
            Some(ei) => !retained[ei],
            None => true,
        };
        if free && nxt == (c ^ 1) {
            out.push((end, crate::ribbon::faces::node_side(c)));
        }
        if nxt == start {
            return out;
        }
        cur = nxt;
    }
}

pub fn mark_profile(
    g: &HalfEdgedRibbonGraph,
    sg: &SideGraph<'_>,
    retained: &[bool],
    (u, w): (usize, usize),
    (m, n): (usize, usize),
) -> MarkProfile {
    let mut uf = components(g, retained);
    let same_component = uf.find(u) == uf.find(w);
    let from_m = free_segments_from(sg, retained, node(m, Side::B));
    let pos_n = from_m.iter().position(|&(h, _)| h == n);
    let others = |segs: &[(usize, Side)]| segs.iter().any(|&(h, _)| h != m && h != n);
    let (same_circle, aligned, arc1_open, arc2_open, n_shared) = match pos_n {
        Some(p) => {
            let aligned = from_m[p].1 == Side::A;
            let arc1 = others(&from_m[..p]);
            let arc2 = others(&from_m[p + 1..]);
            (true, aligned, arc1, arc2, arc1 || arc2)
        }
        None => {
            let from_n = free_segments_from(sg, retained, node(n, Side::B));
            (false, false, false, false, others(&from_n))
        }
    };
    MarkProfile {
        same_component,
        same_circle,
        aligned,
        arc1_open,
        arc2_open,
        m_circle_shared: others(&from_m),
        n_circle_shared: n_shared,
    }
}

fn delta(a: &GraphStats, b: &GraphStats) -> InsertionDelta {
    InsertionDelta {
        k: b.k as i64 - a.k as i64,
        f_int: b.f_int as i64 - a.f_int as i64,
        c_bd: b.c_bd as i64 - a.c_bd as i64,
        f: b.f as i64 - a.f as i64,
    }
}

/// Every state of the piece, in bitmask order over the piece's edges.
pub fn analyze_piece(p: &Piece) -> Result<Vec<PieceState>, PieceAnalysisError> {
    let g = &p.graph;
    check_limit(g.num_edges() + 1)?;
    let closure = p.closure()?;
    let closing = closure
        .edges
        .iter()
        .position(|e| g.edge_index(&e.id).is_err())
        .expect("closure adds one edge");
    let to_closure: Vec<usize> = g
        .edges
        .iter()
        .map(|e| closure.edge_index(&e.id).expect("shared edge"))
        .collect();
    let sg = SideGraph::new(g);
    let sgc = SideGraph::new(&closure);
    let ne = g.num_edges();
    Ok((0..1u64 << ne)
        .map(|mask| {
            let retained = mask_to_retained(mask, ne);
            let stats = state_stats(&sg, &retained);
            let profile = mark_profile(g, &sg, &retained, (p.u, p.w), (p.m, p.n));
            let mut closed = vec![false; closure.num_edges()];
            for (i, &ci) in to_closure.iter().enumerate() {
                closed[ci] = retained[i];
            }
            closed[closing] = true;
            let cstats = state_stats(&sgc, &closed);
            let connectivity = if profile.same_component {
                Connectivity::S1
            } else {
                Connectivity::S2
            };
            let class = match (profile.same_component, profile.same_circle) {
                (true, true) => BoundaryClass::S1Bar,
                (true, false) => BoundaryClass::S1Ddot,
                (false, _) => BoundaryClass::S2Ddot,
            };
            let delta = delta(&stats, &cstats);
            PieceState {
                mask,
                stats,
                connectivity,
                class,
                profile,
                theta: delta.theta(class),
                delta,
            }
        })
        .collect())
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum PieceAnalysisError {
    #[error(transparent)]
    Limit(#[from] LimitExceeded),
    #[error(transparent)]
    Op(#[from] OpError),
}

/// Open/closed state of the two arcs, shared by all connected states.
pub type ArcPattern = (bool, bool);

/// Conditions under which the per-edge expansion with face corrections is
/// exact for a piece.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Screening {
    /// Connected states keep both marks on one circle, entered in the
    /// gluing orientation.
    pub aligned_arcs: bool,
    /// In disconnected states each mark shares its circle with another
    /// half-ribbon.
    pub shared_circles: bool,
    /// All connected states open the same arcs.
    pub uniform_arcs: bool,
    pub arc_pattern: Option<ArcPattern>,
}

impl Screening {
    pub fn passes(&self) -> bool {
        self.aligned_arcs && self.shared_circles && self.uniform_arcs
    }
}

pub fn screen(states: &[PieceState]) -> Screening {
    let connected: Vec<&PieceState> = states.iter().filter(|s| s.connectivity == Connectivity::S1).collect();
    let aligned_arcs = connected.iter().all(|s| s.profile.same_circle && s.profile.aligned);
    let shared_circles = states
        .iter()
        .filter(|s| s.connectivity == Connectivity::S2)
        .all(|s| s.profile.m_circle_shared && s.profile.n_circle_shared);
    let patterns: Vec<ArcPattern> = connected.iter().map(|s| (s.profile.arc1_open, s.profile.arc2_open)).collect();
    let uniform_arcs = patterns.windows(2).all(|w| w[0] == w[1]);
    Screening {
        aligned_arcs,
        shared_circles,
        uniform_arcs,
        arc_pattern: if uniform_arcs { patterns.first().copied() } else { None },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_piece_states() {
        let st = analyze_piece(&Piece::identity()).unwrap();
        assert_eq!(st.len(), 2);
        assert_eq!(st[0].connectivity, Connectivity::S2);
        assert_eq!(st[1].connectivity, Connectivity::S1);
        assert_eq!(st[1].class, BoundaryClass::S1Bar);
        assert_eq!(st[1].theta, Some(2));
        assert_eq!(st[0].theta, Some(0));
        let sc = screen(&st);
        assert!(sc.aligned_arcs && sc.uniform_arcs);
        assert_eq!(sc.arc_pattern, Some((false, false)));
        assert!(sc.passes());
    }

    #[test]
    fn flipped_identity_is_misaligned() {
        let st = analyze_piece(&Piece::identity().flipped_at_w().unwrap()).unwrap();
        assert!(!screen(&st).aligned_arcs);
    }
}
