//! Incidence of template-state internal circles with the arc endpoints of
//! the glued pieces, and the count of circles that open up.

use serde::Serialize;

use super::analysis::ArcPattern;
use crate::linalg::{independent_representatives, rank};
use crate::ribbon::faces::{node, Side, SideGraph};
use crate::ribbon::states::mask_to_retained;

/// Which of the two marked arcs a point sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Arc {
    First,
    Second,
}

/// Arc endpoints per template edge, in column order.
pub const POINT_NAMES: [&str; 4] = ["a", "a'", "b", "b'"];
const POINT_ARCS: [Arc; 4] = [Arc::First, Arc::Second, Arc::Second, Arc::First];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceMatrices {
    /// Rows: internal circles of the template state. Columns: points.
    pub epsilon: Vec<Vec<i64>>,
    /// Rows: points. Columns: template edges.
    pub sigma: Vec<Vec<i64>>,
    /// Point indices kept in the reduced matrices.
    pub kept: Vec<usize>,
    pub epsilon_reduced: Vec<Vec<i64>>,
    pub sigma_reduced: Vec<Vec<i64>>,
    pub tau_rank: usize,
    /// Per template edge, `Σ_f Σ_x ε̃(f,x) σ̃(x,e)`.
    pub kappa: Vec<i64>,
    pub tau_sum: i64,
}

impl IncidenceMatrices {
    /// Reduces given matrices and derives both counts.
    pub fn from_parts(epsilon: Vec<Vec<i64>>, sigma: Vec<Vec<i64>>) -> Self {
        let kept = independent_representatives(&epsilon);
        let epsilon_reduced: Vec<Vec<i64>> = epsilon.iter().map(|r| kept.iter().map(|&j| r[j]).collect()).collect();
        let sigma_reduced: Vec<Vec<i64>> = kept.iter().map(|&j| sigma[j].clone()).collect();
        let ne = sigma.first().map_or(0, Vec::len);
        let kappa: Vec<i64> = (0..ne)
            .map(|e| {
                epsilon_reduced
                    .iter()
                    .map(|row| row.iter().zip(&sigma_reduced).map(|(x, s)| x * s[e]).sum::<i64>())
                    .sum()
            })
            .collect();
        IncidenceMatrices {
            tau_rank: rank(&epsilon),
            tau_sum: kappa.iter().sum(),
            epsilon,
            sigma,
            kept,
            epsilon_reduced,
            sigma_reduced,
            kappa,
        }
    }

    /// The reduced product `ε̃σ̃` vanishes.
    pub fn correction_free(&self) -> bool {
        self.kappa.iter().all(|&k| k == 0)
    }
}

/// Matrices for template state `mask`, given the arc pattern of the piece
/// glued at each edge (`None` treats both arcs as closed).
pub fn build_matrices(sg: &SideGraph<'_>, mask: u64, patterns: &[Option<ArcPattern>]) -> IncidenceMatrices {
    let g = sg.g;
    let ne = g.num_edges();
    let retained = mask_to_retained(mask, ne);
    let internal: Vec<Vec<usize>> = sg
        .circles(&retained)
        .into_iter()
        .filter(|c| c.is_internal())
        .map(|c| c.nodes)
        .collect();
    let mut points = Vec::with_capacity(4 * ne);
    for (ei, e) in g.edges.iter().enumerate() {
        let (x, y) = e.ends;
        let (xa, xb) = (node(x, Side::A), node(x, Side::B));
        let (b, b_prime) = if retained[ei] {
            (sg.across(xb, &retained), sg.across(xa, &retained))
        } else {
            (node(y, Side::A), node(y, Side::B))
        };
        points.extend([xa, xb, b, b_prime]);
    }
    let open = |p: usize| -> bool {
        let ei = p / 4;
        retained[ei]
            && patterns[ei].is_some_and(|(first, second)| match POINT_ARCS[p % 4] {
                Arc::First => first,
                Arc::Second => second,
            })
    };
    let epsilon = internal
        .iter()
        .map(|nodes| {
            points
                .iter()
                .enumerate()
                .map(|(p, nd)| i64::from(open(p) && nodes.contains(nd)))
                .collect()
        })
        .collect();
    let sigma = (0..points.len())
        .map(|p| (0..ne).map(|e| i64::from(p / 4 == e && open(p))).collect())
        .collect();
    IncidenceMatrices::from_parts(epsilon, sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ribbon::parse_graph;

    #[test]
    fn state_without_internal_circles() {
        let g = parse_graph("graph g\nvertex u: a.1 h\nvertex w: a.2\nedge a: twist=0\n").unwrap();
        let m = build_matrices(&SideGraph::new(&g), 1, &[Some((true, true))]);
        assert!(m.epsilon.is_empty());
        assert_eq!((m.tau_rank, m.tau_sum), (0, 0));
    }

    #[test]
    fn digon_face_with_open_arcs() {
        let g = parse_graph("graph g\nvertex u: a.1 b.1\nvertex w: b.2 a.2\nedge a: twist=0\nedge b: twist=0\n").unwrap();
        let sg = SideGraph::new(&g);
        let closed = build_matrices(&sg, 3, &[None, None]);
        assert_eq!(closed.epsilon.len(), 2);
        assert_eq!(closed.tau_rank, 0);
        let open = build_matrices(&sg, 3, &[Some((true, true)), None]);
        assert_eq!(open.tau_rank, 2);
        assert!(!open.correction_free());
    }
}
