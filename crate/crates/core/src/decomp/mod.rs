//! Two-decompositions: per-piece state sums, incidence matrices of the
//! template states, and exact checks of the expansion identities.

pub mod analysis;
pub mod corpus;
pub mod eta;
pub mod example;
pub mod expansion;
pub mod general;
pub mod matrices;
pub mod theorem;

use serde::Serialize;

use crate::invariants::InvariantError;
use crate::ops::{assemble_hat, Decomposition, OpError, Piece};
use crate::poly::PolyError;
use crate::ribbon::faces::SideGraph;
use crate::ribbon::states::{check_limit, mask_to_retained};
use crate::ribbon::stats::state_stats;
use crate::ribbon::{GraphStats, HalfEdgedRibbonGraph, LimitExceeded};

pub use analysis::{analyze_piece, screen, BoundaryClass, Connectivity, MarkProfile, PieceState, Screening};
pub use eta::{eta_sums, frak_f, EtaTable};
pub use matrices::{build_matrices, IncidenceMatrices};

#[derive(Debug, thiserror::Error)]
pub enum DecompError {
    #[error(transparent)]
    Op(#[from] OpError),
    #[error(transparent)]
    Limit(#[from] LimitExceeded),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl From<analysis::PieceAnalysisError> for DecompError {
    fn from(e: analysis::PieceAnalysisError) -> Self {
        match e {
            analysis::PieceAnalysisError::Limit(l) => DecompError::Limit(l),
            analysis::PieceAnalysisError::Op(o) => DecompError::Op(o),
        }
    }
}

/// One state of the template with its statistics and matrices.
#[derive(Clone, Debug, Serialize)]
pub struct TemplateState {
    pub mask: u64,
    pub stats: GraphStats,
    pub matrices: IncidenceMatrices,
}

/// Everything the checks need about one decomposition, computed once.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub decomposition: Decomposition,
    /// Pieces as glued, manifest flips applied.
    pub pieces: Vec<Piece>,
    pub piece_states: Vec<Vec<PieceState>>,
    pub tables: Vec<EtaTable>,
    pub screens: Vec<Screening>,
    pub template_states: Vec<TemplateState>,
    pub hat: HalfEdgedRibbonGraph,
}

impl Prepared {
    pub fn new(d: &Decomposition) -> Result<Self, DecompError> {
        let hat = assemble_hat(d)?;
        check_limit(hat.num_edges())?;
        let mut pieces = Vec::new();
        let mut piece_states = Vec::new();
        let mut tables = Vec::new();
        let mut screens = Vec::new();
        for i in 0..d.slots.len() {
            let p = d.effective_piece(i)?;
            let st = analyze_piece(&p)?;
            tables.push(eta_sums(&st));
            screens.push(screen(&st));
            piece_states.push(st);
            pieces.push(p);
        }
        let patterns: Vec<_> = screens.iter().map(|s| s.arc_pattern).collect();
        let t = &d.template;
        let sg = SideGraph::new(t);
        let ne = t.num_edges();
        let template_states = (0..1u64 << ne)
            .map(|mask| TemplateState {
                mask,
                stats: state_stats(&sg, &mask_to_retained(mask, ne)),
                matrices: build_matrices(&sg, mask, &patterns),
            })
            .collect();
        Ok(Prepared {
            decomposition: d.clone(),
            pieces,
            piece_states,
            tables,
            screens,
            template_states,
            hat,
        })
    }

    /// All pieces satisfy the arc conditions of the per-edge expansion.
    pub fn screened(&self) -> bool {
        self.screens.iter().all(Screening::passes)
    }

    /// No template state needs the face correction.
    pub fn correction_free(&self) -> bool {
        self.template_states.iter().all(|s| s.matrices.correction_free())
    }

    /// For every edge of the assembled graph, its slot and index in that
    /// slot's piece.
    pub fn hat_edge_origin(&self) -> Vec<(usize, usize)> {
        let mut out = vec![(usize::MAX, usize::MAX); self.hat.num_edges()];
        for (i, e) in self.decomposition.template.edges.iter().enumerate() {
            for (j, pe) in self.pieces[i].graph.edges.iter().enumerate() {
                let h = self
                    .hat
                    .edge_index(&format!("{}:{}", e.id, pe.id))
                    .expect("glued edge present");
                out[h] = (i, j);
            }
        }
        out
    }
}
