//! Factored form of the assembled polynomial when no template state needs
//! the face correction, with the per-piece identities it rests on.

use std::collections::BTreeMap;

use serde::Serialize;

use super::expansion::adl2;
use super::{DecompError, EtaTable, Prepared};
use crate::invariants::{herg_z, EdgeWeights};
use crate::ops::Piece;
use crate::poly::{Monomial, MultiPoly};

fn v(name: &str) -> MultiPoly {
    MultiPoly::var(name)
}

fn m(pairs: &[(&str, i64)]) -> MultiPoly {
    MultiPoly::monomial(pairs)
}

/// Weight variable carried by the rejoining edge of the closure.
pub const CLOSURE_WEIGHT: &str = "x";

#[derive(Clone, Debug, Serialize)]
pub struct PieceIdentities {
    /// `f = a d l^2 η¹`.
    pub f: MultiPoly,
    /// `g = a d l^2 η²`.
    pub g: MultiPoly,
    pub z_piece: MultiPoly,
    pub z_closure: MultiPoly,
    pub z_contracted: MultiPoly,
    /// `a d l^2 (η¹ + a d l^2 η²) = Z(H)`.
    pub piece_identity: bool,
    /// `Z(A) = Z(H) + x Z(A/e)`.
    pub closure_split: bool,
    /// `l^-2 c f + g + a d (d-c) 𝔉⁰ + a c (c-d) 𝔉² = Z(A/e)`.
    pub contracted_identity: bool,
    /// `c f + g + a d l^2 (d-c) 𝔉⁰ + a c l^2 (c-d) 𝔉² - Z(A/e)` as printed.
    pub printed_residual: MultiPoly,
    /// `a l^2 (d^2 𝔉⁰ + c d 𝔉¹ + 𝔉² + d η²) - Z(A/e)` as printed.
    pub printed_intermediate_residual: MultiPoly,
    /// All connected states received an insertion type.
    pub typed: bool,
}

impl PieceIdentities {
    pub fn holds(&self) -> bool {
        self.piece_identity && self.closure_split && self.contracted_identity && self.typed
    }
}

pub fn piece_identities(piece: &Piece, t: &EtaTable) -> Result<PieceIdentities, DecompError> {
    let common = EdgeWeights::common();
    let z_piece = herg_z(&piece.graph, &common)?;
    let closure = piece.closure()?;
    let closing = closure
        .edges
        .iter()
        .find(|e| piece.graph.edge_index(&e.id).is_err())
        .map(|e| e.id.clone())
        .expect("closure adds an edge");
    let named = EdgeWeights::Named {
        default: "b".into(),
        by_edge: BTreeMap::from([(closing, CLOSURE_WEIGHT.to_string())]),
    };
    let z_closure = herg_z(&closure, &named)?;
    let z_contracted = herg_z(&piece.closure_contracted()?, &common)?;
    let f = t.eta1.mul_monomial(&adl2(1));
    let g = t.eta2.mul_monomial(&adl2(1));
    let [f0, f1, f2] = &t.eta1_by_theta;
    let (c, d) = (v("c"), v("d"));
    let d_minus_c = &d - &c;
    let c_minus_d = &c - &d;

    let piece_identity = (&t.eta1 + &t.eta2.mul_monomial(&adl2(1))).mul_monomial(&adl2(1)) == z_piece;
    let closure_split = z_closure == &z_piece + &(&v(CLOSURE_WEIGHT) * &z_contracted);
    let contracted = f.mul_monomial(&Monomial::from_ints(&[("c", 1), ("l", -2)]))
        + g.clone()
        + &(&m(&[("a", 1), ("d", 1)]) * &d_minus_c) * f0
        + &(&m(&[("a", 1), ("c", 1)]) * &c_minus_d) * f2;
    let printed = &f * &c
        + g.clone()
        + &(&m(&[("a", 1), ("d", 1), ("l", 2)]) * &d_minus_c) * f0
        + &(&m(&[("a", 1), ("c", 1), ("l", 2)]) * &c_minus_d) * f2;
    let intermediate = &m(&[("a", 1), ("l", 2)])
        * &(f0.mul_monomial(&Monomial::from_ints(&[("d", 2)]))
            + f1.mul_monomial(&Monomial::from_ints(&[("c", 1), ("d", 1)]))
            + f2.clone()
            + t.eta2.mul_monomial(&Monomial::var("d")));
    Ok(PieceIdentities {
        contracted_identity: contracted == z_contracted,
        printed_residual: &printed - &z_contracted,
        printed_intermediate_residual: &intermediate - &z_contracted,
        typed: t.eta1_untyped.is_zero(),
        piece_identity,
        closure_split,
        f,
        g,
        z_piece,
        z_closure,
        z_contracted,
    })
}

/// Determinant of the linear system for `(f, g)`.
#[derive(Clone, Debug, Serialize)]
pub struct SystemDeterminant {
    pub as_printed: MultiPoly,
    pub corrected: MultiPoly,
    /// A monomial determinant would make the solution a Laurent polynomial.
    pub laurent_solvable: bool,
}

pub fn system_determinant() -> SystemDeterminant {
    let as_printed = MultiPoly::one() - m(&[("a", 1), ("c", 1), ("d", 1), ("l", 2)]);
    let corrected = MultiPoly::one() - m(&[("a", 1), ("c", 1), ("d", 1)]);
    SystemDeterminant {
        laurent_solvable: as_printed.as_monomial().is_some() && corrected.as_monomial().is_some(),
        as_printed,
        corrected,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    /// Every template state has a vanishing correction.
    pub applicable: bool,
    pub pieces: Vec<PieceIdentities>,
    /// Factored form against the direct sum; `None` when not applicable.
    pub factored_holds: Option<bool>,
    pub determinant: SystemDeterminant,
}

impl TheoremReport {
    pub fn holds(&self) -> bool {
        self.applicable && self.factored_holds == Some(true) && self.pieces.iter().all(PieceIdentities::holds)
    }
}

/// `(a d l^2)^{-e(G)} Z_G(a, {b_e -> f_e/g_e}, c, d, l) ∏ g_e`, denominators
/// cleared.
pub fn factored_form(p: &Prepared, pieces: &[PieceIdentities]) -> Result<MultiPoly, DecompError> {
    let t = &p.decomposition.template;
    let weights = EdgeWeights::per_edge();
    let z = herg_z(t, &weights)?;
    let EdgeWeights::PerEdge(prefix) = &weights else {
        unreachable!()
    };
    let map: BTreeMap<String, (MultiPoly, MultiPoly)> = t
        .edges
        .iter()
        .zip(pieces)
        .map(|(e, pi)| (format!("{prefix}{}", e.id), (pi.f.clone(), pi.g.clone())))
        .collect();
    Ok(z.substitute_multilinear(&map)?.mul_monomial(&adl2(-(t.num_edges() as i64))))
}

pub fn verify_theorem(p: &Prepared) -> Result<TheoremReport, DecompError> {
    let pieces = p
        .pieces
        .iter()
        .zip(&p.tables)
        .map(|(pc, t)| piece_identities(pc, t))
        .collect::<Result<Vec<_>, _>>()?;
    let applicable = p.correction_free();
    let factored_holds = if applicable {
        let direct = herg_z(&p.hat, &EdgeWeights::common())?;
        Some(factored_form(p, &pieces)? == direct)
    } else {
        None
    };
    Ok(TheoremReport {
        applicable,
        pieces,
        factored_holds,
        determinant: system_determinant(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{analyze_piece, eta_sums};
    use crate::ops::Decomposition;
    use crate::ribbon::parse_graph;

    #[test]
    fn identity_piece_identities() {
        let p = Piece::identity();
        let t = eta_sums(&analyze_piece(&p).unwrap());
        let r = piece_identities(&p, &t).unwrap();
        assert!(r.holds());
        assert_eq!(r.f, m(&[("a", 1), ("b", 1), ("d", 1), ("l", 2)]));
        assert_eq!(r.z_contracted, m(&[("a", 1), ("d", 1), ("l", 2)]) + m(&[("a", 1), ("b", 1), ("c", 2)]));
        let expected = m(&[("a", 1), ("b", 1), ("c", 2), ("l", 2)]) - m(&[("a", 1), ("b", 1), ("c", 2)]);
        assert_eq!(r.printed_residual, expected);
    }

    #[test]
    fn factored_form_on_identity_decomposition() {
        let t = parse_graph("graph t\nvertex u: a.1 h b.1\nvertex w: b.2 a.2\nvertex x: \nedge a: twist=0\nedge b: twist=1\n").unwrap();
        let prep = Prepared::new(&Decomposition::uniform(t, &Piece::identity()).unwrap()).unwrap();
        let r = verify_theorem(&prep).unwrap();
        assert!(r.applicable);
        assert!(r.holds());
        assert!(!r.determinant.laurent_solvable);
    }
}
