//! Generating polynomials of a piece's states, grouped by how the marked
//! half-ribbons sit.

use serde::Serialize;

use super::analysis::{BoundaryClass, Connectivity, PieceState};
use crate::poly::{IntTermAccumulator, Monomial, MultiPoly};

const VARS: [&str; 5] = ["a", "b", "c", "d", "l"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EtaTable {
    /// Connected states: `a^{k-1} b^e c^F d^{C-1} l^{f-2}`.
    pub eta1: MultiPoly,
    /// Disconnected states: `a^{k-2} b^e c^F d^{C-2} l^{f-4}`.
    pub eta2: MultiPoly,
    /// `eta1` split by insertion type 0, 1, 2.
    pub eta1_by_theta: [MultiPoly; 3],
    /// Connected states whose insertion change has no recognised type.
    pub eta1_untyped: MultiPoly,
    /// Same circle, `l := 1`: `a^{k-1} b^e c^F d^{C-1}`, by insertion type.
    pub bar1: [MultiPoly; 3],
    /// Same component, different circles, `l := 1`: `a^{k-1} b^e c^F d^{C-2}`.
    pub ddot1: [MultiPoly; 2],
    pub ddot1_untyped: MultiPoly,
    /// Different components, `l := 1`: `a^{k-2} b^e c^F d^{C-2}`.
    pub ddot2: MultiPoly,
}

impl EtaTable {
    pub fn bar1_total(&self) -> MultiPoly {
        self.bar1.iter().cloned().sum()
    }

    pub fn ddot1_total(&self) -> MultiPoly {
        self.ddot1.iter().cloned().sum::<MultiPoly>() + self.ddot1_untyped.clone()
    }
}

fn acc() -> IntTermAccumulator {
    IntTermAccumulator::new(&VARS)
}

pub fn eta_sums(states: &[PieceState]) -> EtaTable {
    let (mut eta1, mut eta2, mut untyped, mut ddot1_untyped, mut ddot2) = (acc(), acc(), acc(), acc(), acc());
    let mut by_theta = [acc(), acc(), acc()];
    let mut bar1 = [acc(), acc(), acc()];
    let mut ddot1 = [acc(), acc()];
    for s in states {
        let st = &s.stats;
        let (k, e, fi, c, f) = (st.k as i64, st.e as i64, st.f_int as i64, st.c_bd as i64, st.f as i64);
        match s.connectivity {
            Connectivity::S1 => {
                let exps = vec![k - 1, e, fi, c - 1, f - 2];
                eta1.push(exps.clone());
                match s.theta {
                    Some(t) => by_theta[t as usize].push(exps),
                    None => untyped.push(exps),
                }
            }
            Connectivity::S2 => eta2.push(vec![k - 2, e, fi, c - 2, f - 4]),
        }
        match (s.class, s.theta) {
            (BoundaryClass::S1Bar, Some(t)) => bar1[t as usize].push(vec![k - 1, e, fi, c - 1, 0]),
            (BoundaryClass::S1Bar, None) => {}
            (BoundaryClass::S1Ddot, Some(t)) => ddot1[t as usize].push(vec![k - 1, e, fi, c - 2, 0]),
            (BoundaryClass::S1Ddot, None) => ddot1_untyped.push(vec![k - 1, e, fi, c - 2, 0]),
            (BoundaryClass::S2Ddot, _) => ddot2.push(vec![k - 2, e, fi, c - 2, 0]),
        }
    }
    let [t0, t1, t2] = by_theta;
    let [b0, b1, b2] = bar1;
    let [d0, d1] = ddot1;
    EtaTable {
        eta1: eta1.into_poly(),
        eta2: eta2.into_poly(),
        eta1_by_theta: [t0.into_poly(), t1.into_poly(), t2.into_poly()],
        eta1_untyped: untyped.into_poly(),
        bar1: [b0.into_poly(), b1.into_poly(), b2.into_poly()],
        ddot1: [d0.into_poly(), d1.into_poly()],
        ddot1_untyped: ddot1_untyped.into_poly(),
        ddot2: ddot2.into_poly(),
    }
}

/// `eta1` with `κ` units moved from `c` to `d` in every monomial.
pub fn frak_f(eta1: &MultiPoly, kappa: i64) -> MultiPoly {
    if kappa == 0 {
        return eta1.clone();
    }
    eta1.mul_monomial(&Monomial::from_ints(&[("c", -kappa), ("d", kappa)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::analysis::analyze_piece;
    use crate::ops::Piece;

    #[test]
    fn identity_piece_sums() {
        let t = eta_sums(&analyze_piece(&Piece::identity()).unwrap());
        assert_eq!(t.eta1, MultiPoly::var("b"));
        assert_eq!(t.eta2, MultiPoly::one());
        assert_eq!(t.eta1_by_theta[2], MultiPoly::var("b"));
        assert!(t.eta1_untyped.is_zero());
        assert_eq!(t.bar1_total(), MultiPoly::var("b"));
        assert!(t.ddot1_total().is_zero());
        assert_eq!(t.ddot2, MultiPoly::one());
    }

    #[test]
    fn transfer_keeps_cd_degree() {
        let p = MultiPoly::monomial(&[("c", 2), ("b", 1)]);
        let q = frak_f(&p, 1);
        assert_eq!(q, MultiPoly::monomial(&[("c", 1), ("d", 1), ("b", 1)]));
    }
}
