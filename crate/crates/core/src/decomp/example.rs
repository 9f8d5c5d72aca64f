//! A fixed worked example: one template state's incidence matrices, and the
//! expansion of a two-edge combination with explicit per-edge sums.

use serde::Serialize;

use super::matrices::IncidenceMatrices;
use crate::poly::{parse_poly, MultiPoly};

/// 3 circles × 8 points.
pub fn example_epsilon() -> Vec<Vec<i64>> {
    vec![
        vec![1, 0, 1, 0, 1, 0, 0, 1],
        vec![0, 1, 0, 1, 0, 0, 0, 0],
        vec![0, 0, 0, 0, 0, 1, 1, 0],
    ]
}

/// 8 points × 4 edges.
pub fn example_sigma() -> Vec<Vec<i64>> {
    let mut s = vec![vec![0; 4]; 8];
    s[0][0] = 1;
    s[1][0] = 1;
    s[4][3] = 1;
    s
}

pub fn expected_sigma_reduced() -> Vec<Vec<i64>> {
    vec![vec![1, 0, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 0]]
}

pub const EXPECTED_TAU: i64 = 3;

#[derive(Clone, Debug, Serialize)]
pub struct MatrixExampleReport {
    pub matrices: IncidenceMatrices,
    pub rank_matches: bool,
    pub reduced_is_identity: bool,
    pub sigma_reduced_matches: bool,
    pub tau_rank_matches: bool,
    pub tau_sum_matches: bool,
}

impl MatrixExampleReport {
    pub fn holds(&self) -> bool {
        self.rank_matches
            && self.reduced_is_identity
            && self.sigma_reduced_matches
            && self.tau_rank_matches
            && self.tau_sum_matches
    }
}

pub fn matrix_example() -> MatrixExampleReport {
    let m = IncidenceMatrices::from_parts(example_epsilon(), example_sigma());
    let n = m.epsilon_reduced.len();
    let reduced_is_identity = m.epsilon_reduced.iter().enumerate().all(|(i, row)| {
        row.len() == n && row.iter().enumerate().all(|(j, &x)| x == i64::from(i == j))
    });
    MatrixExampleReport {
        rank_matches: m.tau_rank == 3,
        reduced_is_identity,
        sigma_reduced_matches: m.sigma_reduced == expected_sigma_reduced(),
        tau_rank_matches: m.tau_rank as i64 == EXPECTED_TAU,
        tau_sum_matches: m.tau_sum == EXPECTED_TAU,
        matrices: m,
    }
}

fn p(s: &str) -> MultiPoly {
    parse_poly(s).expect("fixed polynomial literal")
}

/// The combination with per-edge sums substituted, as four summands.
pub fn substituted_combination() -> MultiPoly {
    let first = p("b^2*c + 2*b*l^2");
    let second = p("2*b + a*d*l^2");
    let bb = p("b^2");
    &(&p("a*d*l") * &first) * &bb
        + &(&p("a^2*d^2*l^3") * &first) * &second
        + p("a^2*b^2*d^2*l^2")
        + &p("a^3*d^3*l^5") * &second
}

pub fn expected_expansion() -> MultiPoly {
    p("a*b^4*c*d*l + 2*a*b^3*d*l^3 + 2*a^2*b^3*c*d^2*l^3 + a^3*b^2*c*d^3*l^5 + 4*a^2*b^2*d^2*l^5 \
       + 2*a^3*b*d^3*l^7 + a^2*b^2*d^2*l^2 + 2*a^3*b*d^3*l^5 + a^4*d^4*l^7")
}

/// Per-edge sums `(η¹, η²)` for the two edges.
pub fn example_edge_sums() -> [(MultiPoly, MultiPoly); 2] {
    [
        (p("b^2*c + 2*b*l^2"), p("l^2")),
        (p("b^2"), p("2*b + a*d*l^2")),
    ]
}

/// `adl η¹η¹ + a²d²l³ η¹η² + a²d²l³ η²η¹ + a³d³l⁵ η²η²`.
pub fn combination_shape(sums: &[(MultiPoly, MultiPoly); 2]) -> MultiPoly {
    let [(f1, f2), (g1, g2)] = sums;
    &(&p("a*d*l") * f1) * g1
        + &(&p("a^2*d^2*l^3") * f1) * g2
        + &(&p("a^2*d^2*l^3") * f2) * g1
        + &(&p("a^3*d^3*l^5") * f2) * g2
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpansionExampleReport {
    pub expansion: MultiPoly,
    pub expected: MultiPoly,
    pub holds: bool,
    /// Combination shape with the per-edge sums, minus the expected expansion.
    pub shape_residual: MultiPoly,
}

pub fn expansion_example() -> ExpansionExampleReport {
    let expansion = substituted_combination();
    let expected = expected_expansion();
    ExpansionExampleReport {
        holds: expansion == expected,
        shape_residual: &combination_shape(&example_edge_sums()) - &expected,
        expansion,
        expected,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices_reduce_to_identity() {
        let r = matrix_example();
        assert_eq!(r.matrices.tau_rank, 3);
        assert_eq!(r.matrices.kept, vec![0, 1, 5]);
        assert!(r.reduced_is_identity && r.sigma_reduced_matches);
        assert_eq!(r.matrices.tau_sum, 2);
        assert!(!r.holds());
    }

    #[test]
    fn expansion_has_nine_terms() {
        let r = expansion_example();
        assert!(r.holds);
        assert_eq!(r.expansion.len(), 9);
    }

    #[test]
    fn shape_residual_is_the_third_summand() {
        let r = expansion_example();
        let a = p("a^2*b^2*d^2*l^5 - a^2*b^2*d^2*l^2");
        let b = p("2*a^3*b*d^3*l^7 + a^4*d^4*l^9 - 2*a^3*b*d^3*l^5 - a^4*d^4*l^7");
        assert_eq!(r.shape_residual, &a + &b);
    }
}
