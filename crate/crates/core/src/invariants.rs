//! State-sum polynomial invariants of ribbon graphs and half-edged ribbon
//! graphs, and the substitution identities relating them.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::ops::{contract_edge, delete_edge, OpError};
use crate::poly::{rat, Monomial, MultiPoly, PolyError};
use crate::ribbon::faces::SideGraph;
use crate::ribbon::states::{check_limit, mask_to_retained};
use crate::ribbon::stats::state_stats;
use crate::ribbon::{stats, GraphStats, HalfEdgedRibbonGraph, LimitExceeded};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error(transparent)]
    Limit(#[from] LimitExceeded),
    #[error("graph has {0} half-ribbons; this invariant needs a closed ribbon graph")]
    NotClosed(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Op(#[from] OpError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum InvariantKind {
    /// Classical ribbon graph polynomial in x, y, z, w.
    RibbonR,
    /// Multivariate ribbon polynomial in a, b, c.
    RibbonZ,
    /// Half-edged ribbon polynomial in x, y, z, w, t.
    HergR,
    /// Multivariate half-edged polynomial in a, b, c, d, l.
    HergZ,
    Tutte,
}

/// How edge weights are named in the multivariate polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeWeights {
    /// Every edge carries the same variable.
    Common(String),
    /// Edge `e` carries `<prefix><e>`.
    PerEdge(String),
    /// Listed edges carry their own variable, the rest the default.
    Named {
        default: String,
        by_edge: BTreeMap<String, String>,
    },
}

impl EdgeWeights {
    pub fn common() -> Self {
        EdgeWeights::Common("b".into())
    }

    pub fn per_edge() -> Self {
        EdgeWeights::PerEdge("b_".into())
    }

    fn var_of(&self, id: &str) -> String {
        match self {
            EdgeWeights::Common(v) => v.clone(),
            EdgeWeights::PerEdge(p) => format!("{p}{id}"),
            EdgeWeights::Named { default, by_edge } => by_edge.get(id).unwrap_or(default).clone(),
        }
    }

    /// Distinct variable names and, per edge, the index of its variable.
    pub fn slots(&self, g: &HalfEdgedRibbonGraph) -> (Vec<String>, Vec<usize>) {
        let per_edge: Vec<String> = g.edges.iter().map(|e| self.var_of(&e.id)).collect();
        let mut names = per_edge.clone();
        names.sort();
        names.dedup();
        if names.is_empty() {
            if let EdgeWeights::Common(v) = self {
                names.push(v.clone());
            }
        }
        let idx = per_edge
            .iter()
            .map(|v| names.binary_search(v).expect("listed"))
            .collect();
        (names, idx)
    }
}

fn edge_bits(mask: u64, slots: &[usize], width: usize) -> Vec<i64> {
    let mut out = vec![0; width];
    for (i, &s) in slots.iter().enumerate() {
        out[s] += (mask >> i & 1) as i64;
    }
    out
}

/// Folds a per-state exponent vector over all states, in parallel. The result
/// does not depend on the thread count.
pub fn state_sum<F>(g: &HalfEdgedRibbonGraph, vars: &[String], term: F) -> Result<MultiPoly, LimitExceeded>
where
    F: Fn(u64, &GraphStats) -> Vec<i64> + Sync,
{
    check_limit(g.num_edges())?;
    let sg = SideGraph::new(g);
    let ne = g.num_edges();
    let total = 1u64 << ne;
    let chunk = (total / 64).max(1);
    let var_refs: Vec<&str> = vars.iter().map(String::as_str).collect();
    let counts = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut acc: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
            for mask in c * chunk..((c + 1) * chunk).min(total) {
                let st = state_stats(&sg, &mask_to_retained(mask, ne));
                *acc.entry(term(mask, &st)).or_insert(0) += 1;
            }
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let mut out = crate::poly::IntTermAccumulator::new(&var_refs);
    for (k, v) in counts {
        out.push_count(k, v);
    }
    Ok(out.into_poly())
}

fn shift_vars(p: &MultiPoly) -> Result<MultiPoly, PolyError> {
    let map = BTreeMap::from([
        ("X".to_string(), MultiPoly::var("x") - MultiPoly::one()),
        ("Y".to_string(), MultiPoly::var("y") - MultiPoly::one()),
    ]);
    p.substitute(&map)
}

fn require_closed(g: &HalfEdgedRibbonGraph) -> Result<(), InvariantError> {
    match g.num_half_ribbons() {
        0 => Ok(()),
        f => Err(InvariantError::NotClosed(f)),
    }
}

/// Σ (x−1)^{r(G)−r(s)} y^{n(s)} z^{k(s)−∂(s)+n(s)} w^{t(s)} over states of a
/// closed ribbon graph.
pub fn br_r(g: &HalfEdgedRibbonGraph) -> Result<MultiPoly, InvariantError> {
    require_closed(g)?;
    let rg = stats(g).r as i64;
    let vars: Vec<String> = ["X", "y", "z", "w"].map(String::from).to_vec();
    let p = state_sum(g, &vars, |_, s| {
        vec![
            rg - s.r as i64,
            s.n as i64,
            s.k as i64 - s.bd as i64 + s.n as i64,
            s.t as i64,
        ]
    })?;
    Ok(shift_vars(&p)?)
}

/// Σ a^{k(s)} ∏ b_e c^{∂(s)} over states of a closed ribbon graph.
pub fn multivariate_z(g: &HalfEdgedRibbonGraph, weights: &EdgeWeights) -> Result<MultiPoly, InvariantError> {
    require_closed(g)?;
    let (names, slots) = weights.slots(g);
    let mut vars = vec!["a".to_string()];
    vars.extend(names.iter().cloned());
    vars.push("c".into());
    Ok(state_sum(g, &vars, |mask, s| {
        let mut v = vec![s.k as i64];
        v.extend(edge_bits(mask, &slots, names.len()));
        v.push(s.bd as i64);
        v
    })?)
}

/// Half-edged version of the ribbon polynomial. `shifted_y` selects
/// `(y−1)^{n(s)}`; otherwise `y^{n(s)}`.
pub fn herg_r_with(g: &HalfEdgedRibbonGraph, shifted_y: bool) -> Result<MultiPoly, InvariantError> {
    let rg = stats(g).r as i64;
    let yname = if shifted_y { "Y" } else { "y" };
    let vars: Vec<String> = ["X", yname, "z", "w", "t"].map(String::from).to_vec();
    let p = state_sum(g, &vars, |_, s| {
        vec![
            rg - s.r as i64,
            s.n as i64,
            s.k as i64 - s.f_int as i64 + s.n as i64,
            s.c_bd as i64,
            s.f as i64,
        ]
    })?;
    Ok(shift_vars(&p)?)
}

pub fn herg_r(g: &HalfEdgedRibbonGraph) -> Result<MultiPoly, InvariantError> {
    herg_r_with(g, true)
}

/// Σ a^{k(s)} ∏ b_e c^{F_int(s)} d^{C_∂(s)} l^{f(s)}.
pub fn herg_z(g: &HalfEdgedRibbonGraph, weights: &EdgeWeights) -> Result<MultiPoly, InvariantError> {
    let (names, slots) = weights.slots(g);
    let mut vars = vec!["a".to_string()];
    vars.extend(names.iter().cloned());
    vars.extend(["c", "d", "l"].map(String::from));
    Ok(state_sum(g, &vars, |mask, s| {
        let mut v = vec![s.k as i64];
        v.extend(edge_bits(mask, &slots, names.len()));
        v.extend([s.f_int as i64, s.c_bd as i64, s.f as i64]);
        v
    })?)
}

/// Σ (x−1)^{r(G)−r(s)} (y−1)^{n(s)}.
pub fn tutte(g: &HalfEdgedRibbonGraph) -> Result<MultiPoly, InvariantError> {
    let rg = stats(g).r as i64;
    let vars: Vec<String> = ["X", "Y"].map(String::from).to_vec();
    let p = state_sum(g, &vars, |_, s| vec![rg - s.r as i64, s.n as i64])?;
    Ok(shift_vars(&p)?)
}

pub fn compute(g: &HalfEdgedRibbonGraph, kind: InvariantKind, weights: &EdgeWeights) -> Result<MultiPoly, InvariantError> {
    match kind {
        InvariantKind::RibbonR => br_r(g),
        InvariantKind::RibbonZ => multivariate_z(g, weights),
        InvariantKind::HergR => herg_r(g),
        InvariantKind::HergZ => herg_z(g, weights),
        InvariantKind::Tutte => tutte(g),
    }
}

/// The substitution a=(x−1)yz², b=yz, c=z⁻¹, d=w, l=t followed by the
/// prefactor (x−1)^{−k}(yz)^{−v}. Needs `Z` with a common edge variable `b`.
pub fn z_to_r(z: &MultiPoly, k: usize, v: usize) -> Result<MultiPoly, PolyError> {
    // Carry x−1 as the placeholder X so the prefactor is a monomial shift.
    let map = BTreeMap::from([
        ("a".to_string(), MultiPoly::monomial(&[("X", 1), ("y", 1), ("z", 2)])),
        ("b".to_string(), MultiPoly::monomial(&[("y", 1), ("z", 1)])),
        ("c".to_string(), MultiPoly::monomial(&[("z", -1)])),
        ("d".to_string(), MultiPoly::var("w")),
        ("l".to_string(), MultiPoly::var("t")),
    ]);
    let (k, v) = (k as i64, v as i64);
    let sub = z
        .substitute(&map)?
        .mul_monomial(&Monomial::from_ints(&[("X", -k), ("y", -v), ("z", -v)]));
    shift_vars(&sub)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConversionCheck {
    pub holds: bool,
    pub lhs: MultiPoly,
    pub rhs: MultiPoly,
    /// Same comparison with the shifted `(y−1)^{n(s)}` convention.
    pub shifted_y_holds: bool,
}

/// Compares the half-edged ribbon polynomial with the substituted
/// multivariate form, using `y^{n(s)}` on the left.
pub fn convert_check(g: &HalfEdgedRibbonGraph) -> Result<ConversionCheck, InvariantError> {
    let s = stats(g);
    let z = herg_z(g, &EdgeWeights::common())?;
    let rhs = z_to_r(&z, s.k, s.v)?;
    let lhs = herg_r_with(g, false)?;
    let shifted = herg_r_with(g, true)?;
    Ok(ConversionCheck {
        holds: lhs == rhs,
        shifted_y_holds: shifted == rhs,
        lhs,
        rhs,
    })
}

/// Classical version for closed graphs, compared at w = 1 (the multivariate
/// ribbon polynomial has no orientability variable).
pub fn convert_check_closed(g: &HalfEdgedRibbonGraph) -> Result<ConversionCheck, InvariantError> {
    let s = stats(g);
    let z = multivariate_z(g, &EdgeWeights::common())?;
    let rhs = z_to_r(&z, s.k, s.v)?;
    let at_w1 = BTreeMap::from([("w".to_string(), MultiPoly::one())]);
    let lhs = br_r(g)?.substitute(&at_w1)?;
    Ok(ConversionCheck {
        holds: lhs == rhs,
        shifted_y_holds: false,
        lhs,
        rhs,
    })
}

/// Edges that are neither loops nor bridges.
pub fn ordinary_edges(g: &HalfEdgedRibbonGraph) -> Vec<String> {
    let k = stats(g).k;
    g.edges
        .iter()
        .enumerate()
        .filter(|(i, _)| !g.is_loop(*i))
        .filter(|(i, _)| {
            let mut kept = vec![true; g.num_edges()];
            kept[*i] = false;
            crate::ribbon::stats::components(g, &kept).components == k
        })
        .map(|(_, e)| e.id.clone())
        .collect()
}

/// `(R(G), R(G−e) + R(G/e))` for an edge of a closed ribbon graph.
pub fn deletion_contraction(g: &HalfEdgedRibbonGraph, id: &str) -> Result<(MultiPoly, MultiPoly), InvariantError> {
    let whole = br_r(g)?;
    let del = br_r(&delete_edge(g, id)?)?;
    let con = br_r(&contract_edge(g, id)?)?;
    Ok((whole, del + con))
}

/// `Z` with `b_e` set to zero, for a per-edge weighted polynomial.
pub fn drop_edge_weight(z: &MultiPoly, var: &str) -> MultiPoly {
    MultiPoly::from_terms(
        z.terms()
            .filter(|(m, _)| m.exponent(var) == rat(0))
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::ribbon::parse_graph;

    fn g(src: &str) -> HalfEdgedRibbonGraph {
        parse_graph(src).unwrap()
    }

    const BRIDGE: &str = "graph g\nvertex u: e.1\nvertex w: e.2\nedge e: twist=0\n";

    #[test]
    fn br_r_small_graphs() {
        assert_eq!(br_r(&g(BRIDGE)).unwrap(), parse_poly("x").unwrap());
        assert_eq!(
            br_r(&g("graph g\nvertex v: e.1 e.2\nedge e: twist=0\n")).unwrap(),
            parse_poly("1 + y").unwrap()
        );
        assert_eq!(
            br_r(&g("graph g\nvertex v: e.1 e.2\nedge e: twist=1\n")).unwrap(),
            parse_poly("1 + y*z*w").unwrap()
        );
    }

    #[test]
    fn br_r_rejects_half_ribbons() {
        assert!(matches!(br_r(&g("graph g\nvertex v: h1\n")), Err(InvariantError::NotClosed(1))));
    }

    #[test]
    fn multivariate_z_small_graphs() {
        let bare = g("graph g\nvertex v:\n");
        assert_eq!(multivariate_z(&bare, &EdgeWeights::common()).unwrap(), parse_poly("a*c").unwrap());
        assert_eq!(
            multivariate_z(&g(BRIDGE), &EdgeWeights::per_edge()).unwrap(),
            parse_poly("a^2*c^2 + a*b_e*c").unwrap()
        );
    }

    #[test]
    fn herg_small_graphs() {
        let bare = g("graph g\nvertex v:\n");
        assert_eq!(herg_r(&bare).unwrap(), MultiPoly::one());
        assert_eq!(herg_z(&bare, &EdgeWeights::common()).unwrap(), parse_poly("a*c").unwrap());
        let hr = g("graph g\nvertex v: h1\n");
        assert_eq!(herg_r(&hr).unwrap(), parse_poly("z*w*t").unwrap());
        assert_eq!(herg_z(&hr, &EdgeWeights::common()).unwrap(), parse_poly("a*d*l").unwrap());
    }

    #[test]
    fn zeroing_an_edge_weight_cuts_it() {
        let src = "graph g\nvertex u: a.1 h1 b.1\nvertex w: b.2 a.2\nedge a: twist=1\nedge b: twist=0\n";
        let base = g(src);
        let z = herg_z(&base, &EdgeWeights::per_edge()).unwrap();
        let cut = crate::ops::cut_edge(&base, "a").unwrap();
        assert_eq!(drop_edge_weight(&z, "b_a"), herg_z(&cut, &EdgeWeights::per_edge()).unwrap());
    }

    #[test]
    fn conversion_on_small_graphs() {
        for src in [
            "graph g\nvertex v:\n",
            "graph g\nvertex v: e.1 e.2\nedge e: twist=0\n",
            "graph g\nvertex v: e.1 h1 e.2 h2\nedge e: twist=1\n",
        ] {
            assert!(convert_check(&g(src)).unwrap().holds, "{src}");
        }
        assert!(convert_check_closed(&g("graph g\nvertex v: e.1 e.2\nedge e: twist=0\n")).unwrap().holds);
    }

    #[test]
    fn deletion_contraction_on_triangle() {
        let tri = g("graph t\nvertex u: a.1 c.2\nvertex v: b.1 a.2\nvertex w: c.1 b.2\nedge a: twist=0\nedge b: twist=1\nedge c: twist=0\n");
        let ord = ordinary_edges(&tri);
        assert_eq!(ord.len(), 3);
        for e in ord {
            let (l, r) = deletion_contraction(&tri, &e).unwrap();
            assert_eq!(l, r);
        }
    }

    #[test]
    fn tutte_of_triangle() {
        let tri = g("graph t\nvertex u: a.1 c.2\nvertex v: b.1 a.2\nvertex w: c.1 b.2\nedge a: twist=0\nedge b: twist=0\nedge c: twist=0\n");
        assert_eq!(tutte(&tri).unwrap(), parse_poly("x^2 + x + y").unwrap());
    }
}
