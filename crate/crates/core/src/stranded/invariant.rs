//! The generalized state-sum invariant of colored graphs, its expanded
//! prefactor form, and the multivariate version.

use std::collections::BTreeMap;

use rayon::prelude::*;


use super::census::{StateContext, StrandedStats};
use super::graph::ColoredTensorGraph;
use crate::poly::{rat, rat_frac, Monomial, MultiPoly, Rat};
use crate::ribbon::states::{check_limit, LimitExceeded};

/// Bubble weights `α_3..α_n`, default 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphas(pub BTreeMap<usize, Rat>);

impl Alphas {
    pub fn ones() -> Self {
        Alphas(BTreeMap::new())
    }

    pub fn get(&self, k: usize) -> Rat {
        self.0.get(&k).cloned().unwrap_or_else(|| rat(1))
    }

    /// Parses `3=1,4=1/2`.
    pub fn parse(s: &str) -> Result<Self, String> {
        let mut m = BTreeMap::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| format!("expected k=value, got '{part}'"))?;
            let k: usize = k.trim().parse().map_err(|_| format!("bad index '{k}'"))?;
            let v = crate::poly::parse_rat(v.trim()).map_err(|e| e.to_string())?;
            m.insert(k, v);
        }
        Ok(Alphas(m))
    }
}

fn ri(n: usize) -> Rat {
    rat(n as i64)
}

/// Coefficient of `B^k` in the exponent correction, `k = 3..=n`.
fn bubble_coefficient(n: usize, k: usize, alpha: &Alphas) -> Rat {
    if k == 3 {
        -(ri(2) + ri(n - 2) * alpha.get(3))
    } else {
        ri(k - 1) * alpha.get(k - 1) - ri(n - k + 1) * alpha.get(k)
    }
}

pub fn gamma(st: &StrandedStats, n: usize, alpha: &Alphas) -> Rat {
    let mut g = rat_frac((n * (n - 1)) as i64, 2) * (ri(st.v) - ri(st.e)) + ri(n - 1) * ri(st.f_int);
    for k in 3..=n {
        g += bubble_coefficient(n, k, alpha) * ri(st.bubbles[k]);
    }
    g
}

/// Exponent of `z` in a state's term.
pub fn z_exponent(st: &StrandedStats, n: usize, alpha: &Alphas) -> Rat {
    rat_frac(((n - 1) * (n + 2)) as i64, 2) * ri(st.k) - gamma(st, n, alpha)
}

/// `(x-1)^k` expanded.
fn x_minus_one_pow(k: usize) -> MultiPoly {
    let base = MultiPoly::var("x") - MultiPoly::one();
    base.pow(k as i64).expect("non-negative power")
}

fn par_states<F>(g: &ColoredTensorGraph, term: F) -> Result<MultiPoly, LimitExceeded>
where
    F: Fn(u64, &StrandedStats) -> MultiPoly + Sync,
{
    let ctx = StateContext::new(g);
    check_limit(ctx.num_free())?;
    let parts: Vec<MultiPoly> = crate::decomp::expansion::chunks(ctx.num_free())
        .into_par_iter()
        .map(|(lo, hi)| (lo..hi).map(|m| term(m, &ctx.stats(m))).sum())
        .collect();
    Ok(parts.into_iter().sum())
}

fn tail(st: &StrandedStats) -> Monomial {
    Monomial::from_ints(&[("s", st.c_bd as i64), ("q", st.e_bd as i64), ("t", st.f as i64)])
}

/// The invariant at `w = 1`; the boundary-component variable is `s`.
pub fn invariant_t(g: &ColoredTensorGraph, alpha: &Alphas) -> Result<MultiPoly, LimitExceeded> {
    let n = g.rank;
    let full = StateContext::new(g).stats((1u64 << g.num_free_edges()) - 1);
    par_states(g, |_, st| {
        let m = Monomial::from_ints(&[("y", st.nullity as i64)])
            .mul(&Monomial::var_pow("z", z_exponent(st, n, alpha)))
            .mul(&tail(st));
        x_minus_one_pow(full.r - st.r).mul_monomial(&m)
    })
}

/// Both sides of the expanded form with the prefactor moved across:
/// `(x-1)^{k(G)} (y z^{n(n-1)/2})^{v(G)} T` and the expanded sum.
pub fn expanded_form(g: &ColoredTensorGraph, alpha: &Alphas) -> Result<(MultiPoly, MultiPoly), LimitExceeded> {
    let n = g.rank;
    let full = StateContext::new(g).stats((1u64 << g.num_free_edges()) - 1);
    let half = rat_frac((n * (n - 1)) as i64, 2);
    let yz = Monomial::var("y").mul(&Monomial::var_pow("z", half.clone()));
    let lhs = x_minus_one_pow(full.k).mul_monomial(&yz.pow(&ri(full.v))) * invariant_t(g, alpha)?;
    let rhs = par_states(g, |_, st| {
        let per_component = Monomial::var("y").mul(&Monomial::var_pow("z", rat_frac(((n - 1) * (n + 2)) as i64, 2)));
        let mut z_exp = -(ri(n - 1) * ri(st.f_int));
        for k in 3..=n {
            z_exp -= bubble_coefficient(n, k, alpha) * ri(st.bubbles[k]);
        }
        let m = per_component
            .pow(&ri(st.k))
            .mul(&yz.pow(&ri(st.e)))
            .mul(&Monomial::var_pow("z", z_exp))
            .mul(&tail(st));
        x_minus_one_pow(st.k).mul_monomial(&m)
    })?;
    Ok((lhs, rhs))
}

/// `Σ x^{r} ∏β_e ∏_{i=1..n} z_i^{B^i} z^{F_int} s^{C_∂} q^{E_∂} t^f` with
/// `β_<edge id>` per free edge.
pub fn multivariate_t(g: &ColoredTensorGraph) -> Result<MultiPoly, LimitExceeded> {
    let free: Vec<String> = g.free_edges().iter().map(|&i| format!("beta_{}", g.edges[i].id)).collect();
    par_states(g, |mask, st| {
        let mut m = Monomial::from_ints(&[("x", st.r as i64), ("z", st.f_int as i64)]).mul(&tail(st));
        for (bit, name) in free.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                m = m.mul(&Monomial::var(name));
            }
        }
        for i in 1..=g.rank {
            m = m.mul(&Monomial::from_ints(&[(&format!("z{i}"), st.bubbles[i] as i64)]));
        }
        MultiPoly::mono(m)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stranded::census::colored_stats;
    use crate::stranded::graph::{melon, ColoredBuilder};

    #[test]
    fn melon_gamma() {
        let st = colored_stats(&melon(3));
        let a = Alphas(BTreeMap::from([(3, rat(1))]));
        assert_eq!(gamma(&st, 3, &a), rat(-6));
        let half = Alphas(BTreeMap::from([(3, rat_frac(1, 2))]));
        assert_eq!(gamma(&st, 3, &half), rat(-4));
    }

    #[test]
    fn bare_vertex_invariant() {
        let g = ColoredBuilder::new("v", 3).vertex("v", None).build().unwrap();
        let t = invariant_t(&g, &Alphas::ones()).unwrap();
        // gamma = 3 (V - E) = 3, z exponent 5 - 3.
        assert_eq!(t, MultiPoly::monomial(&[("z", 2)]));
    }

    #[test]
    fn melon_expanded_form_agrees() {
        let m = melon(3);
        let (lhs, rhs) = expanded_form(&m, &Alphas::ones()).unwrap();
        assert_eq!(lhs, rhs);
        let t = invariant_t(&m, &Alphas::ones()).unwrap();
        let mv = multivariate_t(&m).unwrap();
        assert_eq!(mv.len(), 16);
        assert!(t.len() > 1);
    }
}
