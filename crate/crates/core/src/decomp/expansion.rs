//! The per-edge product expansion over template states and the per-state
//! counting identities behind it.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::analysis::Connectivity;
use super::eta::frak_f;
use super::{DecompError, Prepared};
use crate::invariants::{herg_z, EdgeWeights};
use crate::poly::{IntTermAccumulator, Monomial, MultiPoly};
use crate::ribbon::faces::SideGraph;
use crate::ribbon::states::mask_to_retained;
use crate::ribbon::stats::state_stats;
use crate::ribbon::GraphStats;

/// Contribution of one template state to the expansion.
pub fn template_term(p: &Prepared, mask: u64) -> MultiPoly {
    let ts = &p.template_states[mask as usize];
    let st = &ts.stats;
    let mut term = MultiPoly::monomial(&[
        ("a", st.k as i64),
        ("c", st.f_int as i64),
        ("d", st.c_bd as i64),
        ("l", st.f as i64),
    ]);
    for (i, table) in p.tables.iter().enumerate() {
        let factor = if mask >> i & 1 == 1 {
            frak_f(&table.eta1, ts.matrices.kappa[i])
        } else {
            table.eta2.clone()
        };
        term = &term * &factor;
    }
    term
}

pub fn expand_product_lemma(p: &Prepared) -> MultiPoly {
    let terms: Vec<MultiPoly> = (0..p.template_states.len() as u64)
        .into_par_iter()
        .map(|m| template_term(p, m))
        .collect();
    terms.into_iter().sum()
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductLemmaReport {
    pub holds: bool,
    pub expansion: MultiPoly,
    pub direct: MultiPoly,
    /// First monomial, in canonical order, where the two sides differ.
    pub first_difference: Option<String>,
    /// First template state whose own share of the sum disagrees.
    pub offending_template_state: Option<u64>,
}

pub fn check_product_lemma(p: &Prepared) -> Result<ProductLemmaReport, DecompError> {
    let expansion = expand_product_lemma(p);
    let direct = herg_z(&p.hat, &EdgeWeights::common())?;
    let diff = &expansion - &direct;
    let first_difference = diff
        .sorted_terms()
        .first()
        .map(|(m, c)| format!("{} {}", crate::poly::rat_to_string(c), m));
    let offending_template_state = if diff.is_zero() {
        None
    } else {
        let shares = shares_by_template_state(p);
        (0..p.template_states.len() as u64).find(|&m| template_term(p, m) != shares[m as usize])
    };
    Ok(ProductLemmaReport {
        holds: diff.is_zero(),
        expansion,
        direct,
        first_difference,
        offending_template_state,
    })
}

/// Template state induced by a choice of piece states.
fn induced_mask(p: &Prepared, piece_masks: &[u64]) -> u64 {
    piece_masks
        .iter()
        .enumerate()
        .filter(|(i, &m)| p.piece_states[*i][m as usize].connectivity == Connectivity::S1)
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

fn split_mask(origin: &[(usize, usize)], slots: usize, mask: u64) -> Vec<u64> {
    let mut out = vec![0u64; slots];
    for (h, &(i, j)) in origin.iter().enumerate() {
        if mask >> h & 1 == 1 {
            out[i] |= 1 << j;
        }
    }
    out
}

/// Direct state sum of the assembled graph, grouped by induced template state.
pub fn shares_by_template_state(p: &Prepared) -> Vec<MultiPoly> {
    let origin = p.hat_edge_origin();
    let sg = SideGraph::new(&p.hat);
    let ne = p.hat.num_edges();
    let slots = p.pieces.len();
    let per_chunk: Vec<BTreeMap<u64, IntTermAccumulator>> = chunks(ne)
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut acc: BTreeMap<u64, IntTermAccumulator> = BTreeMap::new();
            for mask in lo..hi {
                let st = state_stats(&sg, &mask_to_retained(mask, ne));
                let t = induced_mask(p, &split_mask(&origin, slots, mask));
                acc.entry(t)
                    .or_insert_with(|| IntTermAccumulator::new(&["a", "b", "c", "d", "l"]))
                    .push(vec![st.k as i64, st.e as i64, st.f_int as i64, st.c_bd as i64, st.f as i64]);
            }
            acc
        })
        .collect();
    let mut out = vec![MultiPoly::zero(); p.template_states.len()];
    for chunk in per_chunk {
        for (t, acc) in chunk {
            out[t as usize] += &acc.into_poly();
        }
    }
    out
}

pub(crate) fn chunks(ne: usize) -> Vec<(u64, u64)> {
    let total = 1u64 << ne;
    let step = (total / 64).max(1);
    (0..total.div_ceil(step)).map(|c| (c * step, ((c + 1) * step).min(total))).collect()
}

/// One failed identity on one composite state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub identity: &'static str,
    pub template_state: u64,
    pub piece_states: Vec<u64>,
    pub expected: i64,
    pub actual: i64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CountingReport {
    pub composite_states: u64,
    /// Violations per identity name.
    pub violations: BTreeMap<&'static str, u64>,
    /// First few counterexamples in composite-state order.
    pub examples: Vec<Violation>,
    /// Template states where the two counts of opened circles differ.
    pub tau_disagreements: Vec<u64>,
}

impl CountingReport {
    pub fn holds(&self) -> bool {
        self.violations.values().all(|&v| v == 0)
    }

    pub(crate) fn record(&mut self, v: Violation) {
        *self.violations.entry(v.identity).or_insert(0) += 1;
        if self.examples.len() < 5 {
            self.examples.push(v);
        }
    }

    pub(crate) fn merge(&mut self, other: CountingReport) {
        self.composite_states += other.composite_states;
        for (k, v) in other.violations {
            *self.violations.entry(k).or_insert(0) += v;
        }
        for ex in other.examples {
            if self.examples.len() < 5 {
                self.examples.push(ex);
            }
        }
    }
}

pub(crate) struct Composite<'a> {
    pub template_state: u64,
    pub piece_masks: Vec<u64>,
    pub pieces: Vec<&'a GraphStats>,
    pub connected: usize,
    pub disconnected: usize,
}

impl Composite<'_> {
    pub fn sum(&self, f: impl Fn(&GraphStats) -> usize) -> i64 {
        self.pieces.iter().map(|s| f(s) as i64).sum()
    }
}

/// Visits every state of the assembled graph with its decomposition, in
/// parallel, merging per-chunk reports in mask order.
pub(crate) fn for_each_composite<F>(p: &Prepared, check: F) -> CountingReport
where
    F: Fn(&Composite<'_>, &GraphStats, &mut CountingReport) + Sync,
{
    let origin = p.hat_edge_origin();
    let sg = SideGraph::new(&p.hat);
    let ne = p.hat.num_edges();
    let slots = p.pieces.len();
    let parts: Vec<CountingReport> = chunks(ne)
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut rep = CountingReport::default();
            for mask in lo..hi {
                let hat_stats = state_stats(&sg, &mask_to_retained(mask, ne));
                let piece_masks = split_mask(&origin, slots, mask);
                let pieces: Vec<&GraphStats> = piece_masks
                    .iter()
                    .enumerate()
                    .map(|(i, &m)| &p.piece_states[i][m as usize].stats)
                    .collect();
                let template_state = induced_mask(p, &piece_masks);
                let connected = template_state.count_ones() as usize;
                let c = Composite {
                    template_state,
                    piece_masks,
                    pieces,
                    connected,
                    disconnected: slots - connected,
                };
                rep.composite_states += 1;
                check(&c, &hat_stats, &mut rep);
            }
            rep
        })
        .collect();
    let mut out = CountingReport::default();
    for r in parts {
        out.merge(r);
    }
    out
}

/// Connectivity and boundary counting identities for every composite state,
/// with the opened-circle correction taken from the reduced matrices.
pub fn verify_counting_lemmas(p: &Prepared) -> CountingReport {
    let mut rep = for_each_composite(p, |c, hat, rep| {
        let ts = &p.template_states[c.template_state as usize];
        let s = &ts.stats;
        let (n1, n2) = (c.connected as i64, c.disconnected as i64);
        let tau = ts.matrices.tau_sum;
        let mut check = |identity, expected: i64, actual: usize| {
            if expected != actual as i64 {
                rep.record(super::expansion::Violation {
                    identity,
                    template_state: c.template_state,
                    piece_states: c.piece_masks.clone(),
                    expected,
                    actual: actual as i64,
                });
            }
        };
        check("components", c.sum(|x| x.k) - n1 - 2 * n2 + s.k as i64, hat.k);
        check(
            "internal_plus_boundary",
            c.sum(|x| x.f_int + x.c_bd) - n1 - 2 * n2 + (s.f_int + s.c_bd) as i64,
            hat.f_int + hat.c_bd,
        );
        check("boundary_components", c.sum(|x| x.c_bd) + s.c_bd as i64 - n1 - 2 * n2 + tau, hat.c_bd);
        check("internal_faces", c.sum(|x| x.f_int) + s.f_int as i64 - tau, hat.f_int);
        check("half_ribbons", c.sum(|x| x.f) + s.f as i64 - 2 * n1 - 4 * n2, hat.f);
    });
    rep.tau_disagreements = p
        .template_states
        .iter()
        .filter(|t| t.matrices.tau_rank as i64 != t.matrices.tau_sum)
        .map(|t| t.mask)
        .collect();
    rep
}

/// `(a d l^2)^k` as a monomial.
pub fn adl2(k: i64) -> Monomial {
    Monomial::from_ints(&[("a", k), ("d", k), ("l", 2 * k)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::{Decomposition, Piece};
    use crate::ribbon::parse_graph;

    fn identity_over(src: &str) -> Prepared {
        let t = parse_graph(src).unwrap();
        Prepared::new(&Decomposition::uniform(t, &Piece::identity()).unwrap()).unwrap()
    }

    #[test]
    fn identity_pieces_reproduce_template() {
        let p = identity_over("graph t\nvertex u: a.1 h1 b.1\nvertex w: b.2 a.2\nedge a: twist=1\nedge b: twist=0\n");
        let z = herg_z(&p.decomposition.template, &EdgeWeights::common()).unwrap();
        assert_eq!(expand_product_lemma(&p), z);
        let r = check_product_lemma(&p).unwrap();
        assert!(r.holds && r.offending_template_state.is_none());
        let c = verify_counting_lemmas(&p);
        assert_eq!(c.composite_states, 4);
        assert!(c.holds(), "{:?}", c.examples);
    }
}
