//! One machine-readable report per verification target. Every report is a
//! pure function of fixed seeds, so its JSON is byte-stable across runs and
//! thread counts.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::decomp::corpus::{conforming_corpus, expansion_corpus, is_conforming, prepare_all};
use crate::decomp::example::{expansion_example, matrix_example};
use crate::decomp::expansion::{check_product_lemma, verify_counting_lemmas, CountingReport};
use crate::decomp::general::{auxiliary, verify_class_counting, verify_general_case};
use crate::decomp::theorem::verify_theorem;
use crate::decomp::{DecompError, Prepared};
use crate::invariants::{convert_check, convert_check_closed, deletion_contraction, ordinary_edges, InvariantError};
use crate::random::{random_family, RandomShape};
use crate::stranded::corpus::{contraction_sweep, melon_corpus};
use crate::stranded::decomp::{verify_prop_stranded, StrandedError};

pub const EXPANSION_SEED: u64 = 7;
pub const EXPANSION_MIXED: usize = 200;
pub const CONFORMING_SEED: u64 = 11;
pub const CONFORMING_STRIDE: usize = 4;
pub const CONFORMING_MIXED: usize = 100;
pub const RANDOM_SEED: u64 = 2024;
pub const COLORED_SEED: u64 = 31;

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Stranded(#[from] StrandedError),
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub pass: bool,
    pub summary: Value,
    /// SHA-256 of the full per-instance JSON.
    pub digest: String,
}

pub fn digest<T: Serialize + ?Sized>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("reports serialize");
    format!("{:x}", Sha256::digest(bytes))
}

fn report<T: Serialize + ?Sized>(id: u8, title: &'static str, pass: bool, summary: Value, full: &T) -> CriterionReport {
    CriterionReport {
        id,
        title,
        pass,
        summary,
        digest: digest(full),
    }
}

/// Violations summed over reports, per identity.
fn total_violations<'a>(reports: impl IntoIterator<Item = &'a CountingReport>) -> BTreeMap<&'static str, u64> {
    let mut out = BTreeMap::new();
    for r in reports {
        for (k, v) in &r.violations {
            *out.entry(*k).or_insert(0) += v;
        }
    }
    out
}

pub fn matrix_example_report() -> CriterionReport {
    let r = matrix_example();
    let m = &r.matrices;
    let summary = json!({
        "tau_rank": m.tau_rank,
        "tau_sum": m.tau_sum,
        "rank_matches": r.rank_matches,
        "reduced_is_identity": r.reduced_is_identity,
        "sigma_reduced_matches": r.sigma_reduced_matches,
        "tau_rank_matches": r.tau_rank_matches,
        "tau_sum_matches": r.tau_sum_matches,
    });
    report(1, "matrix example", r.holds(), summary, &r)
}

pub fn expansion_example_report() -> CriterionReport {
    let r = expansion_example();
    let summary = json!({
        "terms": r.expansion.len(),
        "matches": r.holds,
        "shape_residual": r.shape_residual.to_string(),
    });
    report(2, "example expansion", r.holds, summary, &r)
}

/// The exhaustive expansion corpus, prepared once for criteria 3 to 5.
pub struct ExpansionCorpus {
    pub names: Vec<String>,
    pub prepared: Vec<Prepared>,
}

pub fn load_expansion_corpus() -> Result<ExpansionCorpus, ReportError> {
    let instances = expansion_corpus(EXPANSION_SEED, EXPANSION_MIXED);
    Ok(ExpansionCorpus {
        prepared: prepare_all(&instances)?,
        names: instances.into_iter().map(|i| i.name).collect(),
    })
}

pub fn product_lemma_report(c: &ExpansionCorpus) -> Result<CriterionReport, ReportError> {
    let results = c
        .prepared
        .par_iter()
        .map(check_product_lemma)
        .collect::<Result<Vec<_>, _>>()?;
    let failing: Vec<&String> = c.names.iter().zip(&results).filter(|(_, r)| !r.holds).map(|(n, _)| n).collect();
    let pass = results.len() >= 200 && failing.is_empty();
    let summary = json!({ "instances": results.len(), "failing": failing });
    let full: Vec<(&String, bool, &Option<String>)> =
        c.names.iter().zip(&results).map(|(n, r)| (n, r.holds, &r.first_difference)).collect();
    Ok(report(3, "product expansion equals direct sum", pass, summary, &full))
}

pub fn counting_report(c: &ExpansionCorpus) -> Result<CriterionReport, ReportError> {
    let plain: Vec<CountingReport> = c.prepared.par_iter().map(verify_counting_lemmas).collect();
    let classed = c
        .prepared
        .par_iter()
        .filter(|p| is_conforming(p))
        .map(|p| Ok(verify_class_counting(p, &auxiliary(&p.decomposition.template)?)))
        .collect::<Result<Vec<_>, DecompError>>()?;
    let states: u64 = plain.iter().map(|r| r.composite_states).sum();
    let v1 = total_violations(&plain);
    let v2 = total_violations(&classed);
    let pass = plain.iter().chain(&classed).all(CountingReport::holds);
    let summary = json!({
        "instances": plain.len(),
        "composite_states": states,
        "violations": v1,
        "class_instances": classed.len(),
        "class_violations": v2,
    });
    Ok(report(4, "per-state counting identities", pass, summary, &(plain, classed)))
}

pub fn theorem_report(c: &ExpansionCorpus) -> Result<CriterionReport, ReportError> {
    let sub: Vec<(&String, &Prepared)> = c.names.iter().zip(&c.prepared).filter(|(_, p)| p.correction_free()).collect();
    let results = sub
        .par_iter()
        .map(|(_, p)| verify_theorem(p))
        .collect::<Result<Vec<_>, _>>()?;
    let failing: Vec<&String> = sub.iter().zip(&results).filter(|(_, r)| !r.holds()).map(|((n, _), _)| *n).collect();
    let pass = !results.is_empty() && failing.is_empty();
    let summary = json!({ "instances": results.len(), "failing": failing });
    let full: Vec<(&String, bool, Option<bool>)> =
        sub.iter().zip(&results).map(|((n, _), r)| (*n, r.holds(), r.factored_holds)).collect();
    Ok(report(5, "factored form on correction-free templates", pass, summary, &full))
}

pub fn general_case_report() -> Result<CriterionReport, ReportError> {
    let instances = conforming_corpus(CONFORMING_SEED, CONFORMING_STRIDE, CONFORMING_MIXED);
    let prepared = prepare_all(&instances)?;
    let results = prepared
        .par_iter()
        .filter(|p| is_conforming(p))
        .map(verify_general_case)
        .collect::<Result<Vec<_>, _>>()?;
    let count = |f: &dyn Fn(&crate::decomp::general::GeneralReport) -> bool| results.iter().filter(|r| f(r)).count();
    let summary = json!({
        "instances": results.len(),
        "class_map_of_phi": count(&|r| r.class_map_of_phi),
        "class_map_of_auxiliary": count(&|r| r.class_map_of_auxiliary),
        "normalized_map_of_auxiliary": count(&|r| r.normalized_map_of_auxiliary),
        "piece_identities": count(&|r| r.pieces.iter().all(|p| p.holds())),
        "counting": count(&|r| r.counting.as_ref().is_some_and(CountingReport::holds)),
    });
    let pass = results.len() >= 50 && results.iter().all(|r| r.holds());
    let full: Vec<(bool, bool, bool, usize)> = results
        .iter()
        .map(|r| (r.class_map_of_phi, r.class_map_of_auxiliary, r.normalized_map_of_auxiliary, r.auxiliary_residual_terms))
        .collect();
    Ok(report(6, "general case on conforming instances", pass, summary, &full))
}

pub fn conversion_report() -> Result<CriterionReport, ReportError> {
    let open = random_family(RANDOM_SEED, 50, RandomShape::default(), |_| true);
    let closed_shape = RandomShape {
        max_half_ribbons: 0,
        ..RandomShape::default()
    };
    let closed = random_family(RANDOM_SEED + 1, 50, closed_shape, |_| true);
    let a = open.par_iter().map(convert_check).collect::<Result<Vec<_>, _>>()?;
    let b = closed.par_iter().map(convert_check_closed).collect::<Result<Vec<_>, _>>()?;
    let with_halves = open.iter().filter(|g| g.num_half_ribbons() > 0).count();
    let summary = json!({
        "half_edged": a.len(),
        "with_half_ribbons": with_halves,
        "half_edged_holds": a.iter().filter(|r| r.holds).count(),
        "shifted_y_holds": a.iter().filter(|r| r.shifted_y_holds).count(),
        "closed": b.len(),
        "closed_holds": b.iter().filter(|r| r.holds).count(),
    });
    let pass = a.iter().chain(&b).all(|r| r.holds);
    let full: Vec<String> = open.iter().chain(&closed).map(|g| g.to_herg_text()).collect();
    Ok(report(7, "conversion identities on random graphs", pass, summary, &(full, a.iter().map(|r| r.holds).collect::<Vec<_>>())))
}

pub fn deletion_contraction_report() -> Result<CriterionReport, ReportError> {
    let shape = RandomShape {
        max_half_ribbons: 0,
        ..RandomShape::default()
    };
    let graphs = random_family(RANDOM_SEED + 2, 50, shape, |g| !ordinary_edges(g).is_empty());
    let checks = graphs
        .par_iter()
        .map(|g| {
            ordinary_edges(g)
                .into_iter()
                .map(|e| deletion_contraction(g, &e).map(|(l, r)| (e, l == r)))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let edges: usize = checks.iter().map(Vec::len).sum();
    let failing: Vec<String> = graphs
        .iter()
        .zip(&checks)
        .flat_map(|(g, c)| c.iter().filter(|(_, ok)| !ok).map(move |(e, _)| format!("{}:{e}", g.name)))
        .collect();
    let summary = json!({ "graphs": graphs.len(), "edges": edges, "failing": failing });
    Ok(report(8, "deletion-contraction", failing.is_empty(), summary, &checks))
}

pub fn stranded_report() -> Result<CriterionReport, ReportError> {
    let corpus = melon_corpus(3);
    let results = corpus
        .par_iter()
        .map(|(n, d)| verify_prop_stranded(n, d))
        .collect::<Result<Vec<_>, _>>()?;
    let evaluated: Vec<_> = results.iter().filter(|r| !r.skipped()).collect();
    let violations = total_violations(evaluated.iter().filter_map(|r| r.counting.as_ref()));
    let contraction = contraction_sweep(COLORED_SEED, 30, 3);
    let summary = json!({
        "instances": results.len(),
        "skipped": results.len() - evaluated.len(),
        "proposition_holds": evaluated.iter().filter(|r| r.proposition == Some(true)).count(),
        "counting_holds": evaluated.iter().filter(|r| r.counting.as_ref().is_some_and(CountingReport::holds)).count(),
        "edge_like_pieces": evaluated.iter().filter(|r| r.edge_like).count(),
        "counting_violations": violations,
        "closure_split_holds": results.iter().filter(|r| r.closure_split.iter().all(|&b| b)).count(),
        "contraction_graphs": contraction.len(),
        "contraction_holds": contraction.iter().filter(|c| c.holds()).count(),
    });
    let pass = evaluated.len() >= 30 && results.iter().all(|r| r.holds()) && contraction.iter().all(|c| c.holds());
    Ok(report(9, "stranded decomposition, rank 3", pass, summary, &(results, contraction)))
}

/// Criteria 1 to 9 in order.
pub fn all_reports() -> Result<Vec<CriterionReport>, ReportError> {
    let corpus = load_expansion_corpus()?;
    Ok(vec![
        matrix_example_report(),
        expansion_example_report(),
        product_lemma_report(&corpus)?,
        counting_report(&corpus)?,
        theorem_report(&corpus)?,
        general_case_report()?,
        conversion_report()?,
        deletion_contraction_report()?,
        stranded_report()?,
    ])
}

/// Runs every report on `threads` worker threads and returns the JSON.
pub fn reports_json_with_threads(threads: usize) -> Result<String, ReportError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    let reports = pool.install(all_reports)?;
    Ok(serde_json::to_string_pretty(&reports).expect("reports serialize"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_stable() {
        assert_eq!(digest(&[1, 2, 3]), digest(&vec![1, 2, 3]));
        assert_eq!(digest("x").len(), 64);
    }
}
