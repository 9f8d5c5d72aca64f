//! Prints one PASS/FAIL line per acceptance criterion, followed by the
//! criterion's summary JSON.

use std::time::Instant;

use herg_core::reports::{self, CriterionReport};

fn line(r: &CriterionReport, elapsed_ms: u128) {
    let verdict = if r.pass { "PASS" } else { "FAIL" };
    println!("{verdict} criterion {:>2}: {} ({elapsed_ms} ms)", r.id, r.title);
    println!("    {}", r.summary);
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, u128) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_millis())
}

fn main() {
    let (corpus, load_ms) = timed(|| reports::load_expansion_corpus().expect("corpus prepares"));
    println!("expansion corpus: {} instances prepared in {load_ms} ms", corpus.prepared.len());
    let runs: Vec<(CriterionReport, u128)> = vec![
        timed(reports::matrix_example_report),
        timed(reports::expansion_example_report),
        timed(|| reports::product_lemma_report(&corpus).expect("runs")),
        timed(|| reports::counting_report(&corpus).expect("runs")),
        timed(|| reports::theorem_report(&corpus).expect("runs")),
        timed(|| reports::general_case_report().expect("runs")),
        timed(|| reports::conversion_report().expect("runs")),
        timed(|| reports::deletion_contraction_report().expect("runs")),
        timed(|| reports::stranded_report().expect("runs")),
    ];
    for (r, ms) in &runs {
        line(r, *ms);
    }
    let parallel = std::thread::available_parallelism().map_or(4, |n| n.get()).max(2);
    let ((single, repeat, many), ms) = timed(|| {
        (
            reports::reports_json_with_threads(1).expect("runs"),
            reports::reports_json_with_threads(1).expect("runs"),
            reports::reports_json_with_threads(parallel).expect("runs"),
        )
    });
    let identical = single == repeat && single == many;
    let first: Vec<&CriterionReport> = runs.iter().map(|(r, _)| r).collect();
    let matches_first = serde_json::to_string_pretty(&first).expect("serializes") == single;
    let verdict = if identical && matches_first { "PASS" } else { "FAIL" };
    println!("{verdict} criterion 10: byte-identical reports across runs and thread counts ({ms} ms)");
    println!(
        "    {{\"threads\":[1,1,{parallel}],\"identical\":{identical},\"matches_first_run\":{matches_first},\"digest\":\"{}\"}}",
        reports::digest(&single)
    );
    let failed = runs.iter().filter(|(r, _)| !r.pass).count() + usize::from(verdict == "FAIL");
    println!("acceptance: {} of 10 criteria pass", 10 - failed);
}
