//! `herg stranded ...`

use std::cell::RefCell;
use std::path::Path;

use serde_json::json;

use herg_core::decomp::expansion::CountingReport;
use herg_core::stranded::corpus::melon_corpus;
use herg_core::stranded::invariant::{invariant_t, multivariate_t, Alphas};
use herg_core::stranded::{
    colored_boundary, colored_stats, parse_colored, parse_colored_manifest, verify_prop_stranded, ColoredError,
    ColoredTensorGraph, StrandedReport,
};

use crate::failure::Failure;
use crate::report::{beside, print_json, read, Check, RunReport};

fn load(path: &Path) -> Result<ColoredTensorGraph, Failure> {
    Ok(parse_colored(&read(path)?)?)
}

pub fn poly(path: &Path, alpha: &str, multivariate: bool) -> Result<(), Failure> {
    let alpha = Alphas::parse(alpha).map_err(Failure::parse)?;
    let g = load(path)?;
    let p = if multivariate { multivariate_t(&g)? } else { invariant_t(&g, &alpha)? };
    print_json(&json!({ "graph": g.name, "polynomial": p, "text": p.to_string() }));
    Ok(())
}

pub fn bubbles(path: &Path) -> Result<(), Failure> {
    let g = load(path)?;
    print_json(&json!({
        "graph": g.name,
        "stats": colored_stats(&g),
        "boundary": colored_boundary(&g),
    }));
    Ok(())
}

fn add_checks(r: &StrandedReport, report: &mut RunReport) {
    let tag = |s: &str| format!("{s}[{}]", r.name);
    if r.skipped() {
        let reason = "marked half-edges break the standing condition";
        report.checks.push(Check::skipped(tag("proposition"), reason));
        report.checks.push(Check::skipped(tag("counting_identities"), reason));
    } else {
        report.checks.push(Check::new(tag("proposition"), r.proposition == Some(true)));
        if let Some(c) = &r.counting {
            report.checks.push(Check::new(tag("counting_identities"), c.holds()));
            for v in &c.examples {
                report.counterexamples.push(json!({ "instance": r.name, "violation": v }));
            }
        }
        if let Some(d) = &r.first_difference {
            report.counterexamples.push(json!({ "instance": r.name, "first_difference": d }));
        }
    }
    report
        .checks
        .push(Check::new(tag("closure_split"), r.closure_split.iter().all(|&b| b)));
}

pub fn verify(manifest: Option<&Path>, melon_sweep: bool, alpha: &str) -> Result<(), Failure> {
    let alpha = Alphas::parse(alpha).map_err(Failure::parse)?;
    let mut report = RunReport::new(if melon_sweep { "stranded verify --melon-sweep" } else { "stranded verify" });
    let results: Vec<StrandedReport> = if melon_sweep {
        melon_corpus(3)
            .iter()
            .map(|(n, d)| verify_prop_stranded(n, d))
            .collect::<Result<_, _>>()?
    } else {
        let path = manifest.expect("clap requires a manifest");
        let text = report.read(path)?;
        let cell = RefCell::new(&mut report);
        let d = parse_colored_manifest(&text, |name| {
            let file = beside(path, name);
            let src = cell
                .borrow_mut()
                .read(&file)
                .map_err(|f| ColoredError::Parse { line: 0, msg: f.message })?;
            parse_colored(&src)
        })?;
        vec![verify_prop_stranded(&path.display().to_string(), &d)?]
    };
    for r in &results {
        add_checks(r, &mut report);
    }
    let mut totals = std::collections::BTreeMap::new();
    for c in results.iter().filter_map(|r| r.counting.as_ref()) {
        for (k, v) in &c.violations {
            *totals.entry(*k).or_insert(0u64) += v;
        }
    }
    report.details = json!({
        "alpha": alpha.0.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect::<std::collections::BTreeMap<_, _>>(),
        "instances": results.len(),
        "skipped": results.iter().filter(|r| r.skipped()).count(),
        "edge_like": results.iter().filter(|r| r.edge_like).count(),
        "holding": results.iter().filter(|r| r.holds()).count(),
        "violations": totals,
        "composite_states": results.iter().filter_map(|r| r.counting.as_ref()).map(|c: &CountingReport| c.composite_states).sum::<u64>(),
    });
    report.finish()
}
