//! `herg decomp ...`

use std::cell::RefCell;
use std::path::Path;
use std::time::Instant;

use serde_json::{json, Value};

use herg_core::decomp::expansion::{check_product_lemma, verify_counting_lemmas, CountingReport};
use herg_core::decomp::general::verify_general_case;
use herg_core::decomp::theorem::verify_theorem;
use herg_core::decomp::Prepared;
use herg_core::ops::{parse_manifest, Decomposition};
use herg_core::ribbon::parse_graph;

use crate::failure::Failure;
use crate::report::{beside, print_json, Check, RunReport};
use crate::Mode;

fn load_manifest(path: &Path, report: &mut RunReport) -> Result<Decomposition, Failure> {
    let text = report.read(path)?;
    let report = RefCell::new(report);
    let d = parse_manifest(&text, |name| {
        let file = beside(path, name);
        let src = report.borrow_mut().read(&file).map_err(|f| {
            herg_core::ops::OpError::Graph(herg_core::ribbon::GraphError::Parse { line: 0, msg: f.message })
        })?;
        let g = parse_graph(&src).map_err(|e| match e {
            herg_core::ribbon::GraphError::Parse { line, msg } => herg_core::ribbon::GraphError::Parse {
                line,
                msg: format!("{}: {msg}", file.display()),
            },
            other => other,
        })?;
        Ok(g)
    })?;
    Ok(d)
}

fn counting_checks(name: &str, r: &CountingReport, report: &mut RunReport) {
    report.checks.push(Check::new(name, r.holds()));
    for v in &r.examples {
        report.counterexamples.push(json!({ "check": name, "violation": v }));
    }
}

fn s12(p: &Prepared, report: &mut RunReport) -> Result<(), Failure> {
    let lemma = check_product_lemma(p)?;
    report.checks.push(Check::new("product_expansion", lemma.holds));
    if !lemma.holds {
        report.counterexamples.push(json!({
            "check": "product_expansion",
            "template_state": lemma.offending_template_state,
            "first_difference": lemma.first_difference,
        }));
    }
    let counting = verify_counting_lemmas(p);
    counting_checks("counting_identities", &counting, report);
    report.details = json!({
        "composite_states": counting.composite_states,
        "violations": counting.violations,
        "correction_free": p.correction_free(),
        "screens_pass": p.screens.iter().all(|s| s.passes()),
        "polynomial": lemma.direct,
    });
    Ok(())
}

fn theorem(p: &Prepared, report: &mut RunReport) -> Result<(), Failure> {
    let r = verify_theorem(p)?;
    for (e, pi) in p.decomposition.template.edges.iter().zip(&r.pieces) {
        report.checks.push(Check::new(format!("piece_identity[{}]", e.id), pi.piece_identity));
        report.checks.push(Check::new(format!("closure_split[{}]", e.id), pi.closure_split));
        report.checks.push(Check::new(format!("contracted_identity[{}]", e.id), pi.contracted_identity));
    }
    match r.factored_holds {
        Some(ok) => report.checks.push(Check::new("factored_form", ok)),
        None => report
            .checks
            .push(Check::skipped("factored_form", "a template state has a nonzero correction")),
    }
    report.details = json!({
        "determinant": r.determinant,
        "printed_residuals": r.pieces.iter().map(|pi| pi.printed_residual.to_string()).collect::<Vec<_>>(),
    });
    Ok(())
}

fn general(p: &Prepared, report: &mut RunReport) -> Result<(), Failure> {
    let r = verify_general_case(p)?;
    if !r.conforming {
        for name in ["class_map_of_phi", "class_map_of_auxiliary", "class_counting"] {
            report.checks.push(Check::skipped(name, "pieces do not conform to the class representatives"));
        }
        report.details = json!({ "nonconforming": r.nonconforming });
        return Ok(());
    }
    report.checks.push(Check::new("class_map_of_phi", r.class_map_of_phi));
    report.checks.push(Check::new("class_map_of_auxiliary", r.class_map_of_auxiliary));
    for (e, pc) in p.decomposition.template.edges.iter().zip(&r.pieces) {
        report.checks.push(Check::new(format!("piece_identities[{}]", e.id), pc.holds()));
    }
    if let Some(c) = &r.counting {
        counting_checks("class_counting", c, report);
    }
    report.details = json!({
        "classes": r.classes,
        "auxiliary_residual_terms": r.auxiliary_residual_terms,
        "normalized_map_of_auxiliary": r.normalized_map_of_auxiliary,
        "phi": r.phi,
    });
    Ok(())
}

pub fn verify(manifest: &Path, mode: Mode, dump_matrices: bool, timings: bool) -> Result<(), Failure> {
    let mut report = RunReport::new(&format!("decomp verify --mode {}", format!("{mode:?}").to_lowercase()));
    let start = Instant::now();
    let d = load_manifest(manifest, &mut report)?;
    let p = Prepared::new(&d)?;
    let prepared_ms = start.elapsed().as_millis();
    match mode {
        Mode::S12 => s12(&p, &mut report)?,
        Mode::Theorem => theorem(&p, &mut report)?,
        Mode::General => general(&p, &mut report)?,
    }
    if dump_matrices {
        if let Value::Object(m) = &mut report.details {
            m.insert("template_states".into(), json!(p.template_states));
        }
    }
    if timings {
        report.timings_ms = Some(
            [("prepare".to_string(), prepared_ms), ("total".to_string(), start.elapsed().as_millis())]
                .into_iter()
                .collect(),
        );
    }
    report.finish()
}

pub fn matrices(manifest: &Path) -> Result<(), Failure> {
    let mut report = RunReport::new("decomp matrices");
    let d = load_manifest(manifest, &mut report)?;
    let p = Prepared::new(&d)?;
    print_json(&json!({ "inputs": report.inputs, "template_states": p.template_states }));
    Ok(())
}
