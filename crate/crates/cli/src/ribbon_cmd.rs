//! Single-graph commands.

use std::path::Path;

use serde_json::json;

use herg_core::invariants::{compute, EdgeWeights, InvariantKind};
use herg_core::ribbon::{boundary_graph, parse_graph, trace_faces, HalfEdgedRibbonGraph};

use crate::failure::Failure;
use crate::report::{print_json, read};
use crate::{stranded_cmd, Kind};

fn load(path: &Path) -> Result<HalfEdgedRibbonGraph, Failure> {
    Ok(parse_graph(&read(path)?)?)
}

pub fn poly(path: &Path, kind: Kind, alpha: &str, per_edge: bool) -> Result<(), Failure> {
    let kind = match kind {
        Kind::R => InvariantKind::RibbonR,
        Kind::Z => InvariantKind::RibbonZ,
        Kind::Rherg => InvariantKind::HergR,
        Kind::Zherg => InvariantKind::HergZ,
        Kind::Tutte => InvariantKind::Tutte,
        Kind::T => return stranded_cmd::poly(path, alpha, false),
    };
    let g = load(path)?;
    let weights = if per_edge { EdgeWeights::per_edge() } else { EdgeWeights::common() };
    let p = compute(&g, kind, &weights)?;
    print_json(&json!({ "graph": g.name, "polynomial": p, "text": p.to_string() }));
    Ok(())
}

pub fn stats(path: &Path) -> Result<(), Failure> {
    let g = load(path)?;
    print_json(&json!({ "graph": g.name, "stats": herg_core::ribbon::stats(&g) }));
    Ok(())
}

pub fn faces(path: &Path) -> Result<(), Failure> {
    let g = load(path)?;
    let label = |e: Option<usize>| e.map(|i| g.ends[i].label.clone());
    let walks: Vec<_> = trace_faces(&g)
        .into_iter()
        .map(|w| {
            json!({
                "kind": w.kind,
                "from": label(w.start_hr),
                "to": label(w.end_hr),
                "steps": w.steps,
            })
        })
        .collect();
    print_json(&json!({ "graph": g.name, "faces": walks }));
    Ok(())
}

pub fn boundary(path: &Path) -> Result<(), Failure> {
    let g = load(path)?;
    print_json(&json!({ "graph": g.name, "boundary": boundary_graph(&g) }));
    Ok(())
}
