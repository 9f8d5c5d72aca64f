//! `herg random ...`: seeded instances, byte-identical for a fixed seed.

use std::collections::BTreeMap;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use sha2::{Digest, Sha256};

use herg_core::decomp::corpus::{is_conforming, screened_pieces, template_family};
use herg_core::decomp::{analyze_piece, screen, Prepared};
use herg_core::ops::{Decomposition, PieceSlot};
use herg_core::random::{random_herg, RandomShape};
use herg_core::stranded::corpus::random_colored;
use herg_core::stranded::decomp::{analyze_colored_piece, melon_template, small_pieces, standing_condition};
use herg_core::stranded::ColoredDecomposition;

use crate::failure::Failure;
use crate::report::print_json;

/// Writes `files` under `out` (or prints them) and prints an index with a
/// digest over names and contents.
fn emit(files: BTreeMap<String, String>, out: Option<&Path>, extra: serde_json::Value) -> Result<(), Failure> {
    let mut hasher = Sha256::new();
    for (name, text) in &files {
        hasher.update(name.as_bytes());
        hasher.update([0]);
        hasher.update(text.as_bytes());
        hasher.update([0]);
    }
    let digest = format!("{:x}", hasher.finalize());
    match out {
        Some(dir) => {
            for (name, text) in &files {
                let path = dir.join(name);
                if let Some(parent) = path.parent() {
                    std::fs::create_dir_all(parent).map_err(|e| Failure::input(format!("{}: {e}", parent.display())))?;
                }
                std::fs::write(&path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            }
            print_json(&json!({ "files": files.keys().collect::<Vec<_>>(), "digest": digest, "instances": extra }));
        }
        None => print_json(&json!({ "files": files, "digest": digest, "instances": extra })),
    }
    Ok(())
}

pub fn herg(
    seed: u64,
    count: usize,
    vertices: usize,
    edges: usize,
    half_ribbons: usize,
    out: Option<&Path>,
) -> Result<(), Failure> {
    if vertices == 0 || edges == 0 || edges > 63 {
        return Err(Failure::input("need at least one vertex and 1..=63 edges"));
    }
    let shape = RandomShape {
        max_vertices: vertices,
        max_edges: edges,
        max_half_ribbons: half_ribbons,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let files = (0..count)
        .map(|i| {
            let g = random_herg(&mut rng, shape, &format!("r{i}"));
            (format!("r{i}.herg"), g.to_herg_text())
        })
        .collect();
    emit(files, out, json!(count))
}

pub fn colored(seed: u64, count: usize, rank: usize, out: Option<&Path>) -> Result<(), Failure> {
    if !(2..=8).contains(&rank) {
        return Err(Failure::input("rank must be in 2..=8"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let files = (0..count)
        .map(|i| {
            let g = random_colored(&mut rng, rank, &format!("c{i}"));
            (format!("c{i}.ctg"), g.to_ctg_text())
        })
        .collect();
    emit(files, out, json!(count))
}

pub fn manifests(seed: u64, count: usize, colored: bool, out: &Path) -> Result<(), Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut files = BTreeMap::new();
    let mut index = Vec::new();
    if colored {
        let pieces = small_pieces(3);
        let admissible: Vec<_> = pieces
            .iter()
            .filter(|p| analyze_colored_piece(p).is_ok_and(|s| standing_condition(&s)))
            .collect();
        for i in 0..count {
            let t = melon_template(3, rng.gen_range(1..=4));
            let chosen: Vec<_> = t
                .free_edges()
                .iter()
                .map(|&e| (*admissible.choose(&mut rng).expect("non-empty")).recolored(t.edges[e].color))
                .collect();
            let d = ColoredDecomposition::new(t.clone(), chosen)?;
            let dir = format!("m{i}");
            let mut manifest = format!("template {dir}/template.ctg\n");
            files.insert(format!("{dir}/template.ctg"), t.to_ctg_text());
            for (&e, p) in t.free_edges().iter().zip(&d.pieces) {
                let id = &t.edges[e].id;
                files.insert(format!("{dir}/piece_{id}.ctg"), p.graph.to_ctg_text());
                manifest.push_str(&format!("piece {id} {dir}/piece_{id}.ctg\n"));
            }
            files.insert(format!("{dir}.manifest"), manifest);
            index.push(json!({ "manifest": format!("{dir}.manifest"), "standing_condition": true }));
        }
    } else {
        let templates = template_family();
        let pieces = screened_pieces();
        for i in 0..count {
            let t = templates.choose(&mut rng).expect("non-empty family");
            let slots: Vec<PieceSlot> = t
                .edges
                .iter()
                .map(|_| PieceSlot {
                    piece: pieces.choose(&mut rng).expect("non-empty").clone(),
                    flip: false,
                })
                .collect();
            let d = Decomposition::new(t.clone(), slots)?;
            let p = Prepared::new(&d)?;
            let screened = d
                .slots
                .iter()
                .all(|s| analyze_piece(&s.piece).is_ok_and(|st| screen(&st).passes()));
            let dir = format!("m{i}");
            let mut manifest = format!("template {dir}/template.herg\n");
            files.insert(format!("{dir}/template.herg"), t.to_herg_text());
            for (e, s) in t.edges.iter().zip(&d.slots) {
                files.insert(format!("{dir}/piece_{}.herg", e.id), s.piece.graph.to_herg_text());
                manifest.push_str(&format!("piece {} {dir}/piece_{}.herg\n", e.id, e.id));
            }
            files.insert(format!("{dir}.manifest"), manifest);
            index.push(json!({
                "manifest": format!("{dir}.manifest"),
                "screened": screened,
                "conforming": is_conforming(&p),
                "correction_free": p.correction_free(),
            }));
        }
    }
    emit(files, Some(out), json!(index))
}
