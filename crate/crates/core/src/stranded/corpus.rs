//! Melon-derived decompositions and random colored tensor graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::census::colored_boundary;
use super::decomp::{melon_template, small_pieces, ColoredDecomposition};
use super::graph::{ColoredBuilder, ColoredTensorGraph, Polarity};
use super::strands::{contract_colored, StrandedGraph};

/// Every melon-derived template of the given rank (1..=rank+1 edges kept)
/// with every piece of at most two edges, placed uniformly.
pub fn melon_corpus(rank: usize) -> Vec<(String, ColoredDecomposition)> {
    let pieces = small_pieces(rank);
    let mut out = Vec::new();
    for keep in (1..=rank + 1).rev() {
        let t = melon_template(rank, keep);
        for p in &pieces {
            let name = format!("{}x{}", t.name, p.graph.name);
            out.push((name, ColoredDecomposition::uniform(t.clone(), p).expect("colors match")));
        }
    }
    out
}

/// A bipartite tensor graph: each color is a random partial matching between
/// the two sides, unmatched legs become half-edges. Resampled until it has at
/// least one edge and one half-edge.
pub fn random_colored(rng: &mut ChaCha8Rng, rank: usize, name: &str) -> ColoredTensorGraph {
    loop {
        let plus = rng.gen_range(1..=3usize);
        let minus = rng.gen_range(1..=3usize);
        let mut b = ColoredBuilder::new(name, rank).bipartite();
        let pid = |i: usize| format!("p{i}");
        let mid = |i: usize| format!("q{i}");
        for i in 0..plus {
            b = b.vertex(&pid(i), Some(Polarity::Plus));
        }
        for i in 0..minus {
            b = b.vertex(&mid(i), Some(Polarity::Minus));
        }
        let mut halves = 0;
        for c in 0..=rank {
            let mut others: Vec<usize> = (0..minus).collect();
            others.shuffle(rng);
            let mut matched = vec![false; minus];
            for i in 0..plus {
                match others.pop().filter(|_| rng.gen_bool(0.7)) {
                    Some(j) => {
                        matched[j] = true;
                        b = b.edge(&format!("e{c}_{i}"), &pid(i), &mid(j), c);
                    }
                    None => {
                        halves += 1;
                        b = b.half(&format!("h{c}_{}", pid(i)), &pid(i), c);
                    }
                }
            }
            for j in (0..minus).filter(|&j| !matched[j]) {
                halves += 1;
                b = b.half(&format!("h{c}_{}", mid(j)), &mid(j), c);
            }
        }
        let g = b.build().expect("proper by construction");
        if halves > 0 && !g.edges.is_empty() {
            return g;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ContractionCheck {
    pub graph: String,
    pub edge: String,
    pub boundary_kept: bool,
    pub internal_faces_kept: bool,
}

impl ContractionCheck {
    pub fn holds(&self) -> bool {
        self.boundary_kept && self.internal_faces_kept
    }
}

/// Contracts one random edge of each of `count` random graphs and compares
/// the strand-level boundary graph and closed faces with the original.
pub fn contraction_sweep(seed: u64, count: usize, rank: usize) -> Vec<ContractionCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let g = random_colored(&mut rng, rank, &format!("rc{i}"));
            let e = g.edges.choose(&mut rng).expect("has edges").id.clone();
            let before = StrandedGraph::from_colored(&g).expect("tensor");
            let after = StrandedGraph::from_colored(&contract_colored(&g, &e).expect("free edge")).expect("tensor");
            ContractionCheck {
                boundary_kept: after.boundary() == colored_boundary(&g),
                internal_faces_kept: after.closed_faces() == before.closed_faces(),
                graph: g.name,
                edge: e,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_graphs_are_tensor_and_reproducible() {
        let mut a = ChaCha8Rng::seed_from_u64(3);
        let mut b = ChaCha8Rng::seed_from_u64(3);
        for i in 0..10 {
            let g = random_colored(&mut a, 3, &format!("g{i}"));
            assert!(g.is_tensor() && !g.halves.is_empty());
            assert_eq!(g, random_colored(&mut b, 3, &format!("g{i}")));
        }
    }

    #[test]
    fn contraction_keeps_boundary() {
        assert!(contraction_sweep(1, 10, 3).iter().all(ContractionCheck::holds));
    }

    #[test]
    fn sweep_size() {
        assert_eq!(melon_corpus(3).len(), 4 * 37);
    }
}
