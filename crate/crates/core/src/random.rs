//! Seeded random half-edged ribbon graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ribbon::graph::RawGraph;
use crate::ribbon::HalfEdgedRibbonGraph;

/// Shape bounds for [`random_herg`].
#[derive(Clone, Copy, Debug)]
pub struct RandomShape {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_half_ribbons: usize,
}

impl Default for RandomShape {
    fn default() -> Self {
        RandomShape {
            max_vertices: 3,
            max_edges: 6,
            max_half_ribbons: 2,
        }
    }
}

/// Random rotations and twists: every edge end and half-ribbon lands on a
/// uniformly chosen vertex, and each rotation is shuffled.
pub fn random_herg(rng: &mut ChaCha8Rng, shape: RandomShape, name: &str) -> HalfEdgedRibbonGraph {
    let nv = rng.gen_range(1..=shape.max_vertices.max(1));
    let ne = rng.gen_range(1..=shape.max_edges.max(1));
    let nh = rng.gen_range(0..=shape.max_half_ribbons);
    let mut rotations: Vec<Vec<String>> = vec![Vec::new(); nv];
    let mut raw = RawGraph::new(name);
    for i in 0..ne {
        let id = format!("e{i}");
        for end in [format!("{id}.1"), format!("{id}.2")] {
            rotations[rng.gen_range(0..nv)].push(end);
        }
        raw = raw.edge(&id, rng.gen_bool(0.3));
    }
    for i in 0..nh {
        rotations[rng.gen_range(0..nv)].push(format!("h{i}"));
    }
    for (i, rot) in rotations.iter_mut().enumerate() {
        rot.shuffle(rng);
        let refs: Vec<&str> = rot.iter().map(String::as_str).collect();
        raw = raw.vertex(&format!("v{i}"), &refs);
    }
    raw.build().expect("every end is placed once")
}

/// `count` graphs from one seed, resampling any that `accept` rejects.
pub fn random_family(
    seed: u64,
    count: usize,
    shape: RandomShape,
    accept: impl Fn(&HalfEdgedRibbonGraph) -> bool,
) -> Vec<HalfEdgedRibbonGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| loop {
            let g = random_herg(&mut rng, shape, &format!("r{i}"));
            if accept(&g) {
                break g;
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_bounded() {
        let a = random_family(5, 20, RandomShape::default(), |_| true);
        let b = random_family(5, 20, RandomShape::default(), |_| true);
        assert_eq!(a, b);
        assert!(a.iter().all(|g| g.num_edges() <= 6 && g.num_half_ribbons() <= 2));
        let closed = RandomShape {
            max_half_ribbons: 0,
            ..RandomShape::default()
        };
        assert!(random_family(5, 20, closed, |_| true).iter().all(|g| g.num_half_ribbons() == 0));
    }
}
