use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use herg_core::decomp::corpus::template_family;
use herg_core::decomp::Prepared;
use herg_core::decomp::expansion::check_product_lemma;
use herg_core::invariants::{herg_z, EdgeWeights};
use herg_core::ops::{Decomposition, Piece};
use herg_core::random::{random_herg, RandomShape};
use herg_core::stranded::invariant::{invariant_t, Alphas};
use herg_core::stranded::melon;

fn ribbon_state_sum(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let shape = RandomShape { max_vertices: 4, max_edges: 8, max_half_ribbons: 2 };
    let g = random_herg(&mut rng, shape, "b");
    let w = EdgeWeights::common();
    c.bench_function("herg_z_random_8_edges", |b| b.iter(|| herg_z(&g, &w).unwrap()));
}

fn colored_state_sum(c: &mut Criterion) {
    let g = melon(3);
    let a = Alphas::ones();
    c.bench_function("invariant_t_melon_rank3", |b| b.iter(|| invariant_t(&g, &a).unwrap()));
}

fn product_expansion(c: &mut Criterion) {
    let t = template_family().into_iter().max_by_key(|t| t.num_edges()).unwrap();
    let p = Prepared::new(&Decomposition::uniform(t, &Piece::identity()).unwrap()).unwrap();
    c.bench_function("product_expansion_identity_pieces", |b| b.iter(|| check_product_lemma(&p).unwrap()));
}

criterion_group!(benches, ribbon_state_sum, colored_state_sum, product_expansion);
criterion_main!(benches);
