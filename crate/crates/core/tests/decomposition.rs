use herg_core::decomp::corpus::{expansion_corpus, prepare_all, template_family};
use herg_core::decomp::expansion::{check_product_lemma, verify_counting_lemmas};
use herg_core::decomp::theorem::verify_theorem;
use herg_core::decomp::Prepared;
use herg_core::invariants::{herg_z, EdgeWeights};
use herg_core::ops::{assemble_hat, two_sum, Decomposition, Piece};
use herg_core::ribbon::{parse_graph, stats};

#[test]
fn identity_pieces_reproduce_the_template() {
    for t in template_family() {
        let hat = assemble_hat(&Decomposition::uniform(t.clone(), &Piece::identity()).unwrap()).unwrap();
        let w = EdgeWeights::common();
        assert_eq!(herg_z(&hat, &w).unwrap(), herg_z(&t, &w).unwrap(), "{}", t.name);
    }
}

#[test]
fn sampled_corpus_expansion_and_counting() {
    let instances: Vec<_> = expansion_corpus(5, 30).into_iter().step_by(10).collect();
    assert!(instances.len() >= 50, "{}", instances.len());
    for (inst, p) in instances.iter().zip(prepare_all(&instances).unwrap()) {
        assert!(check_product_lemma(&p).unwrap().holds, "{}", inst.name);
        assert!(verify_counting_lemmas(&p).holds(), "{}", inst.name);
    }
}

#[test]
fn theorem_with_identity_pieces() {
    let t = parse_graph("graph t\nvertex u: a.1 h1 b.1\nvertex w: b.2 a.2\nedge a: twist=0\nedge b: twist=1\n").unwrap();
    let p = Prepared::new(&Decomposition::uniform(t, &Piece::identity()).unwrap()).unwrap();
    assert!(p.correction_free());
    assert!(verify_theorem(&p).unwrap().holds());
}

#[test]
fn two_sum_counts() {
    let g = parse_graph("graph g\nvertex u: a.1 b.1\nvertex w: b.2 a.2\nedge a: twist=0\nedge b: twist=0\n").unwrap();
    let s = two_sum(&g, "a", &g, "a").unwrap();
    let (sg, ss) = (stats(&g), stats(&s));
    assert_eq!(ss.v, 2 * sg.v - 2);
    assert_eq!(s.num_edges(), 2 * g.num_edges() - 2);
}
