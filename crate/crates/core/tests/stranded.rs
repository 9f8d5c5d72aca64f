use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use herg_core::stranded::corpus::{contraction_sweep, melon_corpus, random_colored};
use herg_core::stranded::decomp::{small_pieces, verify_prop_stranded, ColoredPiece};
use herg_core::stranded::invariant::{expanded_form, invariant_t, Alphas};
use herg_core::stranded::{colored_stats, colored_two_sum, melon, parse_colored, ColoredDecomposition};

#[test]
fn one_edge_template_satisfies_every_identity() {
    for (name, d) in melon_corpus(3).iter().filter(|(_, d)| d.template.num_free_edges() == 1) {
        let r = verify_prop_stranded(name, d).unwrap();
        assert!(r.holds(), "{name}");
    }
}

#[test]
fn edge_like_pieces_satisfy_every_identity() {
    let mut seen = 0;
    for (name, d) in melon_corpus(3) {
        let r = verify_prop_stranded(&name, &d).unwrap();
        assert!(!r.skipped());
        assert_eq!(r.proposition, Some(r.counting.as_ref().unwrap().holds()), "{name}");
        if r.edge_like {
            seen += 1;
            assert!(r.holds(), "{name}");
        }
    }
    assert!(seen > 0);
}

#[test]
fn open_piece_breaks_face_counting_on_the_melon() {
    let piece = small_pieces(3).into_iter().find(|p| p.graph.name == "uw1").unwrap();
    let d = ColoredDecomposition::uniform(melon(3), &piece).unwrap();
    let r = verify_prop_stranded("melon x uw1", &d).unwrap();
    let c = r.counting.unwrap();
    assert!(c.violations.get("internal_faces").copied().unwrap_or(0) > 0);
    assert_eq!(c.violations.get("components").copied().unwrap_or(0), 0);
    assert_eq!(c.violations.get("open_faces").copied().unwrap_or(0), 0);
}

#[test]
fn dipole_insertion_keeps_the_identities() {
    let d = ColoredDecomposition::uniform(melon(3), &ColoredPiece::dipole(3, 0)).unwrap();
    let r = verify_prop_stranded("melon x dipole", &d).unwrap();
    assert!(r.closure_split.iter().all(|&b| b));
    assert!(r.standing_condition);
}

#[test]
fn contraction_preserves_boundary() {
    assert!(contraction_sweep(77, 30, 3).iter().all(|c| c.holds()));
}

#[test]
fn two_sum_of_melons_is_tensor() {
    let m = melon(3);
    let s = colored_two_sum(&m, "c2", &m, "c2").unwrap();
    let st = colored_stats(&s);
    assert_eq!(st.k, 1);
    assert_eq!(st.c_bd, 0);
    let (lhs, rhs) = expanded_form(&s, &Alphas::ones()).unwrap();
    assert_eq!(lhs, rhs);
}

proptest! {
    #[test]
    fn random_colored_graphs_round_trip(seed in 0u64..500) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_colored(&mut rng, 3, "g");
        let back = parse_colored(&g.to_ctg_text()).unwrap();
        prop_assert_eq!(&back, &g);
        let t = invariant_t(&g, &Alphas::ones()).unwrap();
        prop_assert!(!t.is_zero());
    }
}
