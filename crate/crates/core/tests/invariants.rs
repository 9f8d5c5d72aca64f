use herg_core::invariants::{
    br_r, convert_check, convert_check_closed, deletion_contraction, herg_z, ordinary_edges, tutte, EdgeWeights,
};
use herg_core::poly::parse_poly;
use herg_core::random::{random_family, RandomShape};
use herg_core::ribbon::parse_graph;

fn closed() -> RandomShape {
    RandomShape {
        max_half_ribbons: 0,
        ..RandomShape::default()
    }
}

#[test]
fn conversion_on_random_half_edged_graphs() {
    for g in random_family(99, 25, RandomShape::default(), |_| true) {
        assert!(convert_check(&g).unwrap().holds, "{}", g.to_herg_text());
    }
}

#[test]
fn conversion_on_random_closed_graphs() {
    for g in random_family(98, 25, closed(), |_| true) {
        assert!(convert_check_closed(&g).unwrap().holds, "{}", g.to_herg_text());
    }
}

#[test]
fn deletion_contraction_on_random_graphs() {
    for g in random_family(97, 20, closed(), |g| !ordinary_edges(g).is_empty()) {
        for e in ordinary_edges(&g) {
            let (whole, split) = deletion_contraction(&g, &e).unwrap();
            assert_eq!(whole, split, "{} edge {e}", g.to_herg_text());
        }
    }
}

#[test]
fn small_closed_graphs() {
    let lp = parse_graph("graph l\nvertex v: e.1 e.2\nedge e: twist=0\n").unwrap();
    assert_eq!(br_r(&lp).unwrap(), parse_poly("1 + y").unwrap());
    let twisted = parse_graph("graph l\nvertex v: e.1 e.2\nedge e: twist=1\n").unwrap();
    assert_eq!(br_r(&twisted).unwrap(), parse_poly("1 + y*z*w").unwrap());
    let bridge = parse_graph("graph b\nvertex u: e.1\nvertex v: e.2\nedge e: twist=0\n").unwrap();
    assert_eq!(tutte(&bridge).unwrap(), parse_poly("x").unwrap());
}

#[test]
fn half_ribbon_on_a_single_vertex() {
    let g = parse_graph("graph h\nvertex v: h1\n").unwrap();
    let z = herg_z(&g, &EdgeWeights::common()).unwrap();
    assert_eq!(z.len(), 1);
}
