use prodwidth::decomp::{
    exact_width, exact_width_with_limit, gkn_decomposition, lift_product, validate_decomposition, vc_subdivision_decomp,
    WidthKind,
};
use prodwidth::graph::{enumerate_graphs, generate, product, FamilySpec, Graph, ProductKind};

fn fam(s: FamilySpec) -> Graph {
    generate(&s).unwrap()
}

fn min_vertex_cover(g: &Graph) -> Vec<usize> {
    let n = g.n();
    (0u32..1 << n)
        .filter(|s| g.edges().all(|(u, v)| s >> u & 1 == 1 || s >> v & 1 == 1))
        .min_by_key(|s| (s.count_ones(), *s))
        .map(|s| (0..n).filter(|v| s >> v & 1 == 1).collect())
        .unwrap()
}

#[test]
fn grid_treewidth() {
    for n in 1..=4 {
        let p = fam(FamilySpec::Path(n));
        let g = product(&p, &p, ProductKind::Cartesian).unwrap().base;
        let r = exact_width_with_limit(&g, WidthKind::Tree, 16).unwrap();
        assert_eq!(r.value, if n == 1 { 0 } else { n });
        assert!(validate_decomposition(&g, &r.decomposition).is_empty());
    }
}

#[test]
fn tree_width_at_most_path_width() {
    for n in 1..=6 {
        for g in enumerate_graphs(n) {
            let t = exact_width(&g, WidthKind::Tree).unwrap().value;
            let p = exact_width(&g, WidthKind::Path).unwrap().value;
            assert!(t <= p);
        }
    }
}

#[test]
fn strong_with_clique_is_tight() {
    for len in 2..=5 {
        for m in 1..=3 {
            let p = fam(FamilySpec::Path(len));
            let k = fam(FamilySpec::Complete(m));
            let g = product(&p, &k, ProductKind::Strong).unwrap().base;
            let d = exact_width(&p, WidthKind::Tree).unwrap().decomposition;
            let lifted = lift_product(&p, &d, &k).unwrap();
            assert_eq!(lifted.width(), 2 * m - 1);
            assert_eq!(exact_width_with_limit(&g, WidthKind::Tree, 16).unwrap().value, 2 * m - 1);
        }
    }
}

#[test]
fn lift_product_sweep() {
    let c4 = fam(FamilySpec::Cycle(4));
    for n in 1..=5 {
        for g1 in enumerate_graphs(n) {
            let d = exact_width(&g1, WidthKind::Tree).unwrap();
            let lifted = lift_product(&g1, &d.decomposition, &c4).unwrap();
            assert!(lifted.width() + 1 <= 4 * (d.value + 1));
            for kind in ProductKind::ALL {
                let pg = product(&g1, &c4, kind).unwrap();
                assert!(validate_decomposition(&pg.base, &lifted).is_empty());
            }
        }
    }
}

#[test]
fn vc_subdivision_bound_on_connected_pairs() {
    let connected: Vec<Graph> = (1..=5)
        .flat_map(enumerate_graphs)
        .filter(|g| g.is_connected())
        .collect();
    for g1 in &connected {
        let cover = min_vertex_cover(g1);
        for g2 in &connected {
            let d2 = exact_width(g2, WidthKind::Tree).unwrap();
            let d = vc_subdivision_decomp(g1, &cover, g2, &d2.decomposition).unwrap();
            let target = product(g1, g2, ProductKind::Direct).unwrap().base;
            assert!(validate_decomposition(&target, &d).is_empty());
            let bound = cover.len() * (d2.value + 1) * (g2.max_degree() + 1);
            assert!(d.width() <= bound);
            let tw = exact_width_with_limit(&target, WidthKind::Tree, 25).unwrap().value;
            assert!(tw <= bound);
        }
    }
}

#[test]
fn gkn_cross_check() {
    let (g, d) = gkn_decomposition(2, 5).unwrap();
    assert!(validate_decomposition(&g, &d).is_empty());
    let tw = exact_width_with_limit(&g, WidthKind::Tree, 25).unwrap().value;
    assert!(tw >= 4 && tw <= d.width(), "tw = {tw}, construction width = {}", d.width());
}
