use std::collections::BTreeSet;

use proptest::prelude::*;
use prodwidth::decomp::{exact_width_with_limit, lift_product, treewidth, WidthKind};
use prodwidth::graph::{canonical_form, enumerate_graphs, generate, product, FamilySpec, Graph, GraphBuilder, ProductKind};
use prodwidth::minors::{
    bipartite_subgraph_lb, daddy_longlegs, dfs_cover, double_cover, find_minor, find_minor_with_limit, glm_pipeline,
    grid_embedding, path_and_cover, path_number, validate_model,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fam(s: FamilySpec) -> Graph {
    generate(&s).unwrap()
}

fn connected(max: usize) -> Vec<Graph> {
    (1..=max).flat_map(enumerate_graphs).filter(|g| g.is_connected()).collect()
}

/// Non-isomorphic trees up to `max` vertices, grown leaf by leaf.
fn trees(max: usize) -> Vec<Graph> {
    let mut level = vec![Graph::empty(1)];
    let mut all = level.clone();
    for _ in 2..=max {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..t.n() {
                let mut b = GraphBuilder::from(t);
                let u = b.add_vertex();
                b.add_edge(v, u).unwrap();
                let g = b.build();
                if seen.insert(canonical_form(&g).0) {
                    next.push(g);
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all
}

fn random_connected(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    loop {
        let mut b = GraphBuilder::new(n);
        for v in 1..n {
            let u = rng.gen_range(0..v);
            b.add_edge(u, v).unwrap();
        }
        for u in 0..n {
            for v in u + 1..n {
                if !b.has_edge(u, v) && rng.gen_bool(p) {
                    b.add_edge(u, v).unwrap();
                }
            }
        }
        let g = b.build();
        if g.is_connected() {
            return g;
        }
    }
}

#[test]
fn star_times_path_has_a_four_cycle_minor() {
    let g = product(&fam(FamilySpec::Star(2)), &fam(FamilySpec::Path(4)), ProductKind::Direct).unwrap().base;
    let c4 = fam(FamilySpec::CompleteMultipartite {
        parts: vec![2, 2],
        overlay: 0,
    });
    let m = find_minor(&g, &c4).unwrap().unwrap();
    assert!(validate_model(&g, &c4, &m).is_empty());
}

#[test]
fn complete_bipartite_minor_in_product_with_path() {
    for g in connected(7) {
        let (dll, _) = daddy_longlegs(&g).unwrap();
        for k in 1..=dll.min(2) {
            let host = product(&g, &fam(FamilySpec::Path(2 * k)), ProductKind::Direct).unwrap().base;
            let kkk = fam(FamilySpec::complete_bipartite(k, k));
            let m = find_minor_with_limit(&host, &kkk, 28).unwrap();
            let m = m.unwrap_or_else(|| panic!("no K_{{{k},{k}}} minor for {g:?}"));
            assert!(validate_model(&host, &kkk, &m).is_empty());
        }
    }
}

#[test]
fn dfs_cover_inequality_exhaustive() {
    for g in connected(8) {
        let cover = dfs_cover(&g).unwrap();
        assert!(g
            .edges()
            .all(|(u, v)| cover.binary_search(&u).is_ok() || cover.binary_search(&v).is_ok()));
        let (dll, _) = daddy_longlegs(&g).unwrap();
        let pn = path_number(&g).unwrap();
        assert!(cover.len() <= ((dll + 1) * pn).div_ceil(2), "{g:?}");
        assert!(path_and_cover(&g).unwrap().tau <= cover.len());
    }
}

#[test]
fn dfs_cover_inequality_random_larger() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let n = rng.gen_range(9..=10);
        let p = rng.gen_range(0.05..0.5);
        let g = random_connected(&mut rng, n, p);
        let cover = dfs_cover(&g).unwrap();
        let (dll, _) = daddy_longlegs(&g).unwrap();
        let pn = path_number(&g).unwrap();
        assert!(cover.len() <= ((dll + 1) * pn).div_ceil(2), "{g:?}");
    }
}

#[test]
fn tree_leaf_bound() {
    let all = trees(12);
    assert_eq!(all.iter().filter(|t| t.n() == 12).count(), 551);
    for t in all {
        let leaves = (0..t.n()).filter(|&v| t.degree(v) <= 1).count();
        let pn = path_number(&t).unwrap();
        assert!(t.n() <= (leaves * pn).div_ceil(2), "{t:?}");
    }
}

#[test]
fn double_cover_width_ties() {
    for g in connected(6) {
        let dc = double_cover(&g).base;
        let tw = treewidth(&g);
        let tw2 = exact_width_with_limit(&dc, WidthKind::Tree, 14).unwrap().value;
        let k2 = fam(FamilySpec::Complete(2));
        let d = exact_width_with_limit(&g, WidthKind::Tree, 14).unwrap().decomposition;
        assert!(lift_product(&g, &d, &k2).unwrap().width() <= 2 * tw + 1);
        assert!(tw2 <= 2 * tw + 1);
        let lb = bipartite_subgraph_lb(&g);
        assert!(tw2 >= lb.treewidth.unwrap());
    }
}

#[test]
fn direct_product_of_paths_contains_a_grid() {
    grid_embedding(1).unwrap().validate().unwrap();
    for n in 2..=3 {
        let e = grid_embedding(n).unwrap();
        e.validate().unwrap();
        let host = e.host().base;
        assert!(exact_width_with_limit(&host, WidthKind::Tree, 25).unwrap().value >= n);
    }
}

#[test]
fn pipeline_outputs_validate_on_random_systems() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    for _ in 0..40 {
        let n = rng.gen_range(6..=10);
        let g = random_connected(&mut rng, n, 0.35);
        let l = rng.gen_range(2..=3);
        let mut used = vec![false; n];
        let mut trunks: Vec<Vec<usize>> = Vec::new();
        for _ in 0..l {
            let free: Vec<usize> = (0..n).filter(|&v| !used[v]).collect();
            let mut p = vec![free[rng.gen_range(0..free.len())]];
            used[p[0]] = true;
            for _ in 0..rng.gen_range(1..=2) {
                let last = *p.last().unwrap();
                let next: Vec<usize> = g.neighbors(last).iter().copied().filter(|&u| !used[u]).collect();
                if next.is_empty() {
                    break;
                }
                let u = next[rng.gen_range(0..next.len())];
                used[u] = true;
                p.push(u);
            }
            trunks.push(p);
        }
        let k = rng.gen_range(1..=2);
        let out = glm_pipeline(&g, &trunks, k).unwrap();
        assert!(out.report.is_ok(), "{:?}", out.report);
        assert!(2 * out.lifted.x.len() >= out.lifted.pairs);
        for l in &out.lifted.linkages {
            let src = out.system.linkages.iter().find(|s| (s.i, s.j) == (l.i, l.j)).unwrap();
            for p in &l.paths {
                let proj: Vec<usize> = p.iter().map(|v| v / 2).collect();
                assert!(src.paths.contains(&proj));
            }
        }
        checked += out.lifted.pairs;
    }
    assert!(checked > 0);
}

proptest! {
    #[test]
    fn dll_model_is_valid(n in 1usize..9, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_connected(&mut rng, n, 0.3);
        let (k, m) = daddy_longlegs(&g).unwrap();
        prop_assert!(validate_model(&g, &fam(FamilySpec::DaddyLonglegs(k)), &m).is_empty());
    }
}
