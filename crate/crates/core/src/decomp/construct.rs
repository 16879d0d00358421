use super::{validate_decomposition, HDecomposition};
use crate::error::{Error, Result};
use crate::graph::{generate, product, FamilySpec, Graph, GraphBuilder, ProductKind};

fn require_valid(g: &Graph, d: &HDecomposition, what: &str) -> Result<()> {
    match validate_decomposition(g, d).first() {
        None => Ok(()),
        Some(v) => Err(Error::Precondition(format!("{what} is not a valid decomposition: {v}"))),
    }
}

/// Replaces each bag `W` by `W × V(G2)`, in the product id space `a * n2 + v`.
/// The result is valid for all three products of `g1` and `g2`.
pub fn lift_product(g1: &Graph, dec: &HDecomposition, g2: &Graph) -> Result<HDecomposition> {
    require_valid(g1, dec, "input")?;
    let n2 = g2.n();
    let bags = dec
        .bags
        .iter()
        .map(|w| w.iter().flat_map(|&a| (0..n2).map(move |v| a * n2 + v)).collect())
        .collect();
    Ok(HDecomposition::new(dec.host.clone(), bags))
}

/// Replaces each bag by the union of closed neighbourhoods of its vertices,
/// giving a decomposition of the square of `g`.
pub fn lift_square(g: &Graph, dec: &HDecomposition) -> Result<HDecomposition> {
    require_valid(g, dec, "input")?;
    let bags = dec
        .bags
        .iter()
        .map(|w| {
            let mut b = w.clone();
            for &v in w {
                b.extend_from_slice(g.neighbors(v));
            }
            b
        })
        .collect();
    Ok(HDecomposition::new(dec.host.clone(), bags))
}

/// Decomposition of the direct product `g1 × g2` from a vertex cover of `g1`
/// and a decomposition of `g2`. The host is a subdivision of `dec2.host`
/// (plus pendant nodes when that host is a single node).
pub fn vc_subdivision_decomp(
    g1: &Graph,
    cover: &[usize],
    g2: &Graph,
    dec2: &HDecomposition,
) -> Result<HDecomposition> {
    require_valid(g2, dec2, "decomposition of the second factor")?;
    let n1 = g1.n();
    let n2 = g2.n();
    if let Some(&c) = cover.iter().find(|&&c| c >= n1) {
        return Err(Error::Parameter(format!("cover vertex {c} out of range")));
    }
    let mut in_cover = vec![false; n1];
    for &c in cover {
        in_cover[c] = true;
    }
    if let Some((u, v)) = g1.edges().find(|&(u, v)| !in_cover[u] && !in_cover[v]) {
        return Err(Error::Precondition(format!("edge {u}-{v} is not covered")));
    }
    if !g1.is_connected() {
        return Err(Error::Precondition("first factor must be connected".into()));
    }
    let sq = lift_square(g2, dec2)?;
    let cover_ids: Vec<usize> = (0..n1).filter(|&a| in_cover[a]).collect();
    let mut bags: Vec<Vec<usize>> = sq
        .bags
        .iter()
        .map(|w| {
            cover_ids
                .iter()
                .flat_map(|&a| w.iter().map(move |&v| a * n2 + v))
                .collect()
        })
        .collect();
    let original = bags.len();
    let mut host_adj: Vec<Vec<usize>> = (0..original).map(|x| sq.host.neighbors(x).to_vec()).collect();
    for l in (0..n1).filter(|&a| !in_cover[a]) {
        for v in 0..n2 {
            let mut nb: Vec<usize> = g1
                .neighbors(l)
                .iter()
                .flat_map(|&a| g2.neighbors(v).iter().map(move |&u| a * n2 + u))
                .collect();
            nb.sort_unstable();
            let x = (0..original)
                .find(|&x| nb.iter().all(|p| bags[x].binary_search(p).is_ok()))
                .expect("neighbourhood is a clique of the lifted square");
            let z = bags.len();
            match host_adj[x].iter().copied().min() {
                Some(y) => {
                    for (a, b) in [(x, y), (y, x)] {
                        let slot = host_adj[a].iter_mut().find(|t| **t == b).expect("host edge");
                        *slot = z;
                    }
                    host_adj.push(vec![x, y]);
                }
                None => {
                    host_adj[x].push(z);
                    host_adj.push(vec![x]);
                }
            }
            let mut bag = bags[x].clone();
            bag.push(l * n2 + v);
            bag.sort_unstable();
            bags.push(bag);
        }
    }
    let mut host = GraphBuilder::new(bags.len());
    for (a, ns) in host_adj.iter().enumerate() {
        for &b in ns {
            if a < b {
                host.add_edge(a, b)?;
            }
        }
    }
    Ok(HDecomposition::new(host.build(), bags))
}

/// The graph `G(k, n)` strong-producted with itself, with an explicit tree
/// decomposition whose host is three paths joined at a centre node.
pub fn gkn_decomposition(k: usize, n: usize) -> Result<(Graph, HDecomposition)> {
    let g = generate(&FamilySpec::Gkn { k, n })?;
    let prod = product(&g, &g, ProductKind::Strong)?.base;
    let id = |a: usize, b: usize| a * n + b;
    let m = n - k;
    let v = |i: usize| if i == 0 { 0 } else { k + i };
    let clique: Vec<usize> = (1..=k).collect();
    let x: Vec<usize> = (0..n).flat_map(|u| [id(0, u), id(u, 0)]).collect();
    let with_x = |mut b: Vec<usize>| {
        b.extend_from_slice(&x);
        b
    };
    if m == 1 {
        let all = (0..n * n).collect();
        return Ok((prod, HDecomposition::new(Graph::empty(1), vec![all])));
    }
    let mut bags = vec![with_x(
        clique.iter().flat_map(|&a| clique.iter().map(move |&b| id(a, b))).collect(),
    )];
    for i in 1..m {
        bags.push(with_x(clique.iter().flat_map(|&a| [id(a, v(i - 1)), id(a, v(i))]).collect()));
    }
    for i in 1..m {
        bags.push(with_x(clique.iter().flat_map(|&a| [id(v(i - 1), a), id(v(i), a)]).collect()));
    }
    for l in 1..m {
        bags.push(with_x(
            (l - 1..m)
                .flat_map(|s| {
                    [
                        id(v(l - 1), v(s)),
                        id(v(l), v(s)),
                        id(v(s), v(l - 1)),
                        id(v(s), v(l)),
                    ]
                })
                .collect(),
        ));
    }
    let mut host = GraphBuilder::new(3 * (m - 1) + 1);
    for arm in 0..3 {
        let first = arm * (m - 1) + 1;
        host.add_edge(0, first)?;
        for i in first + 1..first + m - 1 {
            host.add_edge(i - 1, i)?;
        }
    }
    Ok((prod, HDecomposition::new(host.build(), bags)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{exact_width, WidthKind};

    fn fam(s: FamilySpec) -> Graph {
        generate(&s).unwrap()
    }

    #[test]
    fn lift_product_of_path() {
        let p4 = fam(FamilySpec::Path(4));
        let k3 = fam(FamilySpec::Complete(3));
        let dec = exact_width(&p4, WidthKind::Tree).unwrap().decomposition;
        let lifted = lift_product(&p4, &dec, &k3).unwrap();
        assert_eq!(lifted.width(), 5);
        for kind in ProductKind::ALL {
            let pg = product(&p4, &k3, kind).unwrap();
            assert!(validate_decomposition(&pg.base, &lifted).is_empty());
        }
        let k1 = fam(FamilySpec::Complete(1));
        assert_eq!(lift_product(&p4, &dec, &k1).unwrap().width(), 1);
    }

    #[test]
    fn lift_rejects_invalid_input() {
        let p3 = fam(FamilySpec::Path(3));
        let bad = HDecomposition::new(fam(FamilySpec::Path(2)), vec![vec![0, 1], vec![2]]);
        assert!(matches!(lift_product(&p3, &bad, &p3), Err(Error::Precondition(_))));
        assert!(matches!(lift_square(&p3, &bad), Err(Error::Precondition(_))));
    }

    #[test]
    fn square_examples() {
        let p5 = fam(FamilySpec::Path(5));
        let dec = exact_width(&p5, WidthKind::Path).unwrap().decomposition;
        let sq = lift_square(&p5, &dec).unwrap();
        assert!(validate_decomposition(&crate::graph::square(&p5), &sq).is_empty());
        assert!(sq.width() <= 3);
        let k4 = fam(FamilySpec::Complete(4));
        let dk = HDecomposition::new(Graph::empty(1), vec![vec![0, 1, 2, 3]]);
        assert_eq!(lift_square(&k4, &dk).unwrap().bags, dk.bags);
        let c6 = fam(FamilySpec::Cycle(6));
        let dc = exact_width(&c6, WidthKind::Tree).unwrap().decomposition;
        let sc = lift_square(&c6, &dc).unwrap();
        assert!(validate_decomposition(&crate::graph::square(&c6), &sc).is_empty());
        assert!(sc.width() <= 8);
    }

    #[test]
    fn vc_subdivision_examples() {
        let s3 = fam(FamilySpec::Star(3));
        let centre = (0..4).find(|&v| s3.degree(v) == 3).unwrap();
        let p4 = fam(FamilySpec::Path(4));
        let dec = exact_width(&p4, WidthKind::Path).unwrap().decomposition;
        let d = vc_subdivision_decomp(&s3, &[centre], &p4, &dec).unwrap();
        let target = product(&s3, &p4, ProductKind::Direct).unwrap().base;
        assert!(validate_decomposition(&target, &d).is_empty());
        assert!(d.width() <= 6);
        assert!(d.host_is_path());

        let k2 = fam(FamilySpec::Complete(2));
        let dk = HDecomposition::new(Graph::empty(1), vec![vec![0, 1]]);
        let d = vc_subdivision_decomp(&k2, &[0], &k2, &dk).unwrap();
        let target = product(&k2, &k2, ProductKind::Direct).unwrap().base;
        assert!(validate_decomposition(&target, &d).is_empty());
        assert!(d.host_is_path());
    }

    #[test]
    fn vc_subdivision_errors() {
        let p4 = fam(FamilySpec::Path(4));
        let dec = exact_width(&p4, WidthKind::Tree).unwrap().decomposition;
        assert!(matches!(vc_subdivision_decomp(&p4, &[1], &p4, &dec), Err(Error::Precondition(_))));
        let two = fam(FamilySpec::DisjointUnion(vec![FamilySpec::Path(2), FamilySpec::Path(2)]));
        assert!(matches!(vc_subdivision_decomp(&two, &[0, 2], &p4, &dec), Err(Error::Precondition(_))));
    }

    #[test]
    fn gkn_examples() {
        for (k, n) in [(1, 4), (0, 3), (2, 5), (2, 3), (3, 7), (0, 1)] {
            let (g, d) = gkn_decomposition(k, n).unwrap();
            assert_eq!(g.n(), n * n);
            assert!(validate_decomposition(&g, &d).is_empty(), "(k, n) = ({k}, {n})");
            assert!(d.host_is_tree());
            assert!(d.bags.iter().all(|b| b.len() <= 6 * n + (k + 1) * (k + 1)));
        }
        assert!(gkn_decomposition(3, 2).is_err());
    }
}
