//! Degeneracy by peeling, the product bound functions and the families that
//! make each bound tight.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{generate, FamilySpec, Graph, GraphBuilder};
use crate::multipartite::{search_embedding, MultipartitePattern};

/// A min-degree elimination order. `degrees[i]` is the degree of `order[i]`
/// at the moment it was removed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenProfile {
    pub d: usize,
    pub order: Vec<usize>,
    pub degrees: Vec<usize>,
}

/// Repeatedly removes a vertex of minimum current degree, lowest id first.
pub fn degeneracy_exact(g: &Graph) -> DegenProfile {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (deg[v], v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut degrees = Vec::with_capacity(n);
    while let Some((d, v)) = queue.pop_first() {
        removed[v] = true;
        order.push(v);
        degrees.push(d);
        for &u in g.neighbors(v) {
            if !removed[u] {
                queue.remove(&(deg[u], u));
                deg[u] -= 1;
                queue.insert((deg[u], u));
            }
        }
    }
    DegenProfile {
        d: degrees.iter().copied().max().unwrap_or(0),
        order,
        degrees,
    }
}

pub fn degeneracy(g: &Graph) -> usize {
    degeneracy_exact(g).d
}

/// Parameters of one factor: degeneracy, maximum degree and a complete
/// bipartite subgraph `K_{s,t}` with `s <= t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactorStats {
    pub d: usize,
    pub delta: usize,
    pub s: usize,
    pub t: usize,
}

impl FactorStats {
    pub fn new(d: usize, delta: usize, s: usize, t: usize) -> Result<FactorStats> {
        let f = FactorStats { d, delta, s, t };
        f.check()?;
        Ok(f)
    }

    /// `1 <= s <= d <= delta` and `s <= t <= delta`.
    pub fn check(&self) -> Result<()> {
        let FactorStats { d, delta, s, t } = *self;
        if s >= 1 && s <= d && d <= delta && s <= t && t <= delta {
            Ok(())
        } else {
            Err(Error::Parameter(format!(
                "factor stats need 1 <= s <= d <= delta and s <= t <= delta, got d={d} delta={delta} s={s} t={t}"
            )))
        }
    }

    /// One entry per Pareto-maximal `K_{s,t}` of `g` (for each `s`, the
    /// largest `t`). Needs at least one edge and at most
    /// [`STATS_SEARCH_LIMIT`] vertices.
    pub fn candidates(g: &Graph) -> Result<Vec<FactorStats>> {
        crate::error::budget("factor stats", g.n(), STATS_SEARCH_LIMIT)?;
        if g.m() == 0 {
            return Err(Error::Parameter("factor stats need a graph with an edge".into()));
        }
        let d = degeneracy(g);
        let delta = g.max_degree();
        let mut out = Vec::new();
        for s in 1..=d {
            let mut t = s - 1;
            while t < delta && search_embedding(g, &MultipartitePattern::bipartite(s, t + 1)).is_some() {
                t += 1;
            }
            if t < s {
                break;
            }
            out.push(FactorStats { d, delta, s, t });
        }
        Ok(out)
    }
}

/// Vertex limit for extracting `(s, t)` from a raw graph.
pub const STATS_SEARCH_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub lower: usize,
    pub upper: usize,
}

fn checked(lower: usize, upper: usize) -> Result<Bounds> {
    if lower > upper {
        return Err(Error::Parameter(format!("lower bound {lower} exceeds upper bound {upper}")));
    }
    Ok(Bounds { lower, upper })
}

pub fn bounds_direct(f1: &FactorStats, f2: &FactorStats) -> Result<Bounds> {
    f1.check()?;
    f2.check()?;
    let lower = (f1.d * f2.d)
        .max((f1.s * f2.t).min(f2.s * f1.t))
        .max(f1.delta.min(f2.delta));
    let upper = (f1.d * f2.delta).min(f2.d * f1.delta);
    checked(lower, upper)
}

/// Degeneracy of `K_{s1,t1} ⊠ K_{s2,t2}`.
pub fn strong_cbg_f(s1: usize, t1: usize, s2: usize, t2: usize) -> usize {
    (s1 + s2 + s1 * s2)
        .max((t1 + t2).min(s1 * (t2 + 1)).min(s2 * (t1 + 1)))
        .max((s1 * t2).min(s2 * t1))
}

pub fn bounds_strong(f1: &FactorStats, f2: &FactorStats) -> Result<Bounds> {
    f1.check()?;
    f2.check()?;
    let lower = (f1.d + f2.d + f1.d * f2.d)
        .max(strong_cbg_f(f1.s, f1.t, f2.s, f2.t))
        .max(f1.delta.min(f2.delta) + 1);
    let upper = f1.d + f2.d + (f1.d * f2.delta).min(f2.d * f1.delta);
    checked(lower, upper)
}

/// Stats of both factors with the `(s, t)` pairs chosen to maximise the
/// lower bound produced by `bound`.
pub fn best_stats(
    g1: &Graph,
    g2: &Graph,
    bound: fn(&FactorStats, &FactorStats) -> Result<Bounds>,
) -> Result<(FactorStats, FactorStats, Bounds)> {
    let c1 = FactorStats::candidates(g1)?;
    let c2 = FactorStats::candidates(g2)?;
    let mut best: Option<(FactorStats, FactorStats, Bounds)> = None;
    for f1 in &c1 {
        for f2 in &c2 {
            let b = bound(f1, f2)?;
            if best.as_ref().is_none_or(|(_, _, bb)| b.lower > bb.lower) {
                best = Some((*f1, *f2, b));
            }
        }
    }
    Ok(best.expect("graphs with an edge have a K_{1,1}"))
}

/// `H ∪ K_{s,t} ∪ K_{1,Δ}` with `H = K_{d+1}`.
fn lower_witness_factor(f: &FactorStats) -> Result<Graph> {
    f.check()?;
    generate(&FamilySpec::DisjointUnion(vec![
        FamilySpec::regular(f.d + 1, f.d)?,
        FamilySpec::complete_bipartite(f.s, f.t),
        FamilySpec::Star(f.delta),
    ]))
}

/// Factors whose direct product has degeneracy exactly the
/// [`bounds_direct`] lower bound.
pub fn witness_direct_lower(f1: &FactorStats, f2: &FactorStats) -> Result<(Graph, Graph)> {
    Ok((lower_witness_factor(f1)?, lower_witness_factor(f2)?))
}

/// Factors whose strong product has degeneracy exactly the
/// [`bounds_strong`] lower bound.
pub fn witness_strong_lower(f1: &FactorStats, f2: &FactorStats) -> Result<(Graph, Graph)> {
    Ok((lower_witness_factor(f1)?, lower_witness_factor(f2)?))
}

/// Clique `A` on `0..=d` plus independent `B` of size `(d+1)(k-1)`; vertex
/// `b_j` is joined to `A`-indices `j, j+1, .., j+d-1` modulo `d+1`.
pub fn upper_witness_factor(k: usize, d: usize) -> Result<Graph> {
    if k == 0 || d == 0 {
        return Err(Error::Parameter("upper witness needs k, d >= 1".into()));
    }
    let a = d + 1;
    let nb = a * (k - 1);
    let mut b = GraphBuilder::new(a + nb);
    for u in 0..a {
        for v in u + 1..a {
            b.add_edge(u, v)?;
        }
    }
    for j in 0..nb {
        for i in 0..d {
            b.add_edge(a + j, (j + i) % a)?;
        }
    }
    Ok(b.build())
}

/// Factors with `Δ_i = k_i d_i` and degeneracy `d_i` whose strong product
/// has degeneracy exactly the [`bounds_strong`] upper bound.
pub fn witness_strong_upper(k1: usize, k2: usize, d1: usize, d2: usize) -> Result<(Graph, Graph)> {
    Ok((upper_witness_factor(k1, d1)?, upper_witness_factor(k2, d2)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{product, ProductKind};

    fn fam(s: FamilySpec) -> Graph {
        generate(&s).unwrap()
    }

    #[test]
    fn peeling_examples() {
        assert_eq!(degeneracy(&fam(FamilySpec::complete_bipartite(2, 5))), 2);
        assert_eq!(degeneracy(&Graph::empty(5)), 0);
        let c4 = fam(FamilySpec::Cycle(4));
        let p = product(&c4, &c4, ProductKind::Direct).unwrap().base;
        assert_eq!(degeneracy(&p), 4);
    }

    #[test]
    fn profile_is_a_certificate() {
        let g = fam(FamilySpec::Grid(3, 4));
        let prof = degeneracy_exact(&g);
        let mut sorted = prof.order.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..12).collect::<Vec<_>>());
        assert_eq!(prof.d, *prof.degrees.iter().max().unwrap());
        assert_eq!(prof.d, 2);
        assert_eq!(prof.order[0], 0);
    }

    #[test]
    fn direct_bound_examples() {
        let c = FactorStats::new(2, 2, 1, 1).unwrap();
        assert_eq!(bounds_direct(&c, &c).unwrap(), Bounds { lower: 4, upper: 4 });
        let k23 = FactorStats::new(2, 3, 2, 3).unwrap();
        let k14 = FactorStats::new(1, 4, 1, 4).unwrap();
        let b = bounds_direct(&k23, &k14).unwrap();
        assert_eq!(b.lower, b.upper);
        assert_eq!(b.lower, (2 * 4usize).min(3));
        assert!(FactorStats::new(1, 1, 2, 2).is_err());
    }

    #[test]
    fn strong_bound_examples() {
        assert_eq!(strong_cbg_f(1, 2, 1, 2), 3);
        assert_eq!(strong_cbg_f(1, 1, 1, 1), 3);
        let f = FactorStats::new(1, 3, 1, 1).unwrap();
        assert_eq!(bounds_strong(&f, &f).unwrap().lower, 4);
        let r = FactorStats::new(2, 2, 1, 1).unwrap();
        assert_eq!(bounds_strong(&r, &r).unwrap(), Bounds { lower: 8, upper: 8 });
        let k12 = FactorStats::new(1, 2, 1, 2).unwrap();
        assert_eq!(bounds_strong(&k12, &k12).unwrap().lower, 3);
    }

    #[test]
    fn cbg_formula_matches_peeling() {
        let k23 = fam(FamilySpec::complete_bipartite(2, 3));
        let k24 = fam(FamilySpec::complete_bipartite(2, 4));
        let p = product(&k23, &k24, ProductKind::Strong).unwrap().base;
        assert_eq!(p.n(), 30);
        assert_eq!(degeneracy(&p), strong_cbg_f(2, 3, 2, 4));
    }

    #[test]
    fn candidates_of_k33_minus_edge() {
        let g = fam(FamilySpec::complete_bipartite(3, 3)).filter_edges(|u, v| (u, v) != (0, 3));
        let c = FactorStats::candidates(&g).unwrap();
        assert_eq!(c.iter().map(|f| (f.s, f.t)).collect::<Vec<_>>(), vec![(1, 3), (2, 3)]);
        assert!(FactorStats::candidates(&Graph::empty(3)).is_err());
    }

    #[test]
    fn upper_witness_shape() {
        let g = upper_witness_factor(3, 2).unwrap();
        assert_eq!(g.n(), 3 + 6);
        assert_eq!(g.max_degree(), 6);
        assert!((0..3).all(|a| g.degree(a) == 2 + 2 * 2));
        assert!((3..9).all(|b| g.degree(b) == 2));
        assert_eq!(degeneracy(&g), 2);
    }

    #[test]
    fn witness_examples() {
        let f = FactorStats::new(1, 2, 1, 2).unwrap();
        let (a, b) = witness_direct_lower(&f, &f).unwrap();
        assert_eq!(degeneracy(&product(&a, &b, ProductKind::Direct).unwrap().base), 2);
        let (a, b) = witness_strong_lower(&f, &f).unwrap();
        assert_eq!(degeneracy(&product(&a, &b, ProductKind::Strong).unwrap().base), 3);
        let f = FactorStats::new(2, 2, 1, 2).unwrap();
        let (a, b) = witness_direct_lower(&f, &f).unwrap();
        assert_eq!(degeneracy(&product(&a, &b, ProductKind::Direct).unwrap().base), 4);
        let (a, b) = witness_strong_upper(2, 2, 1, 1).unwrap();
        assert_eq!(a.n(), 4);
        assert_eq!(degeneracy(&product(&a, &b, ProductKind::Strong).unwrap().base), 4);
        let (a, b) = witness_strong_upper(2, 3, 2, 1).unwrap();
        let want = 2 + 1 + (2 * 3usize).min(4);
        assert_eq!(degeneracy(&product(&a, &b, ProductKind::Strong).unwrap().base), want);
    }
}
