use serde::{Deserialize, Serialize};

use super::{Graph, GraphBuilder};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductKind {
    Cartesian,
    Direct,
    Strong,
}

impl ProductKind {
    pub const ALL: [ProductKind; 3] = [ProductKind::Cartesian, ProductKind::Direct, ProductKind::Strong];

    /// Whether `(a, v)` and `(b, u)` are adjacent, given factor adjacency and
    /// coordinate equality.
    #[inline]
    pub fn adjacent(self, eq1: bool, adj1: bool, eq2: bool, adj2: bool) -> bool {
        match self {
            ProductKind::Cartesian => (eq1 && adj2) || (adj1 && eq2),
            ProductKind::Direct => adj1 && adj2,
            ProductKind::Strong => (eq1 && adj2) || (adj1 && eq2) || (adj1 && adj2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ProductKind::Cartesian => "cartesian",
            ProductKind::Direct => "direct",
            ProductKind::Strong => "strong",
        }
    }
}

impl std::str::FromStr for ProductKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<ProductKind> {
        match s {
            "cartesian" | "cart" => Ok(ProductKind::Cartesian),
            "direct" | "tensor" => Ok(ProductKind::Direct),
            "strong" => Ok(ProductKind::Strong),
            _ => Err(Error::Parameter(format!("unknown product kind {s:?}"))),
        }
    }
}

impl std::fmt::Display for ProductKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A product together with its factors. Vertex `(a, v)` has id
/// `a * n2 + v` where `n2` is the order of the second factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductGraph {
    pub base: Graph,
    pub factors: (Graph, Graph),
    pub kind: ProductKind,
}

impl ProductGraph {
    #[inline]
    pub fn id(&self, a: usize, v: usize) -> usize {
        a * self.factors.1.n() + v
    }

    #[inline]
    pub fn pair(&self, x: usize) -> (usize, usize) {
        let n2 = self.factors.1.n();
        (x / n2, x % n2)
    }

    /// First-coordinate projection of a vertex set, sorted and deduplicated.
    pub fn project1(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&x| self.pair(x).0).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn project2(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&x| self.pair(x).1).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

pub fn product(g1: &Graph, g2: &Graph, kind: ProductKind) -> Result<ProductGraph> {
    let (n1, n2) = (g1.n(), g2.n());
    let n = n1.checked_mul(n2).ok_or(Error::Size {
        what: "product",
        needed: usize::MAX,
        limit: usize::MAX,
    })?;
    let mut b = GraphBuilder::new(n);
    let id = |a: usize, v: usize| a * n2 + v;
    // Cartesian: one coordinate steps along an edge, the other stays.
    if kind != ProductKind::Direct {
        for a in 0..n1 {
            for (u, v) in g2.edges() {
                b.add_edge(id(a, u), id(a, v))?;
            }
        }
        for (a, c) in g1.edges() {
            for v in 0..n2 {
                b.add_edge(id(a, v), id(c, v))?;
            }
        }
    }
    if kind != ProductKind::Cartesian {
        for (a, c) in g1.edges() {
            for (u, v) in g2.edges() {
                b.add_edge(id(a, u), id(c, v))?;
                b.add_edge(id(a, v), id(c, u))?;
            }
        }
    }
    Ok(ProductGraph {
        base: b.build(),
        factors: (g1.clone(), g2.clone()),
        kind,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, is_isomorphic, FamilySpec};

    fn k(n: usize) -> Graph {
        generate(&FamilySpec::Complete(n)).unwrap()
    }

    #[test]
    fn two_vertex_factors() {
        let p2 = k(2);
        let c = product(&p2, &p2, ProductKind::Cartesian).unwrap().base;
        assert!(is_isomorphic(&c, &generate(&FamilySpec::Cycle(4)).unwrap()));
        let d = product(&p2, &p2, ProductKind::Direct).unwrap().base;
        assert_eq!(d.edges().collect::<Vec<_>>(), vec![(0, 3), (1, 2)]);
        let s = product(&p2, &p2, ProductKind::Strong).unwrap().base;
        assert_eq!(s, k(4));
    }

    #[test]
    fn pairing_round_trips() {
        let p = product(&k(3), &k(2), ProductKind::Strong).unwrap();
        for x in 0..p.base.n() {
            let (a, v) = p.pair(x);
            assert_eq!(p.id(a, v), x);
        }
        assert_eq!(p.project1(&[0, 1, 5]), vec![0, 2]);
    }

    #[test]
    fn empty_factor() {
        let p = product(&Graph::empty(0), &k(3), ProductKind::Direct).unwrap();
        assert_eq!(p.base.n(), 0);
    }
}
