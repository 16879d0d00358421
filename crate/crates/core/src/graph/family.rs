use serde::{Deserialize, Serialize};

use super::{Graph, GraphBuilder};
use crate::error::{Error, Result};

/// Named graph families.
///
/// Vertex numbering: paths and cycles run `0..n`; the star centre is 0;
/// multipartite parts are consecutive with the overlay clique last;
/// `DaddyLonglegs(k)` has root 0, inner leg vertices `1..=k` and feet
/// `k+1..=2k`; grid vertex `(i, j)` is `i * c + j`; `Gkn(k, n)` has the
/// clique on `0..=k` with `v0 = 0` and the path continuing through
/// `k+1, .., n-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    CompleteMultipartite { parts: Vec<usize>, overlay: usize },
    Star(usize),
    DaddyLonglegs(usize),
    Grid(usize, usize),
    Circulant { n: usize, offsets: Vec<usize> },
    DisjointUnion(Vec<FamilySpec>),
    Gkn { k: usize, n: usize },
}

impl FamilySpec {
    /// The `d`-regular circulant on `n` vertices: offsets `1..=d/2`, plus the
    /// antipodal chord when `d` is odd.
    pub fn regular(n: usize, d: usize) -> Result<FamilySpec> {
        if d >= n.max(1) && !(n == 0 && d == 0) {
            return Err(Error::Parameter(format!("no {d}-regular graph on {n} vertices")));
        }
        if d % 2 == 1 && n % 2 == 1 {
            return Err(Error::Parameter(format!(
                "odd degree {d} needs an even order, got {n}"
            )));
        }
        let mut offsets: Vec<usize> = (1..=d / 2).collect();
        if d % 2 == 1 {
            offsets.push(n / 2);
        }
        Ok(FamilySpec::Circulant { n, offsets })
    }

    pub fn complete_bipartite(s: usize, t: usize) -> FamilySpec {
        FamilySpec::CompleteMultipartite {
            parts: vec![s, t],
            overlay: 0,
        }
    }
}

pub fn generate(spec: &FamilySpec) -> Result<Graph> {
    match spec {
        FamilySpec::Path(n) => Graph::from_edges(*n, &(1..*n).map(|i| (i - 1, i)).collect::<Vec<_>>()),
        FamilySpec::Cycle(n) => {
            if *n < 3 {
                return Err(Error::Parameter(format!("cycle needs at least 3 vertices, got {n}")));
            }
            Graph::from_edges(*n, &(0..*n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
        }
        FamilySpec::Complete(n) => Ok(complete_multipartite(&vec![1; *n], 0)),
        FamilySpec::CompleteMultipartite { parts, overlay } => Ok(complete_multipartite(parts, *overlay)),
        FamilySpec::Star(b) => Graph::from_edges(b + 1, &(1..=*b).map(|i| (0, i)).collect::<Vec<_>>()),
        FamilySpec::DaddyLonglegs(k) => {
            let mut e = Vec::with_capacity(2 * k);
            for i in 1..=*k {
                e.push((0, i));
                e.push((i, i + k));
            }
            Graph::from_edges(2 * k + 1, &e)
        }
        FamilySpec::Grid(r, c) => {
            let mut e = Vec::new();
            for i in 0..*r {
                for j in 0..*c {
                    if j + 1 < *c {
                        e.push((i * c + j, i * c + j + 1));
                    }
                    if i + 1 < *r {
                        e.push((i * c + j, (i + 1) * c + j));
                    }
                }
            }
            Graph::from_edges(r * c, &e)
        }
        FamilySpec::Circulant { n, offsets } => {
            let mut b = GraphBuilder::new(*n);
            for &o in offsets {
                if o == 0 || o >= *n {
                    return Err(Error::Parameter(format!("circulant offset {o} out of range for n = {n}")));
                }
                for v in 0..*n {
                    b.add_edge(v, (v + o) % n)?;
                }
            }
            Ok(b.build())
        }
        FamilySpec::DisjointUnion(list) => {
            let mut g = Graph::empty(0);
            for s in list {
                g = g.disjoint_union(&generate(s)?);
            }
            Ok(g)
        }
        FamilySpec::Gkn { k, n } => {
            if *n < k + 1 {
                return Err(Error::Parameter(format!("G(k, n) needs n >= k + 1, got k = {k}, n = {n}")));
            }
            let mut b = GraphBuilder::new(*n);
            for u in 0..=*k {
                for v in u + 1..=*k {
                    b.add_edge(u, v)?;
                }
            }
            let mut prev = 0;
            for v in k + 1..*n {
                b.add_edge(prev, v)?;
                prev = v;
            }
            Ok(b.build())
        }
    }
}

fn complete_multipartite(parts: &[usize], overlay: usize) -> Graph {
    let mut label = Vec::new();
    for (i, &p) in parts.iter().enumerate() {
        label.extend(std::iter::repeat(i).take(p));
    }
    // Overlay vertices each get their own label so they form a clique.
    label.extend(parts.len()..parts.len() + overlay);
    let n = label.len();
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if label[u] != label[v] {
                b.add_edge(u, v).expect("distinct vertices");
            }
        }
    }
    b.build()
}

impl std::str::FromStr for FamilySpec {
    type Err = Error;

    /// Parses `path:5`, `cycle:6`, `complete:4`, `star:3`, `dll:2`,
    /// `grid:3x4`, `kmp:2,3` or `kmp:2,2+1`, `circulant:8:1,4`, `gkn:2,6`.
    fn from_str(s: &str) -> Result<FamilySpec> {
        let bad = || Error::Parameter(format!("cannot parse family {s:?}"));
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let list = |t: &str| t.split(',').map(num).collect::<Result<Vec<_>>>();
        let (name, rest) = s.split_once(':').ok_or_else(bad)?;
        Ok(match name {
            "path" => FamilySpec::Path(num(rest)?),
            "cycle" => FamilySpec::Cycle(num(rest)?),
            "complete" => FamilySpec::Complete(num(rest)?),
            "star" => FamilySpec::Star(num(rest)?),
            "dll" => FamilySpec::DaddyLonglegs(num(rest)?),
            "grid" => {
                let (r, c) = rest.split_once('x').ok_or_else(bad)?;
                FamilySpec::Grid(num(r)?, num(c)?)
            }
            "kmp" => {
                let (p, x) = rest.split_once('+').unwrap_or((rest, "0"));
                FamilySpec::CompleteMultipartite {
                    parts: list(p)?,
                    overlay: num(x)?,
                }
            }
            "circulant" => {
                let (n, offs) = rest.split_once(':').ok_or_else(bad)?;
                FamilySpec::Circulant {
                    n: num(n)?,
                    offsets: list(offs)?,
                }
            }
            "gkn" => {
                let v = list(rest)?;
                if v.len() != 2 {
                    return Err(bad());
                }
                FamilySpec::Gkn { k: v[0], n: v[1] }
            }
            _ => return Err(bad()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dll2_is_p5() {
        let g = generate(&FamilySpec::DaddyLonglegs(2)).unwrap();
        assert_eq!((g.n(), g.m()), (5, 4));
        assert!(g.is_connected());
        assert_eq!(g.max_degree(), 2);
    }

    #[test]
    fn all_singleton_parts_give_a_clique() {
        let g = generate(&FamilySpec::CompleteMultipartite {
            parts: vec![1; 5],
            overlay: 0,
        })
        .unwrap();
        assert_eq!(g, generate(&FamilySpec::Complete(5)).unwrap());
        let h = generate(&FamilySpec::CompleteMultipartite {
            parts: vec![1, 1],
            overlay: 3,
        })
        .unwrap();
        assert_eq!(h, g);
    }

    #[test]
    fn overlay_attaches_to_everything() {
        let g = generate(&FamilySpec::CompleteMultipartite {
            parts: vec![2, 2],
            overlay: 1,
        })
        .unwrap();
        assert_eq!(g.degree(4), 4);
        assert!(!g.has_edge(0, 1));
    }

    #[test]
    fn gkn_shape() {
        let g = generate(&FamilySpec::Gkn { k: 2, n: 6 }).unwrap();
        assert_eq!(g.n(), 6);
        assert!(g.is_connected());
        assert_eq!(g.m(), 3 + 3);
        assert!(generate(&FamilySpec::Gkn { k: 3, n: 3 }).is_err());
        let p = generate(&FamilySpec::Gkn { k: 0, n: 3 }).unwrap();
        assert_eq!(p, generate(&FamilySpec::Path(3)).unwrap());
    }

    #[test]
    fn regular_circulants() {
        for n in 1..10 {
            for d in 0..n {
                match FamilySpec::regular(n, d) {
                    Ok(spec) => {
                        let g = generate(&spec).unwrap();
                        assert!((0..n).all(|v| g.degree(v) == d), "n={n} d={d}");
                    }
                    Err(_) => assert!(d % 2 == 1 && n % 2 == 1),
                }
            }
        }
    }

    #[test]
    fn parse_family_strings() {
        assert_eq!("grid:3x4".parse::<FamilySpec>().unwrap(), FamilySpec::Grid(3, 4));
        assert_eq!(
            "kmp:2,2+1".parse::<FamilySpec>().unwrap(),
            FamilySpec::CompleteMultipartite {
                parts: vec![2, 2],
                overlay: 1
            }
        );
        assert!("nope:1".parse::<FamilySpec>().is_err());
    }
}
