//! H-decompositions: the data model, a validator, exact tree/path width
//! solvers and the product constructions.

mod construct;
mod exact;

pub use construct::{gkn_decomposition, lift_product, lift_square, vc_subdivision_decomp};
pub use exact::{
    elimination_decomposition, exact_width, exact_width_with_limit, pathwidth, treewidth, vertex_separation_decomposition,
    WidthKind, WidthResult, PATH_LIMIT, TREE_LIMIT,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Bags indexed by the nodes of a host graph. Bags are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HDecomposition {
    pub host: Graph,
    pub bags: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    BagCount { bags: usize, nodes: usize },
    VertexOutOfRange { node: usize, vertex: usize },
    VertexUncovered { vertex: usize },
    VertexDisconnected { vertex: usize },
    EdgeUncovered { u: usize, v: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::BagCount { bags, nodes } => write!(f, "{bags} bags for {nodes} host nodes"),
            Violation::VertexOutOfRange { node, vertex } => write!(f, "bag {node} holds unknown vertex {vertex}"),
            Violation::VertexUncovered { vertex } => write!(f, "vertex {vertex} is in no bag"),
            Violation::VertexDisconnected { vertex } => write!(f, "bags holding vertex {vertex} are disconnected"),
            Violation::EdgeUncovered { u, v } => write!(f, "edge {u}-{v} is in no bag"),
        }
    }
}

impl HDecomposition {
    pub fn new(host: Graph, mut bags: Vec<Vec<usize>>) -> HDecomposition {
        for b in &mut bags {
            b.sort_unstable();
            b.dedup();
        }
        HDecomposition { host, bags }
    }

    /// Largest bag size minus one; `0` for an empty decomposition.
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    /// Host nodes whose bag contains each vertex of a graph of order `n`.
    pub fn nodes_of(&self, n: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); n];
        for (x, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v < n {
                    out[v].push(x);
                }
            }
        }
        out
    }

    pub fn host_is_tree(&self) -> bool {
        let h = &self.host;
        h.n() >= 1 && h.m() == h.n() - 1 && h.is_connected()
    }

    pub fn host_is_path(&self) -> bool {
        self.host_is_tree() && self.host.max_degree() <= 2
    }

    /// Serialisable form: host edge list plus bags; node `i` owns `bags[i]`.
    pub fn to_json(&self) -> DecompositionJson {
        DecompositionJson {
            host: self.host.edges().map(|(u, v)| [u, v]).collect(),
            bags: self.bags.clone(),
        }
    }

    pub fn from_json(j: &DecompositionJson) -> Result<HDecomposition> {
        let edges: Vec<(usize, usize)> = j.host.iter().map(|e| (e[0], e[1])).collect();
        let host = Graph::from_edges(j.bags.len(), &edges)?;
        Ok(HDecomposition::new(host, j.bags.clone()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub host: Vec<[usize; 2]>,
    pub bags: Vec<Vec<usize>>,
}

/// Checks the decomposition axioms against `g`. An empty list means valid.
pub fn validate_decomposition(g: &Graph, d: &HDecomposition) -> Vec<Violation> {
    let mut out = Vec::new();
    if d.bags.len() != d.host.n() {
        out.push(Violation::BagCount {
            bags: d.bags.len(),
            nodes: d.host.n(),
        });
        return out;
    }
    for (x, bag) in d.bags.iter().enumerate() {
        for &v in bag {
            if v >= g.n() {
                out.push(Violation::VertexOutOfRange { node: x, vertex: v });
            }
        }
    }
    let nodes = d.nodes_of(g.n());
    for (v, ns) in nodes.iter().enumerate() {
        if ns.is_empty() {
            out.push(Violation::VertexUncovered { vertex: v });
        } else if !d.host.is_connected_set(ns) {
            out.push(Violation::VertexDisconnected { vertex: v });
        }
    }
    for (u, v) in g.edges() {
        let (a, b) = (&nodes[u], &nodes[v]);
        let (mut i, mut j) = (0, 0);
        let mut shared = false;
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    shared = true;
                    break;
                }
            }
        }
        if !shared {
            out.push(Violation::EdgeUncovered { u, v });
        }
    }
    out
}

/// Like [`validate_decomposition`] but as a `Result`.
pub fn check_decomposition(g: &Graph, d: &HDecomposition) -> Result<()> {
    let v = validate_decomposition(g, d);
    match v.first() {
        None => Ok(()),
        Some(first) => Err(Error::Certificate(format!(
            "invalid decomposition: {first}{}",
            if v.len() > 1 { format!(" (+{} more)", v.len() - 1) } else { String::new() }
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};

    #[test]
    fn validator_examples() {
        let p3 = generate(&FamilySpec::Path(3)).unwrap();
        let host = generate(&FamilySpec::Path(2)).unwrap();
        let ok = HDecomposition::new(host.clone(), vec![vec![0, 1], vec![1, 2]]);
        assert!(validate_decomposition(&p3, &ok).is_empty());
        assert_eq!(ok.width(), 1);
        let bad = HDecomposition::new(host.clone(), vec![vec![0, 1], vec![2]]);
        assert_eq!(validate_decomposition(&p3, &bad), vec![Violation::EdgeUncovered { u: 1, v: 2 }]);
    }

    #[test]
    fn validator_catches_disconnected_and_missing() {
        let p3 = generate(&FamilySpec::Path(3)).unwrap();
        let host = generate(&FamilySpec::Path(3)).unwrap();
        let d = HDecomposition::new(host, vec![vec![0, 1], vec![1, 2], vec![0, 7]]);
        let v = validate_decomposition(&p3, &d);
        assert!(v.contains(&Violation::VertexDisconnected { vertex: 0 }));
        assert!(v.contains(&Violation::VertexOutOfRange { node: 2, vertex: 7 }));
        let d = HDecomposition::new(Graph::empty(1), vec![vec![0, 1]]);
        assert!(validate_decomposition(&p3, &d).contains(&Violation::VertexUncovered { vertex: 2 }));
        let d = HDecomposition::new(Graph::empty(2), vec![vec![0, 1]]);
        assert!(matches!(validate_decomposition(&p3, &d)[0], Violation::BagCount { .. }));
    }

    #[test]
    fn json_round_trip() {
        let host = generate(&FamilySpec::Path(2)).unwrap();
        let d = HDecomposition::new(host, vec![vec![0, 1], vec![1, 2]]);
        let j = serde_json::to_string(&d.to_json()).unwrap();
        assert_eq!(j, r#"{"host":[[0,1]],"bags":[[0,1],[1,2]]}"#);
        let back: DecompositionJson = serde_json::from_str(&j).unwrap();
        assert_eq!(HDecomposition::from_json(&back).unwrap(), d);
    }
}
