use serde::{Deserialize, Serialize};

use crate::decomp::{treewidth, TREE_LIMIT};
use crate::error::{Error, Result};
use crate::graph::{generate, product, FamilySpec, Graph, ProductGraph, ProductKind};

/// `G × K2`.
pub fn double_cover(g: &Graph) -> ProductGraph {
    let k2 = generate(&FamilySpec::Complete(2)).expect("K2");
    product(g, &k2, ProductKind::Direct).expect("double cover size")
}

/// Grid vertex `(i, j)` (0-indexed) sent to `(i + j, n - 1 - i + j)` in the
/// direct product of two paths on `2n - 1` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridEmbedding {
    pub n: usize,
    /// `map[i * n + j]` is the image of grid vertex `(i, j)` as a coordinate pair.
    pub map: Vec<(usize, usize)>,
}

pub fn grid_embedding(n: usize) -> Result<GridEmbedding> {
    if n == 0 {
        return Err(Error::Parameter("grid embedding needs n >= 1".into()));
    }
    let map = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i + j, n - 1 - i + j)))
        .collect();
    Ok(GridEmbedding { n, map })
}

impl GridEmbedding {
    /// The host `P_{2n-1} × P_{2n-1}`.
    pub fn host(&self) -> ProductGraph {
        let p = generate(&FamilySpec::Path(2 * self.n - 1)).expect("path");
        product(&p, &p, ProductKind::Direct).expect("host size")
    }

    /// Host vertex ids of the image, indexed like the grid.
    pub fn image_ids(&self) -> Vec<usize> {
        let side = 2 * self.n - 1;
        self.map.iter().map(|&(a, b)| a * side + b).collect()
    }

    /// Checks injectivity and that every grid edge maps to a host edge.
    pub fn validate(&self) -> Result<()> {
        let host = self.host();
        let ids = self.image_ids();
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != ids.len() {
            return Err(Error::Certificate("grid embedding is not injective".into()));
        }
        let grid = generate(&FamilySpec::Grid(self.n, self.n))?;
        for (u, v) in grid.edges() {
            if !host.base.has_edge(ids[u], ids[v]) {
                return Err(Error::Certificate(format!("grid edge {u}-{v} is not mapped to an edge")));
            }
        }
        Ok(())
    }
}

/// A bipartite subgraph from a local maximum cut, and its treewidth when the
/// graph is small enough. Every bipartite subgraph of `G` is a subgraph of
/// `G × K2`, so that treewidth bounds `tw(G × K2)` from below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteLb {
    pub subgraph: Graph,
    pub side: Vec<u8>,
    pub edges: usize,
    pub treewidth: Option<usize>,
}

/// Starts with every vertex on side 0 and moves the lowest-id vertex with
/// more neighbours on its own side than across, until none is left.
pub fn bipartite_subgraph_lb(g: &Graph) -> BipartiteLb {
    let n = g.n();
    let mut side = vec![0u8; n];
    loop {
        let mover = (0..n).find(|&v| {
            let same = g.neighbors(v).iter().filter(|&&u| side[u] == side[v]).count();
            2 * same > g.degree(v)
        });
        match mover {
            Some(v) => side[v] ^= 1,
            None => break,
        }
    }
    let subgraph = g.filter_edges(|u, v| side[u] != side[v]);
    let treewidth = (n <= TREE_LIMIT).then(|| treewidth(&subgraph));
    BipartiteLb {
        edges: subgraph.m(),
        subgraph,
        side,
        treewidth,
    }
}
