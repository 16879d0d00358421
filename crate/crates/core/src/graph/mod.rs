//! Simple undirected graphs, the three products, named families and codecs.
//!
//! A [`Graph`] keeps sorted neighbour lists for every vertex. When the graph
//! has at most 64 vertices it additionally carries one `u64` adjacency row per
//! vertex; the exhaustive searches elsewhere in the crate run on those rows
//! and refuse larger inputs, while constructions only touch the lists.

mod canon;
mod codec;
mod family;
mod product;

pub use canon::{canonical_form, enumerate_graphs, is_isomorphic, CanonCode};
pub use codec::{parse_edgelist, parse_graph6, to_edgelist, to_graph6, GraphFormat};
pub use family::{generate, FamilySpec};
pub use product::{product, ProductGraph, ProductKind};

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::bits::bits;
use crate::error::{Error, Result};

/// Largest order for which adjacency rows are stored as `u64` masks.
pub const MASK_LIMIT: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    masks: Vec<u64>,
    m: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        Graph::from_lists(vec![Vec::new(); n])
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut b = GraphBuilder::new(n);
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    fn from_lists(adj: Vec<Vec<usize>>) -> Graph {
        let n = adj.len();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        let masks = if n <= MASK_LIMIT {
            adj.iter()
                .map(|row| row.iter().fold(0u64, |acc, &u| acc | (1u64 << u)))
                .collect()
        } else {
            Vec::new()
        };
        Graph { adj, masks, m }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if self.has_masks() {
            self.masks[u] >> v & 1 == 1
        } else {
            self.adj[u].binary_search(&v).is_ok()
        }
    }

    /// Whether `u64` adjacency rows are available.
    #[inline]
    pub fn has_masks(&self) -> bool {
        self.n() <= MASK_LIMIT
    }

    /// Adjacency row of `v`. Panics for graphs above [`MASK_LIMIT`].
    #[inline]
    pub fn mask(&self, v: usize) -> u64 {
        self.masks[v]
    }

    pub fn masks(&self) -> &[u64] {
        assert!(self.has_masks(), "adjacency masks need at most 64 vertices");
        &self.masks
    }

    /// Fails with a size error unless the graph fits the mask representation.
    pub fn require_masks(&self, what: &'static str) -> Result<()> {
        if self.has_masks() {
            Ok(())
        } else {
            Err(Error::Size {
                what,
                needed: self.n(),
                limit: MASK_LIMIT,
            })
        }
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Subgraph induced by `vs`; vertex `vs[i]` becomes `i`.
    pub fn induced(&self, vs: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in vs.iter().enumerate() {
            pos[v] = i;
        }
        let adj = vs
            .iter()
            .map(|&v| {
                let mut row: Vec<usize> = self.adj[v]
                    .iter()
                    .filter_map(|&u| (pos[u] != usize::MAX).then_some(pos[u]))
                    .collect();
                row.sort_unstable();
                row
            })
            .collect();
        Graph::from_lists(adj)
    }

    /// Graph on the same vertices keeping only the edges accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize, usize) -> bool) -> Graph {
        let mut b = GraphBuilder::new(self.n());
        for (u, v) in self.edges() {
            if keep(u, v) {
                b.add_edge(u, v).expect("edges of a simple graph");
            }
        }
        b.build()
    }

    /// Whether every edge of `self` is an edge of `other` (same vertex ids).
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n() <= other.n() && self.edges().all(|(u, v)| other.has_edge(u, v))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// A proper 2-colouring if the graph is bipartite. Each component's
    /// smallest vertex gets colour 0.
    pub fn two_colouring(&self) -> Option<Vec<u8>> {
        let n = self.n();
        let mut colour = vec![u8::MAX; n];
        for s in 0..n {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &u in &self.adj[v] {
                    if colour[u] == u8::MAX {
                        colour[u] = 1 - colour[v];
                        queue.push_back(u);
                    } else if colour[u] == colour[v] {
                        return None;
                    }
                }
            }
        }
        Some(colour)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_colouring().is_some()
    }

    /// BFS distances from `s`; `usize::MAX` for unreachable vertices.
    pub fn distances_from(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &u in &self.adj[v] {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Diameter of a connected graph; `None` when disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for s in 0..self.n() {
            for d in self.distances_from(s) {
                if d == usize::MAX {
                    return None;
                }
                best = best.max(d);
            }
        }
        Some(best)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|row| row.iter().map(|&u| u + off).collect::<Vec<_>>()),
        );
        Graph::from_lists(adj)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![Vec::new(); self.n()];
        for (v, row) in self.adj.iter().enumerate() {
            let mut r: Vec<usize> = row.iter().map(|&u| perm[u]).collect();
            r.sort_unstable();
            adj[perm[v]] = r;
        }
        Graph::from_lists(adj)
    }

    /// Mask of the connected component of `G[within]` containing `start`.
    /// Requires masks.
    pub fn component_mask(&self, start: usize, within: u64) -> u64 {
        let mut comp = 1u64 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.masks[v];
            }
            next &= within & !comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    /// Whether `G[set]` is connected (the empty set is not). Requires masks.
    pub fn is_connected_mask(&self, set: u64) -> bool {
        set != 0 && self.component_mask(set.trailing_zeros() as usize, set) == set
    }

    /// Whether `G[set]` is connected (the empty set is not).
    pub fn is_connected_set(&self, set: &[usize]) -> bool {
        if set.is_empty() {
            return false;
        }
        let inside: BTreeSet<usize> = set.iter().copied().collect();
        let mut seen = BTreeSet::from([set[0]]);
        let mut stack = vec![set[0]];
        while let Some(v) = stack.pop() {
            for &u in &self.adj[v] {
                if inside.contains(&u) && seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        seen.len() == inside.len()
    }

    /// Closed neighbourhood mask. Requires masks.
    #[inline]
    pub fn closed_mask(&self, v: usize) -> u64 {
        self.masks[v] | (1u64 << v)
    }
}

/// Incremental construction with loop and range checks.
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    adj: Vec<BTreeSet<usize>>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> GraphBuilder {
        GraphBuilder {
            adj: vec![BTreeSet::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(BTreeSet::new());
        self.adj.len() - 1
    }

    /// Adds `uv`; parallel edges collapse, loops and out-of-range ids fail.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.adj.len();
        if u >= n || v >= n {
            return Err(Error::Parameter(format!(
                "edge {u}-{v} out of range for {n} vertices"
            )));
        }
        if u == v {
            return Err(Error::Parameter(format!("loop at vertex {u}")));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn build(self) -> Graph {
        Graph::from_lists(
            self.adj
                .into_iter()
                .map(|s| s.into_iter().collect())
                .collect(),
        )
    }
}

impl From<&Graph> for GraphBuilder {
    fn from(g: &Graph) -> GraphBuilder {
        GraphBuilder {
            adj: g.adj.iter().map(|r| r.iter().copied().collect()).collect(),
        }
    }
}

/// The parameters reported by `basic_params`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicParams {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub min_degree: usize,
    pub components: Vec<Vec<usize>>,
    /// Largest component order.
    pub max_component_order: usize,
    pub connected: bool,
    pub bipartite: bool,
    pub colouring: Option<Vec<u8>>,
}

pub fn basic_params(g: &Graph) -> BasicParams {
    let components = g.components();
    let colouring = g.two_colouring();
    BasicParams {
        n: g.n(),
        m: g.m(),
        max_degree: g.max_degree(),
        min_degree: g.min_degree(),
        max_component_order: components.iter().map(Vec::len).max().unwrap_or(0),
        connected: components.len() <= 1,
        bipartite: colouring.is_some(),
        colouring,
        components,
    }
}

/// The square: `uv` is an edge iff `1 <= dist(u, v) <= 2`.
pub fn square(g: &Graph) -> Graph {
    let mut b = GraphBuilder::from(g);
    for v in 0..g.n() {
        let nb = g.neighbors(v);
        for (i, &a) in nb.iter().enumerate() {
            for &c in &nb[i + 1..] {
                b.add_edge(a, c).expect("distinct neighbours");
            }
        }
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        generate(&FamilySpec::Path(n)).unwrap()
    }

    #[test]
    fn square_of_p4() {
        let sq = square(&path(4));
        let e: Vec<_> = sq.edges().collect();
        assert_eq!(e, vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn square_of_clique_and_c5() {
        let k5 = generate(&FamilySpec::Complete(5)).unwrap();
        assert_eq!(square(&k5), k5);
        let c5 = generate(&FamilySpec::Cycle(5)).unwrap();
        assert_eq!(square(&c5), k5);
    }

    #[test]
    fn square_makes_closed_neighbourhoods_cliques() {
        let g = generate(&FamilySpec::Grid(3, 3)).unwrap();
        let sq = square(&g);
        for v in 0..g.n() {
            let nb = g.closed_mask(v);
            for a in bits(nb) {
                assert_eq!(sq.mask(a) | (1 << a), sq.mask(a) | nb | (1 << a));
                assert!(bits(nb).all(|c| c == a || sq.has_edge(a, c)));
            }
        }
    }

    #[test]
    fn params_of_k34() {
        let g = generate(&FamilySpec::CompleteMultipartite {
            parts: vec![3, 4],
            overlay: 0,
        })
        .unwrap();
        let p = basic_params(&g);
        assert_eq!((p.max_degree, p.min_degree), (4, 3));
        let col = p.colouring.unwrap();
        let zeros = col.iter().filter(|&&c| c == 0).count();
        assert_eq!(zeros, 3);
    }

    #[test]
    fn params_of_union_and_c5() {
        let g = generate(&FamilySpec::DisjointUnion(vec![
            FamilySpec::Path(3),
            FamilySpec::Complete(4),
        ]))
        .unwrap();
        assert_eq!(basic_params(&g).max_component_order, 4);
        assert!(!basic_params(&g).connected);
        let c5 = generate(&FamilySpec::Cycle(5)).unwrap();
        assert!(!basic_params(&c5).bipartite);
        assert!(basic_params(&c5).colouring.is_none());
    }

    #[test]
    fn builder_rejects_loops() {
        assert!(Graph::from_edges(2, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn large_graphs_skip_masks() {
        let g = path(70);
        assert!(!g.has_masks());
        assert!(g.has_edge(68, 69));
        assert!(!g.has_edge(0, 69));
        assert!(g.require_masks("test").is_err());
    }
}
