//! Exact treewidth (elimination orderings) and pathwidth (vertex separation)
//! by memoised branching over vertex subsets.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::HDecomposition;
use crate::bits::bits;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

/// Advisory order limit for exact treewidth.
pub const TREE_LIMIT: usize = 14;
/// Advisory order limit for exact pathwidth.
pub const PATH_LIMIT: usize = 18;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WidthKind {
    Tree,
    Path,
}

impl std::str::FromStr for WidthKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<WidthKind> {
        match s {
            "tree" | "tw" => Ok(WidthKind::Tree),
            "path" | "pw" => Ok(WidthKind::Path),
            _ => Err(Error::Parameter(format!("unknown width kind {s:?}"))),
        }
    }
}

impl WidthKind {
    pub fn limit(self) -> usize {
        match self {
            WidthKind::Tree => TREE_LIMIT,
            WidthKind::Path => PATH_LIMIT,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WidthResult {
    pub value: usize,
    pub decomposition: HDecomposition,
}

pub fn exact_width(g: &Graph, kind: WidthKind) -> Result<WidthResult> {
    exact_width_with_limit(g, kind, kind.limit())
}

pub fn exact_width_with_limit(g: &Graph, kind: WidthKind, limit: usize) -> Result<WidthResult> {
    crate::error::budget(
        match kind {
            WidthKind::Tree => "treewidth",
            WidthKind::Path => "pathwidth",
        },
        g.n(),
        limit,
    )?;
    g.require_masks("exact width")?;
    let (value, order) = match kind {
        WidthKind::Tree => solve_components(g, tree_component),
        WidthKind::Path => solve_components(g, path_component),
    };
    let decomposition = match kind {
        WidthKind::Tree => elimination_decomposition(g, &order),
        WidthKind::Path => vertex_separation_decomposition(g, &order),
    };
    debug_assert_eq!(decomposition.width(), value);
    Ok(WidthResult { value, decomposition })
}

/// Exact treewidth without the advisory check. Panics above 64 vertices.
pub fn treewidth(g: &Graph) -> usize {
    solve_components(g, tree_component).0
}

/// Exact pathwidth without the advisory check. Panics above 64 vertices.
pub fn pathwidth(g: &Graph) -> usize {
    solve_components(g, path_component).0
}

fn solve_components(g: &Graph, solve: fn(&[u64], u64) -> (usize, Vec<usize>)) -> (usize, Vec<usize>) {
    let masks = g.masks();
    let mut width = 0;
    let mut order = Vec::with_capacity(g.n());
    for comp in g.components() {
        let cm = comp.iter().fold(0u64, |m, &v| m | 1 << v);
        let (w, o) = solve(masks, cm);
        width = width.max(w);
        order.extend(o);
    }
    (width, order)
}

/// Tree decomposition from an elimination order: vertex `v` gets the bag
/// `{v}` plus its later neighbours in the filled graph, attached to the
/// earliest of those neighbours. Separate roots are chained together.
pub fn elimination_decomposition(g: &Graph, order: &[usize]) -> HDecomposition {
    let n = g.n();
    if n == 0 {
        return HDecomposition::new(Graph::empty(1), vec![Vec::new()]);
    }
    let mut adj: Vec<std::collections::BTreeSet<usize>> =
        (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut bags = Vec::with_capacity(n);
    let mut parent: Vec<Option<usize>> = Vec::with_capacity(n);
    for &v in order {
        let later: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in later.iter().enumerate() {
            adj[a].remove(&v);
            for &b in &later[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        parent.push(later.iter().copied().min_by_key(|&u| pos[u]).map(|u| pos[u]));
        let mut bag = later;
        bag.push(v);
        bags.push(bag);
    }
    let mut host = GraphBuilder::new(n);
    let mut last_root: Option<usize> = None;
    for (i, p) in parent.iter().enumerate() {
        match p {
            Some(p) => host.add_edge(i, *p).expect("tree edge"),
            None => {
                if let Some(r) = last_root {
                    host.add_edge(i, r).expect("root chain");
                }
                last_root = Some(i);
            }
        }
    }
    HDecomposition::new(host.build(), bags)
}

/// Path decomposition from a vertex order: bag `i` is `v_i` plus every
/// earlier vertex that still has a neighbour at position `i` or later.
pub fn vertex_separation_decomposition(g: &Graph, order: &[usize]) -> HDecomposition {
    let n = g.n();
    if n == 0 {
        return HDecomposition::new(Graph::empty(1), vec![Vec::new()]);
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let last: Vec<usize> = (0..n)
        .map(|v| g.neighbors(v).iter().map(|&u| pos[u]).max().unwrap_or(0).max(pos[v]))
        .collect();
    let bags = (0..n)
        .map(|i| {
            let mut bag: Vec<usize> = order[..i].iter().copied().filter(|&u| last[u] >= i).collect();
            bag.push(order[i]);
            bag
        })
        .collect();
    let host = Graph::from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()).expect("path host");
    HDecomposition::new(host, bags)
}

/// Minimum-degree-contraction lower bound on the treewidth of the graph
/// given by `adj` restricted to `set`.
fn contraction_degeneracy(adj: &[u64], set: u64) -> usize {
    let mut adj: Vec<u64> = adj.to_vec();
    let mut alive = set;
    let mut lb = 0;
    while alive.count_ones() > 1 {
        let v = bits(alive).min_by_key(|&v| ((adj[v] & alive).count_ones(), v)).expect("non-empty");
        let nv = adj[v] & alive;
        lb = lb.max(nv.count_ones() as usize);
        alive &= !(1u64 << v);
        if nv == 0 {
            continue;
        }
        let u = bits(nv).min_by_key(|&u| ((adj[u] & alive).count_ones(), u)).expect("has neighbour");
        let merged = (adj[u] | nv) & !(1u64 << u) & alive;
        for w in bits(merged) {
            adj[w] |= 1 << u;
        }
        adj[u] = merged;
    }
    lb
}

/// Adjacency of the graph left after eliminating `s` from the component.
fn eliminated(masks: &[u64], comp: u64, s: u64) -> Vec<u64> {
    let rest = comp & !s;
    let mut adj: Vec<u64> = masks.iter().map(|&m| m & rest).collect();
    let mut todo = s;
    while todo != 0 {
        let start = todo.trailing_zeros() as usize;
        let mut c = 1u64 << start;
        let mut frontier = c;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= masks[v];
            }
            next &= s & !c;
            c |= next;
            frontier = next;
        }
        todo &= !c;
        let nb = bits(c).fold(0u64, |m, v| m | masks[v]) & rest;
        for v in bits(nb) {
            adj[v] |= nb & !(1u64 << v);
        }
    }
    adj
}

/// Greedy min-fill elimination of a component: returns width and order.
fn min_fill(masks: &[u64], comp: u64) -> (usize, Vec<usize>) {
    let mut adj: Vec<u64> = masks.iter().map(|&m| m & comp).collect();
    let mut alive = comp;
    let mut order = Vec::new();
    let mut width = 0;
    while alive != 0 {
        let fill = |v: usize| {
            let nb = adj[v] & alive;
            bits(nb).map(|u| (nb & !adj[u] & !(1u64 << u)).count_ones()).sum::<u32>() / 2
        };
        let v = bits(alive)
            .min_by_key(|&v| (fill(v), (adj[v] & alive).count_ones(), v))
            .expect("non-empty");
        let nb = adj[v] & alive;
        width = width.max(nb.count_ones() as usize);
        for u in bits(nb) {
            adj[u] |= nb & !(1u64 << u);
        }
        alive &= !(1u64 << v);
        order.push(v);
    }
    (width, order)
}

fn tree_component(masks: &[u64], comp: u64) -> (usize, Vec<usize>) {
    let (ub, ub_order) = min_fill(masks, comp);
    let lb = contraction_degeneracy(masks, comp);
    for k in lb..ub {
        let mut st = TreeSearch {
            masks,
            comp,
            k,
            failed: HashSet::new(),
            order: Vec::new(),
        };
        if st.run(0) {
            return (k, st.order);
        }
    }
    (ub, ub_order)
}

struct TreeSearch<'a> {
    masks: &'a [u64],
    comp: u64,
    k: usize,
    failed: HashSet<u64>,
    order: Vec<usize>,
}

impl TreeSearch<'_> {
    fn run(&mut self, s: u64) -> bool {
        let rest = self.comp & !s;
        if rest.count_ones() as usize <= self.k + 1 {
            self.order.extend(bits(rest));
            return true;
        }
        if self.failed.contains(&s) {
            return false;
        }
        let adj = eliminated(self.masks, self.comp, s);
        if contraction_degeneracy(&adj, rest) > self.k {
            self.failed.insert(s);
            return false;
        }
        // A simplicial or almost simplicial vertex of low degree can be
        // eliminated first without loss.
        let is_clique = |set: u64| bits(set).all(|u| set & !adj[u] & !(1u64 << u) == 0);
        let safe = bits(rest).find(|&v| {
            let nb = adj[v];
            nb.count_ones() as usize <= self.k
                && (is_clique(nb) || bits(nb).any(|w| is_clique(nb & !(1u64 << w))))
        });
        if let Some(v) = safe {
            self.order.push(v);
            if self.run(s | 1 << v) {
                return true;
            }
            self.order.pop();
            self.failed.insert(s);
            return false;
        }
        let mut cands: Vec<usize> = bits(rest).filter(|&v| adj[v].count_ones() as usize <= self.k).collect();
        cands.sort_by_key(|&v| (adj[v].count_ones(), v));
        for v in cands {
            self.order.push(v);
            if self.run(s | 1 << v) {
                return true;
            }
            self.order.pop();
        }
        self.failed.insert(s);
        false
    }
}

fn boundary(masks: &[u64], comp: u64, s: u64) -> usize {
    let out = comp & !s;
    bits(s).filter(|&u| masks[u] & out != 0).count()
}

fn greedy_separation(masks: &[u64], comp: u64) -> (usize, Vec<usize>) {
    let mut s = 0u64;
    let mut order = Vec::new();
    let mut width = 0;
    while s != comp {
        let v = bits(comp & !s)
            .min_by_key(|&v| (boundary(masks, comp, s | 1 << v), v))
            .expect("vertices left");
        s |= 1 << v;
        order.push(v);
        width = width.max(boundary(masks, comp, s));
    }
    (width, order)
}

fn path_component(masks: &[u64], comp: u64) -> (usize, Vec<usize>) {
    let (ub, ub_order) = greedy_separation(masks, comp);
    let lb = contraction_degeneracy(masks, comp);
    for k in lb..ub {
        let mut st = PathSearch {
            masks,
            comp,
            k,
            failed: HashSet::new(),
            order: Vec::new(),
        };
        if st.run(0) {
            return (k, st.order);
        }
    }
    (ub, ub_order)
}

struct PathSearch<'a> {
    masks: &'a [u64],
    comp: u64,
    k: usize,
    failed: HashSet<u64>,
    order: Vec<usize>,
}

impl PathSearch<'_> {
    fn run(&mut self, s: u64) -> bool {
        if s == self.comp {
            return true;
        }
        if self.failed.contains(&s) {
            return false;
        }
        let rest = self.comp & !s;
        // A vertex whose neighbours are all placed never hurts.
        if let Some(v) = bits(rest).find(|&v| self.masks[v] & rest == 0) {
            self.order.push(v);
            if self.run(s | 1 << v) {
                return true;
            }
            self.order.pop();
            self.failed.insert(s);
            return false;
        }
        let mut cands: Vec<(usize, usize)> = bits(rest)
            .map(|v| (boundary(self.masks, self.comp, s | 1 << v), v))
            .filter(|&(b, _)| b <= self.k)
            .collect();
        cands.sort_unstable();
        for (_, v) in cands {
            self.order.push(v);
            if self.run(s | 1 << v) {
                return true;
            }
            self.order.pop();
        }
        self.failed.insert(s);
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::validate_decomposition;
    use crate::graph::{enumerate_graphs, generate, product, FamilySpec, ProductKind};

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k == p.len() {
                out.push(p.clone());
                return;
            }
            for i in k..p.len() {
                p.swap(k, i);
                rec(k + 1, p, out);
                p.swap(k, i);
            }
        }
        rec(0, &mut p, &mut out);
        out
    }

    fn brute_tw(g: &Graph) -> usize {
        permutations(g.n())
            .iter()
            .map(|o| elimination_decomposition(g, o).width())
            .min()
            .unwrap_or(0)
    }

    fn brute_pw(g: &Graph) -> usize {
        permutations(g.n())
            .iter()
            .map(|o| vertex_separation_decomposition(g, o).width())
            .min()
            .unwrap_or(0)
    }

    fn fam(s: FamilySpec) -> Graph {
        generate(&s).unwrap()
    }

    #[test]
    fn matches_permutation_oracle_on_small_graphs() {
        for n in 0..=6 {
            for g in enumerate_graphs(n) {
                let t = exact_width(&g, WidthKind::Tree).unwrap();
                let p = exact_width(&g, WidthKind::Path).unwrap();
                assert_eq!(t.value, brute_tw(&g), "tw of {g:?}");
                assert_eq!(p.value, brute_pw(&g), "pw of {g:?}");
                assert!(validate_decomposition(&g, &t.decomposition).is_empty());
                assert!(validate_decomposition(&g, &p.decomposition).is_empty());
                assert!(t.decomposition.host_is_tree());
                assert!(p.decomposition.host_is_path());
                assert_eq!(t.decomposition.width(), t.value);
                assert_eq!(p.decomposition.width(), p.value);
            }
        }
    }

    #[test]
    fn named_values() {
        assert_eq!(treewidth(&fam(FamilySpec::Complete(4))), 3);
        assert_eq!(treewidth(&fam(FamilySpec::DaddyLonglegs(3))), 1);
        assert_eq!(pathwidth(&fam(FamilySpec::Star(4))), 1);
        assert_eq!(pathwidth(&fam(FamilySpec::DaddyLonglegs(3))), 2);
        assert_eq!(treewidth(&fam(FamilySpec::Cycle(7))), 2);
        assert_eq!(treewidth(&fam(FamilySpec::Grid(4, 4))), 4);
        assert_eq!(pathwidth(&fam(FamilySpec::Grid(3, 5))), 3);
        assert_eq!(treewidth(&Graph::empty(3)), 0);
    }

    #[test]
    fn strong_with_clique() {
        let p3 = fam(FamilySpec::Path(3));
        let k2 = fam(FamilySpec::Complete(2));
        let g = product(&p3, &k2, ProductKind::Strong).unwrap().base;
        assert_eq!(exact_width(&g, WidthKind::Tree).unwrap().value, 3);
    }

    #[test]
    fn advisory_limits() {
        let g = fam(FamilySpec::Path(15));
        assert!(matches!(exact_width(&g, WidthKind::Tree), Err(Error::Budget { .. })));
        assert_eq!(exact_width(&g, WidthKind::Path).unwrap().value, 1);
        assert_eq!(exact_width_with_limit(&g, WidthKind::Tree, 20).unwrap().value, 1);
    }

    #[test]
    fn empty_graph_has_one_empty_bag() {
        let r = exact_width(&Graph::empty(0), WidthKind::Tree).unwrap();
        assert_eq!(r.value, 0);
        assert_eq!(r.decomposition.bags, vec![Vec::<usize>::new()]);
    }
}
