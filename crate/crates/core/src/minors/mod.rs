//! Minor models, the Hadwiger and daddy-longlegs numbers, path and cover
//! parameters, the double cover and grid-like-minor machinery.

mod cover;
mod glm;
mod paths;

pub use cover::{bipartite_subgraph_lb, double_cover, grid_embedding, BipartiteLb, GridEmbedding};
pub use glm::{
    find_disjoint_linkage, glm_pipeline, lift_linked_paths, select_bipartite_paths, validate_grid_like_minor,
    ColouredSubgraph, GlmOutcome, GlmReport, GlmViolation, GridLikeMinor, Linkage, LinkageResult, LiftedSystem,
    PathSystem, Selection, LINKAGE_LIMIT,
};
pub use paths::{
    dfs_cover, longest_path, path_and_cover, path_number, vertex_cover, PathCover, PATH_PARAM_LIMIT,
};

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::bits::bits;
use crate::error::{budget, Result};
use crate::graph::{canonical_form, generate, CanonCode, FamilySpec, Graph, GraphBuilder};

/// Advisory order limits for the generic minor search.
pub const MINOR_G_LIMIT: usize = 12;
pub const MINOR_H_LIMIT: usize = 6;
/// Advisory order limit for the Hadwiger and daddy-longlegs numbers.
pub const PARAM_LIMIT: usize = 12;

/// `branch_sets[x]` is the set of `G` vertices contracted onto `H` vertex `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorModel {
    pub branch_sets: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelViolation {
    BranchCount { expected: usize, found: usize },
    EmptyBranch { h_vertex: usize },
    VertexOutOfRange { h_vertex: usize, vertex: usize },
    Overlap { vertex: usize },
    Disconnected { h_vertex: usize },
    MissingEdge { x: usize, y: usize },
}

impl std::fmt::Display for ModelViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModelViolation::BranchCount { expected, found } => {
                write!(f, "{found} branch sets for {expected} vertices")
            }
            ModelViolation::EmptyBranch { h_vertex } => write!(f, "branch set of {h_vertex} is empty"),
            ModelViolation::VertexOutOfRange { h_vertex, vertex } => {
                write!(f, "branch set of {h_vertex} holds unknown vertex {vertex}")
            }
            ModelViolation::Overlap { vertex } => write!(f, "vertex {vertex} is in two branch sets"),
            ModelViolation::Disconnected { h_vertex } => write!(f, "branch set of {h_vertex} is disconnected"),
            ModelViolation::MissingEdge { x, y } => write!(f, "no edge between branch sets of {x} and {y}"),
        }
    }
}

impl MinorModel {
    pub fn new(mut branch_sets: Vec<Vec<usize>>) -> MinorModel {
        for b in &mut branch_sets {
            b.sort_unstable();
            b.dedup();
        }
        MinorModel { branch_sets }
    }

    /// Total number of `G` vertices used.
    pub fn size(&self) -> usize {
        self.branch_sets.iter().map(Vec::len).sum()
    }
}

pub fn validate_model(g: &Graph, h: &Graph, m: &MinorModel) -> Vec<ModelViolation> {
    let mut out = Vec::new();
    if m.branch_sets.len() != h.n() {
        out.push(ModelViolation::BranchCount {
            expected: h.n(),
            found: m.branch_sets.len(),
        });
        return out;
    }
    let mut owner = vec![None; g.n()];
    for (x, b) in m.branch_sets.iter().enumerate() {
        if b.is_empty() {
            out.push(ModelViolation::EmptyBranch { h_vertex: x });
        }
        for &v in b {
            if v >= g.n() {
                out.push(ModelViolation::VertexOutOfRange { h_vertex: x, vertex: v });
                continue;
            }
            if owner[v].is_some() {
                out.push(ModelViolation::Overlap { vertex: v });
            }
            owner[v] = Some(x);
        }
        let inside: Vec<usize> = b.iter().copied().filter(|&v| v < g.n()).collect();
        if !inside.is_empty() && !g.is_connected_set(&inside) {
            out.push(ModelViolation::Disconnected { h_vertex: x });
        }
    }
    for (x, y) in h.edges() {
        let joined = m.branch_sets[x]
            .iter()
            .filter(|&&v| v < g.n())
            .any(|&v| g.neighbors(v).iter().any(|&u| owner[u] == Some(y)));
        if !joined {
            out.push(ModelViolation::MissingEdge { x, y });
        }
    }
    out
}

/// Searches for a model of `h` in `g` within the advisory limits.
pub fn find_minor(g: &Graph, h: &Graph) -> Result<Option<MinorModel>> {
    budget("find_minor (host)", g.n(), MINOR_G_LIMIT)?;
    budget("find_minor (pattern)", h.n(), MINOR_H_LIMIT)?;
    find_minor_unchecked(g, h)
}

/// Like [`find_minor`] with a caller-chosen host limit (at most 64).
pub fn find_minor_with_limit(g: &Graph, h: &Graph, limit: usize) -> Result<Option<MinorModel>> {
    budget("find_minor (host)", g.n(), limit)?;
    find_minor_unchecked(g, h)
}

fn find_minor_unchecked(g: &Graph, h: &Graph) -> Result<Option<MinorModel>> {
    g.require_masks("minor search")?;
    h.require_masks("minor search")?;
    if h.n() > g.n() || h.m() > g.m() {
        return Ok(None);
    }
    let mut search = MinorSearch {
        h,
        failed: HashSet::new(),
    };
    let sets: Vec<Vec<usize>> = (0..g.n()).map(|v| vec![v]).collect();
    Ok(search.run(g.clone(), sets).map(MinorModel::new))
}

struct MinorSearch<'a> {
    h: &'a Graph,
    failed: HashSet<CanonCode>,
}

impl MinorSearch<'_> {
    /// Contracts edges (and deletes vertices while the host is
    /// disconnected) until `h` appears as a subgraph.
    fn run(&mut self, g: Graph, sets: Vec<Vec<usize>>) -> Option<Vec<Vec<usize>>> {
        let h = self.h;
        if let Some(phi) = find_subgraph(h, &g) {
            return Some(phi.iter().map(|&v| sets[v].clone()).collect());
        }
        if g.n() <= h.n() {
            return None;
        }
        let connected = g.is_connected();
        let spare = g.n() - h.n();
        if (connected && g.m() < h.m() + spare) || g.m() < h.m() {
            return None;
        }
        let code = canonical_form(&g).0;
        if self.failed.contains(&code) {
            return None;
        }
        let mut moves: Vec<(usize, usize)> = g.edges().collect();
        moves.sort_by_key(|&(u, v)| ((g.mask(u) & g.mask(v)).count_ones(), u, v));
        for (u, v) in moves {
            let (ng, nsets) = contract(&g, &sets, u, v);
            if let Some(found) = self.run(ng, nsets) {
                return Some(found);
            }
        }
        if !connected {
            for v in 0..g.n() {
                let (ng, nsets) = delete(&g, &sets, v);
                if let Some(found) = self.run(ng, nsets) {
                    return Some(found);
                }
            }
        }
        self.failed.insert(code);
        None
    }
}

fn contract(g: &Graph, sets: &[Vec<usize>], u: usize, v: usize) -> (Graph, Vec<Vec<usize>>) {
    let idx = |w: usize| if w > v { w - 1 } else { w };
    let mut b = GraphBuilder::new(g.n() - 1);
    for (a, c) in g.edges() {
        let a = if a == v { u } else { a };
        let c = if c == v { u } else { c };
        if a != c && !b.has_edge(idx(a), idx(c)) {
            b.add_edge(idx(a), idx(c)).expect("in range");
        }
    }
    let mut nsets: Vec<Vec<usize>> = Vec::with_capacity(g.n() - 1);
    for (w, s) in sets.iter().enumerate() {
        if w == v {
            continue;
        }
        let mut s = s.clone();
        if w == u {
            s.extend_from_slice(&sets[v]);
        }
        nsets.push(s);
    }
    (b.build(), nsets)
}

fn delete(g: &Graph, sets: &[Vec<usize>], v: usize) -> (Graph, Vec<Vec<usize>>) {
    let keep: Vec<usize> = (0..g.n()).filter(|&w| w != v).collect();
    let nsets = keep.iter().map(|&w| sets[w].clone()).collect();
    (g.induced(&keep), nsets)
}

/// Injective homomorphism-preserving map of `h` into `g` (not necessarily
/// induced), as `phi[x]` for each `x` in `h`.
pub fn find_subgraph(h: &Graph, g: &Graph) -> Option<Vec<usize>> {
    let nh = h.n();
    if nh > g.n() || h.m() > g.m() {
        return None;
    }
    let order = placement_order(h);
    let mut phi = vec![usize::MAX; nh];
    fn rec(h: &Graph, g: &Graph, order: &[usize], k: usize, used: u64, phi: &mut Vec<usize>) -> bool {
        if k == order.len() {
            return true;
        }
        let x = order[k];
        let mut cand = !used & crate::bits::full(g.n());
        for &y in h.neighbors(x) {
            if phi[y] != usize::MAX {
                cand &= g.mask(phi[y]);
            }
        }
        for v in bits(cand) {
            if g.degree(v) < h.degree(x) {
                continue;
            }
            phi[x] = v;
            if rec(h, g, order, k + 1, used | 1 << v, phi) {
                return true;
            }
        }
        phi[x] = usize::MAX;
        false
    }
    if rec(h, g, &order, 0, 0, &mut phi) {
        Some(phi)
    } else {
        None
    }
}

/// Vertices of `h` so that each one after the first of its component has an
/// earlier neighbour; components start at a vertex of maximum degree.
fn placement_order(h: &Graph) -> Vec<usize> {
    let mut seen = vec![false; h.n()];
    let mut order = Vec::with_capacity(h.n());
    while order.len() < h.n() {
        let start = (0..h.n())
            .filter(|&v| !seen[v])
            .max_by_key(|&v| (h.degree(v), std::cmp::Reverse(v)))
            .expect("unplaced vertex");
        seen[start] = true;
        order.push(start);
        let mut i = order.len() - 1;
        while i < order.len() {
            let mut next: Vec<usize> = h.neighbors(order[i]).iter().copied().filter(|&u| !seen[u]).collect();
            next.sort_by_key(|&u| std::cmp::Reverse(h.degree(u)));
            for u in next {
                seen[u] = true;
                order.push(u);
            }
            i += 1;
        }
    }
    order
}

/// Hadwiger number: the largest `t` with a `K_t` minor, with its model.
pub fn hadwiger_number(g: &Graph) -> Result<(usize, MinorModel)> {
    budget("hadwiger_number", g.n(), PARAM_LIMIT)?;
    hadwiger_unchecked(g)
}

pub(crate) fn hadwiger_unchecked(g: &Graph) -> Result<(usize, MinorModel)> {
    g.require_masks("hadwiger number")?;
    let mut best = (0, MinorModel { branch_sets: Vec::new() });
    for t in 1..=g.n() {
        if g.m() < t * (t - 1) / 2 {
            break;
        }
        let kt = generate(&FamilySpec::Complete(t))?;
        match find_minor_unchecked(g, &kt)? {
            Some(m) => best = (t, m),
            None => break,
        }
    }
    Ok(best)
}

/// Daddy-longlegs number with a model of the daddy-longlegs tree (root `0`,
/// inner leg vertices `1..=k`, feet `k+1..=2k`). Zero for the empty graph.
///
/// Legs can always be shrunk to single edges, so the search ranges over
/// connected root sets `R` and takes a maximum matching of `G - R` among
/// edges touching the neighbourhood of `R`.
pub fn daddy_longlegs(g: &Graph) -> Result<(usize, MinorModel)> {
    budget("daddy_longlegs", g.n(), PARAM_LIMIT)?;
    dll_unchecked(g)
}

pub(crate) fn dll_unchecked(g: &Graph) -> Result<(usize, MinorModel)> {
    g.require_masks("daddy-longlegs number")?;
    let n = g.n();
    if n == 0 {
        return Ok((0, MinorModel { branch_sets: Vec::new() }));
    }
    let all = crate::bits::full(n);
    let mut best: (usize, u64, Vec<(usize, usize)>) = (0, 1, Vec::new());
    let mut roots = Vec::new();
    for start in 0..n {
        connected_sets(g, start, all, &mut roots);
    }
    for r in roots {
        let nr = bits(r).fold(0u64, |m, v| m | g.mask(v)) & !r;
        let rest = all & !r;
        if (nr.count_ones() as usize) <= best.0 || (rest.count_ones() as usize) < 2 * (best.0 + 1) {
            continue;
        }
        let mut memo = std::collections::HashMap::new();
        let legs = matching(g, rest, nr, &mut memo);
        if legs.len() > best.0 {
            best = (legs.len(), r, legs);
        }
    }
    let (k, r, legs) = best;
    let mut sets = vec![crate::bits::to_vec(r)];
    sets.extend(legs.iter().map(|&(u, _)| vec![u]));
    sets.extend(legs.iter().map(|&(_, v)| vec![v]));
    Ok((k, MinorModel::new(sets)))
}

/// Every connected vertex set whose smallest vertex is `start`.
fn connected_sets(g: &Graph, start: usize, within: u64, out: &mut Vec<u64>) {
    let allowed = within & !((1u64 << start) - 1);
    // Siblings already branched on are banned from later branches, so each
    // set is produced exactly once.
    fn grow(g: &Graph, set: u64, frontier: u64, mut banned: u64, allowed: u64, out: &mut Vec<u64>) {
        out.push(set);
        for v in bits(frontier) {
            banned |= 1 << v;
            let next = (frontier | g.mask(v)) & allowed & !set & !banned;
            grow(g, set | 1 << v, next, banned, allowed, out);
        }
    }
    grow(g, 1 << start, g.mask(start) & allowed, 1 << start, allowed, out);
}

/// Maximum matching of `g[set]` using only edges with an endpoint in
/// `anchor`; each pair is returned anchor-first.
fn matching(
    g: &Graph,
    set: u64,
    anchor: u64,
    memo: &mut std::collections::HashMap<u64, Vec<(usize, usize)>>,
) -> Vec<(usize, usize)> {
    let useful = bits(set)
        .find(|&v| (anchor >> v & 1 == 1 && g.mask(v) & set != 0) || g.mask(v) & set & anchor != 0);
    let Some(v) = useful else {
        return Vec::new();
    };
    if let Some(m) = memo.get(&set) {
        return m.clone();
    }
    let mut best = matching(g, set & !(1u64 << v), anchor, memo);
    let partners = if anchor >> v & 1 == 1 {
        g.mask(v) & set
    } else {
        g.mask(v) & set & anchor
    };
    for u in bits(partners) {
        let rest = matching(g, set & !(1u64 << v) & !(1u64 << u), anchor, memo);
        if rest.len() + 1 > best.len() {
            let pair = if anchor >> v & 1 == 1 { (v, u) } else { (u, v) };
            best = std::iter::once(pair).chain(rest).collect();
        }
    }
    memo.insert(set, best.clone());
    best
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorParameters {
    pub eta: usize,
    pub eta_model: MinorModel,
    pub dll: usize,
    pub dll_model: MinorModel,
}

pub fn minor_parameters(g: &Graph) -> Result<MinorParameters> {
    let (eta, eta_model) = hadwiger_number(g)?;
    let (dll, dll_model) = daddy_longlegs(g)?;
    Ok(MinorParameters {
        eta,
        eta_model,
        dll,
        dll_model,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_graphs, product, ProductKind};

    fn fam(s: FamilySpec) -> Graph {
        generate(&s).unwrap()
    }

    /// Brute force over all labellings of `g` vertices by `h` vertices or
    /// "unused".
    fn brute_minor(g: &Graph, h: &Graph) -> bool {
        let (n, k) = (g.n(), h.n());
        let mut label = vec![0usize; n];
        loop {
            let sets: Vec<Vec<usize>> = (0..k).map(|x| (0..n).filter(|&v| label[v] == x + 1).collect()).collect();
            if validate_model(g, h, &MinorModel::new(sets)).is_empty() {
                return true;
            }
            let mut i = 0;
            while i < n && label[i] == k {
                label[i] = 0;
                i += 1;
            }
            if i == n {
                return false;
            }
            label[i] += 1;
        }
    }

    #[test]
    fn validator() {
        let p3 = fam(FamilySpec::Path(3));
        let k2 = fam(FamilySpec::Complete(2));
        assert!(validate_model(&p3, &k2, &MinorModel::new(vec![vec![0, 1], vec![2]])).is_empty());
        assert_eq!(
            validate_model(&p3, &k2, &MinorModel::new(vec![vec![0, 2], vec![1]])),
            vec![ModelViolation::Disconnected { h_vertex: 0 }]
        );
        let k3 = fam(FamilySpec::Complete(3));
        let v = validate_model(&p3, &k3, &MinorModel::new(vec![vec![0], vec![1], vec![2]]));
        assert_eq!(v, vec![ModelViolation::MissingEdge { x: 0, y: 2 }]);
        let v = validate_model(&p3, &k2, &MinorModel::new(vec![vec![0, 1], vec![1]]));
        assert!(v.contains(&ModelViolation::Overlap { vertex: 1 }));
    }

    #[test]
    fn find_minor_matches_brute_force() {
        let patterns = [
            fam(FamilySpec::Complete(3)),
            fam(FamilySpec::Cycle(4)),
            fam(FamilySpec::Star(3)),
            fam(FamilySpec::Path(4)),
            fam(FamilySpec::DisjointUnion(vec![FamilySpec::Path(2), FamilySpec::Path(2)])),
        ];
        for n in 1..=6 {
            for g in enumerate_graphs(n) {
                for h in &patterns {
                    if h.n() > 4 && n > 5 {
                        continue;
                    }
                    let found = find_minor(&g, h).unwrap();
                    if let Some(m) = &found {
                        assert!(validate_model(&g, h, m).is_empty());
                    }
                    assert_eq!(found.is_some(), brute_minor(&g, h), "{g:?} vs {h:?}");
                }
            }
        }
    }

    #[test]
    fn find_minor_examples() {
        let mut b = GraphBuilder::new(6);
        for (u, v) in [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 1), (2, 5), (5, 4)] {
            b.add_edge(u, v).unwrap();
        }
        let sub_k4 = b.build();
        let k4 = fam(FamilySpec::Complete(4));
        assert!(find_minor(&sub_k4, &k4).unwrap().is_some());
        let k5 = fam(FamilySpec::Complete(5));
        assert!(find_minor(&k4, &k5).unwrap().is_none());
        let octahedron = fam(FamilySpec::CompleteMultipartite {
            parts: vec![2, 2, 2],
            overlay: 0,
        });
        assert!(find_minor(&octahedron, &k5).unwrap().is_none());
        let s2 = fam(FamilySpec::Star(2));
        let p4 = fam(FamilySpec::Path(4));
        let g = product(&s2, &p4, ProductKind::Direct).unwrap().base;
        assert!(find_minor(&g, &fam(FamilySpec::Cycle(4))).unwrap().is_some());
    }

    #[test]
    fn parameters() {
        let p = minor_parameters(&fam(FamilySpec::Complete(5))).unwrap();
        assert_eq!((p.eta, p.dll), (5, 2));
        for b in 2..=5 {
            assert_eq!(daddy_longlegs(&fam(FamilySpec::Star(b))).unwrap().0, 1);
        }
        let w3 = fam(FamilySpec::DaddyLonglegs(3));
        let (k, m) = daddy_longlegs(&w3).unwrap();
        assert_eq!(k, 3);
        assert!(validate_model(&w3, &w3, &m).is_empty());
        assert_eq!(hadwiger_number(&fam(FamilySpec::Grid(3, 3))).unwrap().0, 4);
        assert_eq!(hadwiger_number(&Graph::empty(3)).unwrap().0, 1);
        assert_eq!(hadwiger_number(&Graph::empty(0)).unwrap().0, 0);
    }

    #[test]
    fn dll_matches_generic_search() {
        for n in 1..=7 {
            for g in enumerate_graphs(n) {
                let (k, m) = daddy_longlegs(&g).unwrap();
                let w = fam(FamilySpec::DaddyLonglegs(k));
                assert!(validate_model(&g, &w, &m).is_empty(), "{g:?}");
                if 2 * k + 3 <= n {
                    let w1 = fam(FamilySpec::DaddyLonglegs(k + 1));
                    assert!(find_minor_with_limit(&g, &w1, 12).unwrap().is_none(), "{g:?}");
                }
            }
        }
    }

    #[test]
    fn connected_sets_are_unique_and_complete() {
        let g = fam(FamilySpec::Cycle(5));
        let mut all = Vec::new();
        for s in 0..5 {
            connected_sets(&g, s, crate::bits::full(5), &mut all);
        }
        let mut sorted = all.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), all.len());
        let brute = (1u64..32).filter(|&s| g.is_connected_mask(s)).count();
        assert_eq!(all.len(), brute);
    }
}
