//! Bipartite path selection, lifting linked path systems into the double
//! cover, grid-like-minors and disjoint linkages by max-flow.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{hadwiger_unchecked, validate_model, MinorModel, ModelViolation};
use crate::error::{budget, Error, Result};
use crate::graph::{Graph, GraphBuilder};

/// Advisory order limit for [`find_disjoint_linkage`].
pub const LINKAGE_LIMIT: usize = 32;

fn violation(msg: String) -> Error {
    Error::Precondition(msg)
}

fn check_path(g: &Graph, p: &[usize]) -> std::result::Result<(), String> {
    if p.is_empty() {
        return Err("empty path".into());
    }
    if let Some(&v) = p.iter().find(|&&v| v >= g.n()) {
        return Err(format!("unknown vertex {v}"));
    }
    let mut seen = vec![false; g.n()];
    for &v in p {
        if std::mem::replace(&mut seen[v], true) {
            return Err(format!("vertex {v} repeats"));
        }
    }
    match p.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
        Some(w) => Err(format!("{}-{} is not an edge", w[0], w[1])),
        None => Ok(()),
    }
}

/// A subgraph with a proper 2-colouring; `colour[i]` belongs to `vertices[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColouredSubgraph {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub colour: Vec<u8>,
}

impl ColouredSubgraph {
    /// A path coloured alternately from colour 0.
    pub fn path(p: &[usize]) -> ColouredSubgraph {
        ColouredSubgraph {
            vertices: p.to_vec(),
            edges: p.windows(2).map(|w| (w[0], w[1])).collect(),
            colour: (0..p.len()).map(|i| (i % 2) as u8).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Selection {
    /// Indices of the kept paths, ascending.
    pub selected: Vec<usize>,
    /// Which subgraphs had their colouring switched.
    pub switched: Vec<bool>,
    /// Proper 2-colouring of the union of the subgraphs and kept paths.
    pub colouring: Vec<Option<u8>>,
}

/// Keeps at least half of the paths so that the subgraphs plus the kept
/// paths form a bipartite graph. Subgraph colourings are switched one at a
/// time while that makes more paths agree with both endpoint colours.
pub fn select_bipartite_paths(g: &Graph, subgraphs: &[ColouredSubgraph], paths: &[Vec<usize>]) -> Result<Selection> {
    let n = g.n();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut col = vec![0u8; n];
    for (i, h) in subgraphs.iter().enumerate() {
        if h.colour.len() != h.vertices.len() {
            return Err(violation(format!("subgraph {i} has {} colours for {} vertices", h.colour.len(), h.vertices.len())));
        }
        for (&v, &c) in h.vertices.iter().zip(&h.colour) {
            if v >= n {
                return Err(violation(format!("subgraph {i} holds unknown vertex {v}")));
            }
            if let Some(j) = owner[v] {
                return Err(violation(format!("subgraphs {j} and {i} share vertex {v}")));
            }
            owner[v] = Some(i);
            col[v] = c & 1;
        }
        for &(u, v) in &h.edges {
            if u >= n || v >= n || owner[u] != Some(i) || owner[v] != Some(i) || !g.has_edge(u, v) {
                return Err(violation(format!("subgraph {i} edge {u}-{v} is not an edge among its vertices")));
            }
            if col[u] == col[v] {
                return Err(violation(format!("subgraph {i} colouring is improper on {u}-{v}")));
            }
        }
    }
    let mut interior_owner: Vec<Option<usize>> = vec![None; n];
    let mut ends = Vec::with_capacity(paths.len());
    for (pi, p) in paths.iter().enumerate() {
        check_path(g, p).map_err(|e| violation(format!("path {pi}: {e}")))?;
        if p.len() < 2 {
            return Err(violation(format!("path {pi} has a single vertex")));
        }
        let (a, b) = (p[0], p[p.len() - 1]);
        let (Some(ha), Some(hb)) = (owner[a], owner[b]) else {
            return Err(violation(format!("path {pi} does not end in two subgraphs")));
        };
        if ha == hb {
            return Err(violation(format!("path {pi} joins subgraph {ha} to itself")));
        }
        for &v in &p[1..p.len() - 1] {
            if let Some(h) = owner[v] {
                return Err(violation(format!("path {pi} meets subgraph {h} at interior vertex {v}")));
            }
            if let Some(q) = interior_owner[v] {
                return Err(violation(format!("paths {q} and {pi} share interior vertex {v}")));
            }
            interior_owner[v] = Some(pi);
        }
        let agree = (col[a] == col[b]) == ((p.len() - 1) % 2 == 0);
        ends.push((ha, hb, agree));
    }
    let t = subgraphs.len();
    let mut switched = vec![false; t];
    let agrees = |sw: &[bool], &(a, b, agree): &(usize, usize, bool)| agree ^ sw[a] ^ sw[b];
    loop {
        let flip = (0..t).find(|&i| {
            let (mut yes, mut no) = (0, 0);
            for e in ends.iter().filter(|e| e.0 == i || e.1 == i) {
                if agrees(&switched, e) {
                    yes += 1;
                } else {
                    no += 1;
                }
            }
            no > yes
        });
        match flip {
            Some(i) => switched[i] = !switched[i],
            None => break,
        }
    }
    let selected: Vec<usize> = (0..paths.len()).filter(|&i| agrees(&switched, &ends[i])).collect();
    let mut colouring: Vec<Option<u8>> = vec![None; n];
    for (i, h) in subgraphs.iter().enumerate() {
        for &v in &h.vertices {
            colouring[v] = Some(col[v] ^ switched[i] as u8);
        }
    }
    for &pi in &selected {
        let p = &paths[pi];
        let c0 = colouring[p[0]].expect("endpoint coloured");
        for (t, &v) in p.iter().enumerate().skip(1).take(p.len() - 2) {
            colouring[v] = Some(c0 ^ (t % 2) as u8);
        }
    }
    let union_edges = subgraphs
        .iter()
        .flat_map(|h| h.edges.iter().copied())
        .chain(selected.iter().flat_map(|&pi| paths[pi].windows(2).map(|w| (w[0], w[1]))));
    for (u, v) in union_edges {
        if colouring[u] == colouring[v] {
            return Err(Error::Certificate(format!("selected union is not properly coloured at {u}-{v}")));
        }
    }
    Ok(Selection {
        selected,
        switched,
        colouring,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Linkage {
    pub i: usize,
    pub j: usize,
    pub paths: Vec<Vec<usize>>,
}

/// Disjoint trunk paths and, for some pairs `i < j`, disjoint paths from
/// trunk `i` to trunk `j` meeting the trunks only at their endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSystem {
    pub trunks: Vec<Vec<usize>>,
    pub linkages: Vec<Linkage>,
}

impl PathSystem {
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.n();
        let mut trunk_of: Vec<Option<usize>> = vec![None; n];
        for (ti, p) in self.trunks.iter().enumerate() {
            check_path(g, p).map_err(|e| violation(format!("trunk {ti}: {e}")))?;
            for &v in p {
                if let Some(o) = trunk_of[v] {
                    return Err(violation(format!("trunks {o} and {ti} share vertex {v}")));
                }
                trunk_of[v] = Some(ti);
            }
        }
        let mut pairs = std::collections::BTreeSet::new();
        for (li, l) in self.linkages.iter().enumerate() {
            if l.i >= l.j || l.j >= self.trunks.len() {
                return Err(violation(format!("linkage {li} has bad trunk pair ({}, {})", l.i, l.j)));
            }
            if !pairs.insert((l.i, l.j)) {
                return Err(violation(format!("pair ({}, {}) is linked twice", l.i, l.j)));
            }
            let mut used = vec![false; n];
            for (pi, p) in l.paths.iter().enumerate() {
                check_path(g, p).map_err(|e| violation(format!("linkage {li} path {pi}: {e}")))?;
                let last = p.len() - 1;
                if trunk_of[p[0]] != Some(l.i) || trunk_of[p[last]] != Some(l.j) {
                    return Err(violation(format!("linkage {li} path {pi} does not run from trunk {} to trunk {}", l.i, l.j)));
                }
                if let Some(&v) = p[1..last].iter().find(|&&v| trunk_of[v].is_some()) {
                    return Err(violation(format!("linkage {li} path {pi} meets a trunk at interior vertex {v}")));
                }
                for &v in p {
                    if std::mem::replace(&mut used[v], true) {
                        return Err(violation(format!("linkage {li} paths share vertex {v}")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Paths of `G × K2` (vertex `(v, c)` has id `2v + c`) built from a path
/// system of `G`, keeping the linkages for the pairs in `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedSystem {
    pub trunks: Vec<Vec<usize>>,
    pub linkages: Vec<Linkage>,
    pub x: Vec<(usize, usize)>,
    /// Number of linked pairs in the input system.
    pub pairs: usize,
}

pub fn lift_linked_paths(g: &Graph, sys: &PathSystem) -> Result<LiftedSystem> {
    sys.validate(g)?;
    let n = g.n();
    let mut col = vec![0u8; n];
    for p in &sys.trunks {
        for (t, &v) in p.iter().enumerate() {
            col[v] = (t % 2) as u8;
        }
    }
    let agree = |p: &Vec<usize>| (col[p[0]] == col[p[p.len() - 1]]) == ((p.len() - 1) % 2 == 0);
    // Majority class per pair: every member has the same status under any switching.
    let majority: Vec<Vec<&Vec<usize>>> = sys
        .linkages
        .iter()
        .map(|l| {
            let (yes, no): (Vec<&Vec<usize>>, Vec<&Vec<usize>>) = l.paths.iter().partition(|p| agree(p));
            if yes.len() >= no.len() {
                yes
            } else {
                no
            }
        })
        .collect();

    // Auxiliary graph: the trunks plus one fresh path per pair with the
    // parity of a representative.
    let mut aux_id = vec![usize::MAX; n];
    let mut next = 0;
    for p in &sys.trunks {
        for &v in p {
            aux_id[v] = next;
            next += 1;
        }
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let trunk_subgraphs: Vec<ColouredSubgraph> = sys
        .trunks
        .iter()
        .map(|p| {
            let ids: Vec<usize> = p.iter().map(|&v| aux_id[v]).collect();
            edges.extend(ids.windows(2).map(|w| (w[0], w[1])));
            ColouredSubgraph::path(&ids)
        })
        .collect();
    let mut reps: Vec<Vec<usize>> = Vec::new();
    let mut rep_linkage = Vec::new();
    for (li, m) in majority.iter().enumerate() {
        let Some(r) = m.first() else { continue };
        let mut fresh = vec![aux_id[r[0]]];
        for _ in 1..r.len() - 1 {
            fresh.push(next);
            next += 1;
        }
        fresh.push(aux_id[r[r.len() - 1]]);
        edges.extend(fresh.windows(2).map(|w| (w[0], w[1])));
        reps.push(fresh);
        rep_linkage.push(li);
    }
    let mut b = GraphBuilder::new(next);
    for (u, v) in edges {
        if !b.has_edge(u, v) {
            b.add_edge(u, v)?;
        }
    }
    let aux = b.build();
    let sel = select_bipartite_paths(&aux, &trunk_subgraphs, &reps)?;
    let phi = |v: usize| sel.colouring[aux_id[v]].expect("trunk vertex coloured");

    let lift = |v: usize, c: u8| 2 * v + c as usize;
    let trunks: Vec<Vec<usize>> = sys.trunks.iter().map(|p| p.iter().map(|&v| lift(v, phi(v))).collect()).collect();
    let mut x = Vec::new();
    let mut linkages = Vec::new();
    for &ri in &sel.selected {
        let li = rep_linkage[ri];
        let l = &sys.linkages[li];
        let mut lifted = Vec::new();
        for q in &majority[li] {
            let c0 = phi(q[0]);
            let path: Vec<usize> = q.iter().enumerate().map(|(t, &v)| lift(v, c0 ^ (t % 2) as u8)).collect();
            let last = q[q.len() - 1];
            if path[path.len() - 1] != lift(last, phi(last)) {
                return Err(Error::Certificate(format!("lifted linkage ({}, {}) misses its trunk", l.i, l.j)));
            }
            lifted.push(path);
        }
        x.push((l.i, l.j));
        linkages.push(Linkage {
            i: l.i,
            j: l.j,
            paths: lifted,
        });
    }
    let out = LiftedSystem {
        trunks,
        linkages,
        x,
        pairs: sys.linkages.len(),
    };
    let cover = super::double_cover(g).base;
    PathSystem {
        trunks: out.trunks.clone(),
        linkages: out.linkages.clone(),
    }
    .validate(&cover)
    .map_err(|e| Error::Certificate(format!("lifted system invalid: {e}")))?;
    Ok(out)
}

/// Paths whose intersection graph is bipartite and holds the stored clique
/// model; the order is the size of that clique.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridLikeMinor {
    pub paths: Vec<Vec<usize>>,
    /// Branch sets are sets of path indices in the intersection graph.
    pub model: MinorModel,
}

impl GridLikeMinor {
    pub fn order(&self) -> usize {
        self.model.branch_sets.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GlmViolation {
    InvalidPath { index: usize, reason: String },
    NotBipartite,
    Model { violation: ModelViolation },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlmReport {
    pub order: usize,
    /// `floor(order / 2) - 1`, floored at zero.
    pub treewidth_lower: usize,
    pub violations: Vec<GlmViolation>,
}

impl GlmReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn intersection_graph(paths: &[Vec<usize>]) -> Graph {
    let mut b = GraphBuilder::new(paths.len());
    for i in 0..paths.len() {
        for j in i + 1..paths.len() {
            if paths[i].iter().any(|v| paths[j].contains(v)) {
                b.add_edge(i, j).expect("in range");
            }
        }
    }
    b.build()
}

pub fn validate_grid_like_minor(g: &Graph, glm: &GridLikeMinor) -> GlmReport {
    let mut violations = Vec::new();
    for (index, p) in glm.paths.iter().enumerate() {
        if let Err(reason) = check_path(g, p) {
            violations.push(GlmViolation::InvalidPath { index, reason });
        }
    }
    let ig = intersection_graph(&glm.paths);
    if !ig.is_bipartite() {
        violations.push(GlmViolation::NotBipartite);
    }
    let order = glm.order();
    let clique = crate::graph::generate(&crate::graph::FamilySpec::Complete(order)).expect("clique");
    violations.extend(
        validate_model(&ig, &clique, &glm.model)
            .into_iter()
            .map(|violation| GlmViolation::Model { violation }),
    );
    GlmReport {
        order,
        treewidth_lower: (order / 2).saturating_sub(1),
        violations,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LinkageResult {
    Found { paths: Vec<Vec<usize>> },
    /// Fewer than `k` disjoint paths exist; `cut` separates the two sets.
    Absent { max: usize, cut: Vec<usize> },
}

struct Flow {
    head: Vec<usize>,
    cap: Vec<u32>,
    adj: Vec<Vec<usize>>,
}

impl Flow {
    fn new(nodes: usize) -> Flow {
        Flow {
            head: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    fn arc(&mut self, u: usize, v: usize, cap: u32) {
        self.adj[u].push(self.head.len());
        self.head.push(v);
        self.cap.push(cap);
        self.adj[v].push(self.head.len());
        self.head.push(u);
        self.cap.push(0);
    }

    /// One BFS augmentation; returns false when `t` is unreachable.
    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut prev = vec![usize::MAX; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.head[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    prev[v] = e;
                    queue.push_back(v);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut v = t;
        while v != s {
            let e = prev[v];
            self.cap[e] -= 1;
            self.cap[e ^ 1] += 1;
            v = self.head[e ^ 1];
        }
        true
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &e in &self.adj[u] {
                if self.cap[e] > 0 && !seen[self.head[e]] {
                    seen[self.head[e]] = true;
                    stack.push(self.head[e]);
                }
            }
        }
        seen
    }
}

/// `k` vertex-disjoint paths from `a` to `b`, each meeting `a` only at its
/// first vertex and `b` only at its last; or a vertex cut of size below `k`.
pub fn find_disjoint_linkage(g: &Graph, a: &[usize], b: &[usize], k: usize) -> Result<LinkageResult> {
    budget("find_disjoint_linkage", g.n(), LINKAGE_LIMIT)?;
    let n = g.n();
    if let Some(&v) = a.iter().chain(b).find(|&&v| v >= n) {
        return Err(Error::Parameter(format!("unknown vertex {v}")));
    }
    let (s, t) = (2 * n, 2 * n + 1);
    let mut f = Flow::new(2 * n + 2);
    for v in 0..n {
        f.arc(2 * v, 2 * v + 1, 1);
    }
    for (u, v) in g.edges() {
        f.arc(2 * u + 1, 2 * v, 1);
        f.arc(2 * v + 1, 2 * u, 1);
    }
    for &v in a {
        f.arc(s, 2 * v, n as u32);
    }
    for &v in b {
        f.arc(2 * v + 1, t, n as u32);
    }
    let mut flow = 0;
    while flow < k && f.augment(s, t) {
        flow += 1;
    }
    if flow < k {
        let seen = f.reachable(s);
        let cut = (0..n).filter(|&v| seen[2 * v] && !seen[2 * v + 1]).collect();
        return Ok(LinkageResult::Absent { max: flow, cut });
    }
    let in_a: Vec<bool> = (0..n).map(|v| a.contains(&v)).collect();
    let in_b: Vec<bool> = (0..n).map(|v| b.contains(&v)).collect();
    let used = |e: usize| e % 2 == 0 && f.cap[e ^ 1] > 0;
    let mut paths = Vec::new();
    for &e0 in &f.adj[s] {
        if !used(e0) {
            continue;
        }
        let mut node = f.head[e0];
        let mut p = Vec::new();
        while node != t {
            if node % 2 == 0 {
                p.push(node / 2);
            }
            let e = *f.adj[node].iter().find(|&&e| used(e)).expect("flow continues");
            node = f.head[e];
        }
        let end = p.iter().position(|&v| in_b[v]).expect("path reaches b");
        let start = p[..=end].iter().rposition(|&v| in_a[v]).expect("path starts in a");
        paths.push(p[start..=end].to_vec());
    }
    Ok(LinkageResult::Found { paths })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlmOutcome {
    pub system: PathSystem,
    pub lifted: LiftedSystem,
    pub glm: GridLikeMinor,
    pub report: GlmReport,
    pub cover: Graph,
}

/// Links every trunk pair by `2k` disjoint paths avoiding the other trunks
/// (pairs where that fails are left unlinked), lifts the system into the
/// double cover, picks pairwise disjoint linkage representatives and takes a
/// largest clique model of the resulting intersection graph.
pub fn glm_pipeline(g: &Graph, trunks: &[Vec<usize>], k: usize) -> Result<GlmOutcome> {
    let mut trunk_of: Vec<Option<usize>> = vec![None; g.n()];
    for (ti, p) in trunks.iter().enumerate() {
        for &v in p {
            if v < g.n() {
                trunk_of[v] = Some(ti);
            }
        }
    }
    let mut linkages = Vec::new();
    for i in 0..trunks.len() {
        for j in i + 1..trunks.len() {
            let free = |v: usize| trunk_of[v].is_none_or(|t| t == i || t == j);
            let h = g.filter_edges(|u, v| free(u) && free(v));
            if let LinkageResult::Found { paths } = find_disjoint_linkage(&h, &trunks[i], &trunks[j], 2 * k)? {
                linkages.push(Linkage { i, j, paths });
            }
        }
    }
    let system = PathSystem {
        trunks: trunks.to_vec(),
        linkages,
    };
    let lifted = lift_linked_paths(g, &system)?;
    let chosen = disjoint_representatives(&lifted.linkages);
    let mut paths = lifted.trunks.clone();
    paths.extend(chosen);
    let ig = intersection_graph(&paths);
    let (_, model) = hadwiger_unchecked(&ig)?;
    let glm = GridLikeMinor { paths, model };
    let cover = super::double_cover(g).base;
    let report = validate_grid_like_minor(&cover, &glm);
    Ok(GlmOutcome {
        system,
        lifted,
        glm,
        report,
        cover,
    })
}

/// One path per linkage, pairwise disjoint, covering as many linkages as
/// possible (exhaustive over the small candidate lists).
fn disjoint_representatives(linkages: &[Linkage]) -> Vec<Vec<usize>> {
    fn rec<'a>(ls: &'a [Linkage], i: usize, cur: &mut Vec<&'a Vec<usize>>, best: &mut Vec<&'a Vec<usize>>) {
        if cur.len() + (ls.len() - i) <= best.len() {
            return;
        }
        if i == ls.len() {
            *best = cur.clone();
            return;
        }
        for p in &ls[i].paths {
            if cur.iter().all(|q| q.iter().all(|v| !p.contains(v))) {
                cur.push(p);
                rec(ls, i + 1, cur, best);
                cur.pop();
            }
        }
        rec(ls, i + 1, cur, best);
    }
    let mut best = Vec::new();
    rec(linkages, 0, &mut Vec::new(), &mut best);
    best.into_iter().cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};

    fn fam(s: FamilySpec) -> Graph {
        generate(&s).unwrap()
    }

    #[test]
    fn selection_keeps_agreeable_majority() {
        // Two coloured edges joined by five paths, three of one parity class.
        let mut b = GraphBuilder::new(11);
        b.add_edge(0, 1).unwrap();
        b.add_edge(2, 3).unwrap();
        let paths: Vec<Vec<usize>> = vec![vec![0, 4, 2], vec![1, 5, 3], vec![0, 6, 3], vec![1, 7, 8, 9, 2], vec![0, 10, 3]];
        for p in &paths {
            for w in p.windows(2) {
                if !b.has_edge(w[0], w[1]) {
                    b.add_edge(w[0], w[1]).unwrap();
                }
            }
        }
        let g = b.build();
        let hs = vec![ColouredSubgraph::path(&[0, 1]), ColouredSubgraph::path(&[2, 3])];
        let s = select_bipartite_paths(&g, &hs, &paths).unwrap();
        // 0-4-2: even length, colours 0,0: agreeable. 1-5-3: agreeable.
        // 0-6-3: even, colours 0,1: not. 1-7-8-9-2: even, 1,0: not. 0-10-3: not.
        assert_eq!(s.selected, vec![2, 3, 4]);
        assert_eq!(s.switched, vec![true, false]);
        let all_agree: Vec<Vec<usize>> = vec![vec![0, 4, 2], vec![1, 5, 3]];
        let s = select_bipartite_paths(&g, &hs, &all_agree).unwrap();
        assert_eq!(s.selected, vec![0, 1]);
    }

    #[test]
    fn selection_rejects_bad_hypotheses() {
        let g = fam(FamilySpec::Path(4));
        let hs = vec![ColouredSubgraph::path(&[0]), ColouredSubgraph::path(&[3])];
        assert!(select_bipartite_paths(&g, &hs, &[vec![0, 1, 2, 3]]).is_ok());
        let hs2 = vec![ColouredSubgraph::path(&[0, 1]), ColouredSubgraph::path(&[3])];
        assert!(matches!(
            select_bipartite_paths(&g, &hs2, &[vec![0, 1, 2, 3]]),
            Err(Error::Precondition(_))
        ));
        assert!(select_bipartite_paths(&g, &hs, &[vec![0, 2, 3]]).is_err());
    }

    #[test]
    fn lift_on_hexagon() {
        let c6 = fam(FamilySpec::Cycle(6));
        let sys = PathSystem {
            trunks: vec![vec![0, 1], vec![3, 4]],
            linkages: vec![Linkage {
                i: 0,
                j: 1,
                paths: vec![vec![1, 2, 3], vec![0, 5, 4]],
            }],
        };
        let lifted = lift_linked_paths(&c6, &sys).unwrap();
        assert_eq!(lifted.x, vec![(0, 1)]);
        assert_eq!(lifted.linkages[0].paths.len(), 2);
        for (lp, p) in lifted.linkages[0].paths.iter().zip(&sys.linkages[0].paths) {
            assert_eq!(&lp.iter().map(|v| v / 2).collect::<Vec<_>>(), p);
        }
    }

    #[test]
    fn grid_rows_and_columns() {
        let g = fam(FamilySpec::Grid(3, 3));
        let rows: Vec<Vec<usize>> = (0..3).map(|i| (0..3).map(|j| i * 3 + j).collect()).collect();
        let cols: Vec<Vec<usize>> = (0..3).map(|j| (0..3).map(|i| i * 3 + j).collect()).collect();
        let paths: Vec<Vec<usize>> = rows.into_iter().chain(cols).collect();
        let model = MinorModel::new(vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
        let glm = GridLikeMinor { paths, model };
        let r = validate_grid_like_minor(&g, &glm);
        assert!(r.is_ok(), "{r:?}");
        assert_eq!(r.order, 3);

        let tri = GridLikeMinor {
            paths: vec![vec![0, 1], vec![1, 2], vec![2, 5, 4, 1]],
            model: MinorModel::new(vec![vec![0]]),
        };
        let r = validate_grid_like_minor(&g, &tri);
        assert!(r.violations.contains(&GlmViolation::NotBipartite));
    }

    #[test]
    fn linkage_examples() {
        let g = fam(FamilySpec::Grid(3, 3));
        match find_disjoint_linkage(&g, &[0, 3, 6], &[2, 5, 8], 3).unwrap() {
            LinkageResult::Found { paths } => {
                assert_eq!(paths.len(), 3);
                let mut seen = std::collections::HashSet::new();
                for p in &paths {
                    assert!(p.windows(2).all(|w| g.has_edge(w[0], w[1])));
                    assert!(p.iter().all(|&v| seen.insert(v)));
                }
            }
            other => panic!("{other:?}"),
        }
        match find_disjoint_linkage(&g, &[0], &[8], 3).unwrap() {
            LinkageResult::Absent { max, cut } => {
                assert_eq!(max, 1);
                assert_eq!(cut.len(), 1);
            }
            other => panic!("{other:?}"),
        }
        let k4 = fam(FamilySpec::Complete(4));
        assert!(matches!(
            find_disjoint_linkage(&k4, &[0, 1], &[2, 3], 2).unwrap(),
            LinkageResult::Found { .. }
        ));
    }

    #[test]
    fn pipeline_on_a_grid() {
        let g = fam(FamilySpec::Grid(4, 4));
        let trunks = vec![vec![0, 1], vec![14, 15], vec![3, 7]];
        let out = glm_pipeline(&g, &trunks, 1).unwrap();
        assert!(out.report.is_ok(), "{:?}", out.report);
        assert!(2 * out.lifted.x.len() >= out.lifted.pairs);
    }
}
