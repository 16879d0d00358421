//! Complete multipartite subgraphs of graph products.
//!
//! The `decide_*` functions answer containment of `K_{n_1..n_d}` in a product
//! by searching the factors only, and return certificates that are realised
//! as explicit embeddings in the product. [`oracle_subgraph`] answers the same
//! question by exhaustive search on any graph and is the reference they are
//! tested against.

use serde::{Deserialize, Serialize};

use crate::bits::{bits, full};
use crate::error::{Error, Result};
use crate::graph::{generate, product, FamilySpec, Graph, ProductKind};

/// Advisory order limit for [`oracle_subgraph`].
pub const ORACLE_LIMIT: usize = 14;

/// `K_{n_1..n_d, x̄}`: independent parts of the given sizes plus an overlay
/// clique of size `x` joined to everything.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultipartitePattern {
    pub parts: Vec<usize>,
    pub overlay: usize,
}

impl MultipartitePattern {
    /// Validated constructor: at least one part, all parts positive.
    pub fn new(parts: Vec<usize>, overlay: usize) -> Result<MultipartitePattern> {
        if parts.is_empty() {
            return Err(Error::Parameter("pattern needs at least one part".into()));
        }
        if parts.contains(&0) {
            return Err(Error::Parameter("pattern parts must be positive".into()));
        }
        Ok(MultipartitePattern { parts, overlay })
    }

    /// Pattern allowing empty parts, as used for factor patterns.
    pub fn relaxed(parts: Vec<usize>, overlay: usize) -> MultipartitePattern {
        MultipartitePattern { parts, overlay }
    }

    pub fn bipartite(s: usize, t: usize) -> MultipartitePattern {
        MultipartitePattern::relaxed(vec![s, t], 0)
    }

    pub fn clique(t: usize) -> MultipartitePattern {
        MultipartitePattern::relaxed(vec![1; t], 0)
    }

    pub fn order(&self) -> usize {
        self.parts.iter().sum::<usize>() + self.overlay
    }

    pub fn d(&self) -> usize {
        self.parts.len()
    }

    pub fn graph(&self) -> Graph {
        generate(&FamilySpec::CompleteMultipartite {
            parts: self.parts.clone(),
            overlay: self.overlay,
        })
        .expect("multipartite patterns always generate")
    }
}

/// Vertex sets realising a pattern, in the pattern's part order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub parts: Vec<Vec<usize>>,
    pub overlay: Vec<usize>,
}

impl Embedding {
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.parts.iter().flatten().chain(&self.overlay).copied()
    }

    /// Checks sizes, disjointness and that every required edge is present.
    pub fn validate(&self, g: &Graph, p: &MultipartitePattern) -> Result<()> {
        let fail = |m: String| Err(Error::Certificate(m));
        if self.parts.len() != p.parts.len() {
            return fail(format!("{} parts for a {}-part pattern", self.parts.len(), p.d()));
        }
        for (i, (set, &want)) in self.parts.iter().zip(&p.parts).enumerate() {
            if set.len() != want {
                return fail(format!("part {i} has {} vertices, pattern needs {want}", set.len()));
            }
        }
        if self.overlay.len() != p.overlay {
            return fail(format!("overlay has {} vertices, pattern needs {}", self.overlay.len(), p.overlay));
        }
        let mut seen = vec![false; g.n()];
        for v in self.vertices() {
            if v >= g.n() || std::mem::replace(&mut seen[v], true) {
                return fail(format!("vertex {v} repeated or out of range"));
            }
        }
        let mut label: Vec<(usize, usize)> = Vec::new();
        for (i, set) in self.parts.iter().enumerate() {
            label.extend(set.iter().map(|&v| (v, i)));
        }
        for (j, &v) in self.overlay.iter().enumerate() {
            label.push((v, p.d() + j));
        }
        for (i, &(u, a)) in label.iter().enumerate() {
            for &(v, b) in &label[i + 1..] {
                if a != b && !g.has_edge(u, v) {
                    return fail(format!("missing edge {u}-{v}"));
                }
            }
        }
        Ok(())
    }
}

/// Exhaustive search for `p` as a subgraph of `g`, refusing graphs above
/// [`ORACLE_LIMIT`] vertices.
pub fn oracle_subgraph(g: &Graph, p: &MultipartitePattern) -> Result<Option<Embedding>> {
    oracle_subgraph_with_limit(g, p, ORACLE_LIMIT)
}

pub fn oracle_subgraph_with_limit(g: &Graph, p: &MultipartitePattern, limit: usize) -> Result<Option<Embedding>> {
    crate::error::budget("oracle_subgraph", g.n(), limit)?;
    g.require_masks("oracle_subgraph")?;
    Ok(search_embedding(g, p))
}

/// Search without the advisory check; `g` must have at most 64 vertices.
pub(crate) fn search_embedding(g: &Graph, p: &MultipartitePattern) -> Option<Embedding> {
    if p.order() > g.n() {
        return None;
    }
    // Overlay vertices are singleton parts. Larger parts go first; equal
    // sizes are interchangeable, so their first vertices must increase.
    let mut slots: Vec<(usize, usize)> = p
        .parts
        .iter()
        .enumerate()
        .filter(|&(_, &s)| s > 0)
        .map(|(i, &s)| (s, i))
        .chain((0..p.overlay).map(|j| (1, p.d() + j)))
        .collect();
    slots.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let sizes: Vec<usize> = slots.iter().map(|s| s.0).collect();
    let mut suffix = vec![0; sizes.len() + 1];
    for i in (0..sizes.len()).rev() {
        suffix[i] = suffix[i + 1] + sizes[i];
    }
    let mut st = Oracle {
        masks: g.masks(),
        sizes: &sizes,
        suffix: &suffix,
        chosen: vec![Vec::new(); sizes.len()],
    };
    if !st.part(0, full(g.n()), 0) {
        return None;
    }
    let mut emb = Embedding {
        parts: vec![Vec::new(); p.d()],
        overlay: vec![0; p.overlay],
    };
    for ((_, idx), set) in slots.iter().zip(st.chosen) {
        if *idx < p.d() {
            emb.parts[*idx] = set;
        } else {
            emb.overlay[idx - p.d()] = set[0];
        }
    }
    Some(emb)
}

struct Oracle<'a> {
    masks: &'a [u64],
    sizes: &'a [usize],
    suffix: &'a [usize],
    chosen: Vec<Vec<usize>>,
}

impl Oracle<'_> {
    /// Starts part `i`; `cand` holds unused vertices adjacent to every vertex
    /// of the earlier parts. `min_first` enforces the equal-size ordering.
    fn part(&mut self, i: usize, cand: u64, min_first: usize) -> bool {
        if i == self.sizes.len() {
            return true;
        }
        if (cand.count_ones() as usize) < self.suffix[i] {
            return false;
        }
        self.pick(i, cand, cand, min_first)
    }

    /// Adds vertices to part `i` in increasing order. `avail` holds the
    /// remaining choices for this part, `future` the common neighbourhood
    /// available to later parts.
    fn pick(&mut self, i: usize, avail: u64, future: u64, from: usize) -> bool {
        let have = self.chosen[i].len();
        if have == self.sizes[i] {
            let first = self.chosen[i][0];
            let next_min = if i + 1 < self.sizes.len() && self.sizes[i + 1] == self.sizes[i] {
                first + 1
            } else {
                0
            };
            return self.part(i + 1, future, next_min);
        }
        let need_here = self.sizes[i] - have;
        let avail = avail & !full(from);
        if (avail.count_ones() as usize) < need_here {
            return false;
        }
        for v in bits(avail) {
            let fut = future & self.masks[v];
            if (fut.count_ones() as usize) < self.suffix[i + 1] {
                continue;
            }
            self.chosen[i].push(v);
            if self.pick(i, avail, fut, v + 1) {
                return true;
            }
            self.chosen[i].pop();
        }
        false
    }
}

fn require_plain(p: &MultipartitePattern, op: &str) -> Result<()> {
    if p.overlay > 0 {
        return Err(Error::Unsupported(format!("{op} covers patterns without an overlay clique")));
    }
    if p.d() < 2 {
        return Err(Error::Parameter(format!("{op} needs at least two parts")));
    }
    if p.parts.contains(&0) {
        return Err(Error::Parameter("pattern parts must be positive".into()));
    }
    Ok(())
}

/// Which disjunct of the cartesian characterisation holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum CartesianWitness {
    /// The pattern lies in factor 1 or 2.
    InFactor { factor: u8, embedding: Embedding },
    /// `K_{2,2}` from an edge of each factor.
    K22 { edge1: (usize, usize), edge2: (usize, usize) },
    /// `K_{1,s}` centred at `(centre1, centre2)`.
    Star { s: usize, centre1: usize, centre2: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartesianCertificate {
    pub witness: CartesianWitness,
    /// The realised subgraph of the product.
    pub embedding: Embedding,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectCertificate {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub embedding1: Embedding,
    pub embedding2: Embedding,
    pub embedding: Embedding,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongCertificate {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub z: Vec<usize>,
    pub x: usize,
    pub y: usize,
    pub embedding1: Embedding,
    pub embedding2: Embedding,
    pub embedding: Embedding,
}

impl CartesianCertificate {
    pub fn validate(&self, g1: &Graph, g2: &Graph, p: &MultipartitePattern) -> Result<()> {
        match &self.witness {
            CartesianWitness::InFactor { factor, embedding } => {
                embedding.validate(if *factor == 1 { g1 } else { g2 }, p)?
            }
            CartesianWitness::K22 { edge1, edge2 } => {
                if p.parts != [2, 2] || !g1.has_edge(edge1.0, edge1.1) || !g2.has_edge(edge2.0, edge2.1) {
                    return Err(Error::Certificate("K22 witness does not match".into()));
                }
            }
            CartesianWitness::Star { s, centre1, centre2 } => {
                if g1.degree(*centre1) + g2.degree(*centre2) < *s {
                    return Err(Error::Certificate("star centre degree too small".into()));
                }
            }
        }
        let prod = product(g1, g2, ProductKind::Cartesian)?;
        self.embedding.validate(&prod.base, p)
    }
}

impl DirectCertificate {
    pub fn validate(&self, g1: &Graph, g2: &Graph, p: &MultipartitePattern) -> Result<()> {
        for ((&n, &a), &b) in p.parts.iter().zip(&self.a).zip(&self.b) {
            if a == 0 || b == 0 || n > a * b {
                return Err(Error::Certificate(format!("part of size {n} not covered by {a} x {b}")));
            }
        }
        self.embedding1.validate(g1, &MultipartitePattern::relaxed(self.a.clone(), 0))?;
        self.embedding2.validate(g2, &MultipartitePattern::relaxed(self.b.clone(), 0))?;
        let prod = product(g1, g2, ProductKind::Direct)?;
        self.embedding.validate(&prod.base, p)
    }
}

impl StrongCertificate {
    pub fn validate(&self, g1: &Graph, g2: &Graph, p: &MultipartitePattern) -> Result<()> {
        let (x, y) = (self.x, self.y);
        for (j, &n) in p.parts.iter().enumerate() {
            let (a, b, z) = (self.a[j], self.b[j], self.z[j]);
            if n > a * b + a * y + b * x + z {
                return Err(Error::Certificate(format!("part {j} inequality fails")));
            }
        }
        if self.z.iter().sum::<usize>() > x * y {
            return Err(Error::Certificate("z exceeds xy".into()));
        }
        self.embedding1.validate(g1, &MultipartitePattern::relaxed(self.a.clone(), x))?;
        self.embedding2.validate(g2, &MultipartitePattern::relaxed(self.b.clone(), y))?;
        let prod = product(g1, g2, ProductKind::Strong)?;
        self.embedding.validate(&prod.base, p)
    }
}

fn factor_search(g: &Graph, p: &MultipartitePattern) -> Result<Option<Embedding>> {
    g.require_masks("multipartite factor search")?;
    Ok(search_embedding(g, p))
}

fn argmax_degree(g: &Graph) -> usize {
    (0..g.n()).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))).unwrap_or(0)
}

/// Decides `K_{n_1..n_d} ⊆ G1 □ G2` from the factors.
pub fn decide_cartesian(g1: &Graph, g2: &Graph, p: &MultipartitePattern) -> Result<Option<CartesianCertificate>> {
    require_plain(p, "decide_cartesian")?;
    if g1.n() == 0 || g2.n() == 0 {
        return Err(Error::Precondition("factors must have at least one vertex".into()));
    }
    let n2 = g2.n();
    for (factor, g) in [(1u8, g1), (2u8, g2)] {
        if let Some(e) = factor_search(g, p)? {
            let lift = |v: usize| if factor == 1 { v * n2 } else { v };
            let embedding = Embedding {
                parts: e.parts.iter().map(|s| s.iter().map(|&v| lift(v)).collect()).collect(),
                overlay: Vec::new(),
            };
            return Ok(Some(CartesianCertificate {
                witness: CartesianWitness::InFactor { factor, embedding: e },
                embedding,
            }));
        }
    }
    if p.parts == [2, 2] {
        if let (Some(e1), Some(e2)) = (g1.edges().next(), g2.edges().next()) {
            let ((x, y), (u, v)) = (e1, e2);
            let id = |a: usize, b: usize| a * n2 + b;
            let embedding = Embedding {
                parts: vec![vec![id(x, u), id(y, v)], vec![id(y, u), id(x, v)]],
                overlay: Vec::new(),
            };
            return Ok(Some(CartesianCertificate {
                witness: CartesianWitness::K22 { edge1: e1, edge2: e2 },
                embedding,
            }));
        }
    }
    if p.d() == 2 && p.parts.contains(&1) {
        let (centre_side, s) = if p.parts[0] == 1 { (0, p.parts[1]) } else { (1, p.parts[0]) };
        let (c1, c2) = (argmax_degree(g1), argmax_degree(g2));
        if g1.degree(c1) + g2.degree(c2) >= s {
            let leaves: Vec<usize> = g1
                .neighbors(c1)
                .iter()
                .map(|&a| a * n2 + c2)
                .chain(g2.neighbors(c2).iter().map(|&v| c1 * n2 + v))
                .take(s)
                .collect();
            let mut parts = vec![Vec::new(), Vec::new()];
            parts[centre_side] = vec![c1 * n2 + c2];
            parts[1 - centre_side] = leaves;
            return Ok(Some(CartesianCertificate {
                witness: CartesianWitness::Star { s, centre1: c1, centre2: c2 },
                embedding: Embedding { parts, overlay: Vec::new() },
            }));
        }
    }
    Ok(None)
}

/// Mixed-radix counter over `0..=bound[i]` (or `lo..=bound[i]`).
pub(crate) fn for_each_vector(lo: usize, bounds: &[usize], mut f: impl FnMut(&[usize]) -> bool) {
    if bounds.iter().any(|&b| b < lo) {
        return;
    }
    let mut cur = vec![lo; bounds.len()];
    loop {
        if f(&cur) {
            return;
        }
        let mut i = bounds.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if cur[i] < bounds[i] {
                cur[i] += 1;
                for c in &mut cur[i + 1..] {
                    *c = lo;
                }
                break;
            }
        }
    }
}

/// Decides `K_{n_1..n_d} ⊆ G1 × G2` from the factors.
pub fn decide_direct(g1: &Graph, g2: &Graph, p: &MultipartitePattern) -> Result<Option<DirectCertificate>> {
    require_plain(p, "decide_direct")?;
    if g1.m() == 0 || g2.m() == 0 {
        return Err(Error::Precondition("both factors need at least one edge".into()));
    }
    g1.require_masks("decide_direct")?;
    g2.require_masks("decide_direct")?;
    let mut found = None;
    let mut memo2: std::collections::HashMap<Vec<usize>, Option<Embedding>> = Default::default();
    for_each_vector(1, &p.parts, |a| {
        let Some(e1) = search_embedding(g1, &MultipartitePattern::relaxed(a.to_vec(), 0)) else {
            return false;
        };
        let b: Vec<usize> = p.parts.iter().zip(a).map(|(&n, &ai)| n.div_ceil(ai)).collect();
        let e2 = memo2
            .entry(b.clone())
            .or_insert_with(|| search_embedding(g2, &MultipartitePattern::relaxed(b.clone(), 0)))
            .clone();
        if let Some(e2) = e2 {
            found = Some((a.to_vec(), b, e1, e2));
            return true;
        }
        false
    });
    let Some((a, b, e1, e2)) = found else {
        return Ok(None);
    };
    let n2 = g2.n();
    let parts = p
        .parts
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            e1.parts[i]
                .iter()
                .flat_map(|&u| e2.parts[i].iter().map(move |&v| u * n2 + v))
                .take(n)
                .collect()
        })
        .collect();
    Ok(Some(DirectCertificate {
        a,
        b,
        embedding1: e1,
        embedding2: e2,
        embedding: Embedding { parts, overlay: Vec::new() },
    }))
}

/// All `(parts, x)` with `parts[j] <= bounds[j]`, `x <= xmax` such that
/// `K_{parts, x̄} ⊆ g`, with one embedding each.
fn feasible_overlays(g: &Graph, bounds: &[usize], xmax: usize) -> Vec<(Vec<usize>, usize, Embedding)> {
    let mut out = Vec::new();
    for x in 0..=xmax.min(g.n()) {
        let mut any = false;
        for_each_vector(0, bounds, |a| {
            if a.iter().sum::<usize>() + x > g.n() {
                return false;
            }
            let pat = MultipartitePattern::relaxed(a.to_vec(), x);
            if let Some(e) = search_embedding(g, &pat) {
                out.push((a.to_vec(), x, e));
                any = true;
            }
            false
        });
        if !any {
            break;
        }
    }
    out
}

/// Decides `K_{n_1..n_d} ⊆ G1 ⊠ G2` from the factors. Candidates are tried
/// by ascending `x + y`, then lexicographically by `(a, b)`.
pub fn decide_strong(g1: &Graph, g2: &Graph, p: &MultipartitePattern) -> Result<Option<StrongCertificate>> {
    require_plain(p, "decide_strong")?;
    g1.require_masks("decide_strong")?;
    g2.require_masks("decide_strong")?;
    let total: usize = p.parts.iter().sum();
    let f1 = feasible_overlays(g1, &p.parts, total);
    let f2 = feasible_overlays(g2, &p.parts, total);
    let mut order: Vec<(usize, usize)> = (0..f1.len()).flat_map(|i| (0..f2.len()).map(move |j| (i, j))).collect();
    order.sort_by(|&(i, j), &(k, l)| {
        (f1[i].1 + f2[j].1, &f1[i].0, &f2[j].0, f1[i].1).cmp(&(f1[k].1 + f2[l].1, &f1[k].0, &f2[l].0, f1[k].1))
    });
    for (i, j) in order {
        let (a, x, e1) = &f1[i];
        let (b, y, e2) = &f2[j];
        let z: Vec<usize> = (0..p.d())
            .map(|k| p.parts[k].saturating_sub(a[k] * b[k] + a[k] * y + b[k] * x))
            .collect();
        if z.iter().sum::<usize>() > x * y {
            continue;
        }
        let embedding = realise_strong(g2.n(), p, a, b, &z, e1, e2);
        return Ok(Some(StrongCertificate {
            a: a.clone(),
            b: b.clone(),
            z,
            x: *x,
            y: *y,
            embedding1: e1.clone(),
            embedding2: e2.clone(),
            embedding,
        }));
    }
    Ok(None)
}

fn realise_strong(
    n2: usize,
    p: &MultipartitePattern,
    _a: &[usize],
    _b: &[usize],
    z: &[usize],
    e1: &Embedding,
    e2: &Embedding,
) -> Embedding {
    let id = |u: usize, v: usize| u * n2 + v;
    let mut xy = e1.overlay.iter().flat_map(|&u| e2.overlay.iter().map(move |&v| id(u, v)));
    let parts = (0..p.d())
        .map(|j| {
            let (aj, bj) = (&e1.parts[j], &e2.parts[j]);
            let mut set: Vec<usize> = aj
                .iter()
                .flat_map(|&u| bj.iter().chain(&e2.overlay).map(move |&v| id(u, v)))
                .chain(e1.overlay.iter().flat_map(|&u| bj.iter().map(move |&v| id(u, v))))
                .collect();
            set.extend(xy.by_ref().take(z[j]));
            set.truncate(p.parts[j]);
            set
        })
        .collect();
    Embedding { parts, overlay: Vec::new() }
}

/// The forbidden pattern for products of a `K_{s,t}`-free graph with a graph
/// of maximum degree `delta`, with the matching near-extremal witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KstBound {
    pub s: usize,
    pub t: usize,
    pub delta: usize,
    pub forbidden: (usize, usize),
}

impl KstBound {
    /// `(G, H)` with `G` being `K_{s,t}`-free, `Δ(H) = delta` and
    /// `K_{(s-1)(delta+1), n} ⊆ G ⊠ H`. Needs `s >= 2`.
    pub fn witness(&self, n: usize) -> Result<(Graph, Graph)> {
        if self.s < 2 {
            return Err(Error::Unsupported("witness pair needs s >= 2".into()));
        }
        let g = generate(&FamilySpec::CompleteMultipartite {
            parts: vec![self.s - 2, n, 1],
            overlay: 0,
        })?;
        let h = generate(&FamilySpec::Star(self.delta))?;
        Ok((g, h))
    }

    /// The complete bipartite pattern the witness product contains.
    pub fn witness_pattern(&self, n: usize) -> MultipartitePattern {
        MultipartitePattern::bipartite((self.s - 1) * (self.delta + 1), n)
    }
}

pub fn strong_kst_bound(s: usize, t: usize, delta: usize) -> Result<KstBound> {
    if s < 1 || t < s || delta < 1 {
        return Err(Error::Parameter(format!("need t >= s >= 1 and delta >= 1, got s={s} t={t} delta={delta}")));
    }
    Ok(KstBound {
        s,
        t,
        delta,
        forbidden: ((s - 1) * (delta + 1) + 1, (s + t) * (delta + 1)),
    })
}

/// Dispatches on the product kind and returns the realised product embedding.
pub fn decide(kind: ProductKind, g1: &Graph, g2: &Graph, p: &MultipartitePattern) -> Result<Option<Embedding>> {
    Ok(match kind {
        ProductKind::Cartesian => decide_cartesian(g1, g2, p)?.map(|c| c.embedding),
        ProductKind::Direct => decide_direct(g1, g2, p)?.map(|c| c.embedding),
        ProductKind::Strong => decide_strong(g1, g2, p)?.map(|c| c.embedding),
    })
}

/// Clique number by exhaustive search.
pub fn clique_number(g: &Graph) -> Result<usize> {
    g.require_masks("clique_number")?;
    let mut best = 0;
    while best < g.n() && search_embedding(g, &MultipartitePattern::clique(best + 1)).is_some() {
        best += 1;
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(s: FamilySpec) -> Graph {
        generate(&s).unwrap()
    }

    fn pat(parts: &[usize]) -> MultipartitePattern {
        MultipartitePattern::new(parts.to_vec(), 0).unwrap()
    }

    #[test]
    fn oracle_examples() {
        let c4 = fam(FamilySpec::Cycle(4));
        let e = oracle_subgraph(&c4, &pat(&[2, 2])).unwrap().unwrap();
        e.validate(&c4, &pat(&[2, 2])).unwrap();
        assert!(oracle_subgraph(&fam(FamilySpec::Path(4)), &pat(&[1, 1, 1])).unwrap().is_none());
        let p = MultipartitePattern::new(vec![2, 2], 1).unwrap();
        let k5 = fam(FamilySpec::Complete(5));
        oracle_subgraph(&k5, &p).unwrap().unwrap().validate(&k5, &p).unwrap();
    }

    #[test]
    fn oracle_refuses_large_inputs() {
        let g = fam(FamilySpec::Path(20));
        assert!(matches!(oracle_subgraph(&g, &pat(&[1, 1])), Err(Error::Budget { .. })));
        assert!(oracle_subgraph_with_limit(&g, &pat(&[1, 2]), 64).unwrap().is_some());
    }

    #[test]
    fn zero_parts_are_ignored() {
        let g = fam(FamilySpec::Star(3));
        let p = MultipartitePattern::relaxed(vec![0, 3, 0], 1);
        let e = search_embedding(&g, &p).unwrap();
        e.validate(&g, &p).unwrap();
        assert_eq!(e.overlay, vec![0]);
    }

    #[test]
    fn cartesian_examples() {
        let p2 = fam(FamilySpec::Path(2));
        let c = decide_cartesian(&p2, &p2, &pat(&[2, 2])).unwrap().unwrap();
        assert!(matches!(c.witness, CartesianWitness::K22 { .. }));
        c.validate(&p2, &p2, &pat(&[2, 2])).unwrap();
        let p3 = fam(FamilySpec::Path(3));
        let c = decide_cartesian(&p3, &p2, &pat(&[1, 3])).unwrap().unwrap();
        assert!(matches!(c.witness, CartesianWitness::Star { s: 3, .. }));
        c.validate(&p3, &p2, &pat(&[1, 3])).unwrap();
        let p5 = fam(FamilySpec::Path(5));
        assert!(decide_cartesian(&p5, &p5, &pat(&[1, 1, 1])).unwrap().is_none());
        assert!(decide_cartesian(&p5, &p5, &MultipartitePattern::new(vec![1, 1], 1).unwrap()).is_err());
    }

    #[test]
    fn direct_examples() {
        let s3 = fam(FamilySpec::Star(3));
        let c = decide_direct(&s3, &s3, &pat(&[3, 3])).unwrap().unwrap();
        c.validate(&s3, &s3, &pat(&[3, 3])).unwrap();
        assert_eq!((c.a.clone(), c.b.clone()), (vec![1, 3], vec![3, 1]));
        let s2 = fam(FamilySpec::Star(2));
        assert!(decide_direct(&s2, &s2, &pat(&[4, 4])).unwrap().is_none());
        let k2 = fam(FamilySpec::Complete(2));
        assert!(decide_direct(&k2, &k2, &pat(&[1, 1])).unwrap().is_some());
        assert!(matches!(
            decide_direct(&Graph::empty(3), &k2, &pat(&[1, 1])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn strong_examples() {
        let k3 = fam(FamilySpec::Complete(3));
        let k2 = fam(FamilySpec::Complete(2));
        let c = decide_strong(&k3, &k2, &pat(&[1; 6])).unwrap().unwrap();
        assert_eq!((c.x, c.y), (3, 2));
        assert_eq!(c.a, vec![0; 6]);
        assert_eq!(c.z, vec![1; 6]);
        c.validate(&k3, &k2, &pat(&[1; 6])).unwrap();
        let p3 = fam(FamilySpec::Path(3));
        assert!(decide_strong(&p3, &p3, &pat(&[1; 5])).unwrap().is_none());
        let s2 = fam(FamilySpec::Star(2));
        let c = decide_strong(&s2, &k2, &pat(&[2, 2])).unwrap().unwrap();
        c.validate(&s2, &k2, &pat(&[2, 2])).unwrap();
    }

    #[test]
    fn kst_bound() {
        assert_eq!(strong_kst_bound(2, 2, 1).unwrap().forbidden, (3, 8));
        let b = strong_kst_bound(2, 3, 2).unwrap();
        let (g, h) = b.witness(4).unwrap();
        assert!(search_embedding(&g, &MultipartitePattern::bipartite(2, 3)).is_none());
        assert_eq!(h.max_degree(), 2);
        let prod = product(&g, &h, ProductKind::Strong).unwrap().base;
        let p = b.witness_pattern(4);
        assert_eq!(p.parts, vec![3, 4]);
        assert!(oracle_subgraph_with_limit(&prod, &p, 64).unwrap().is_some());
        assert!(strong_kst_bound(1, 1, 1).unwrap().witness(3).is_err());
    }

    #[test]
    fn clique_numbers() {
        assert_eq!(clique_number(&fam(FamilySpec::Complete(4))).unwrap(), 4);
        assert_eq!(clique_number(&fam(FamilySpec::Cycle(5))).unwrap(), 2);
        assert_eq!(clique_number(&Graph::empty(0)).unwrap(), 0);
    }
}
