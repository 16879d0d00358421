//! Brambles, separations, formula bounds and the per-product bound engine.

mod engine;
mod separation;

pub use engine::{bound_engine, vertex_connectivity, BoundEntry, BoundKind, BoundReport, Certificate, FactorSummary, Omitted};
pub use separation::{
    formula_lower_bounds, min_separation_order, moore_bound, verify_separation_lemma, Formula, FormulaValue,
    Hypothesis, Separation, SeparationReport, SEPARATION_LIMIT,
};

use serde::{Deserialize, Serialize};

use crate::bits::{bits, mask_of, to_vec};
use crate::decomp::treewidth;
use crate::error::{budget, Error, Result};
use crate::graph::{generate, FamilySpec, Graph};
use crate::minors::{validate_model, MinorModel};

/// Advisory limit on elements and on vertices for the exact order.
pub const ORDER_LIMIT: usize = 20;
/// Advisory order limit for `treewidth_bramble`.
pub const BRAMBLE_LIMIT: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bramble {
    pub elements: Vec<Vec<usize>>,
}

impl Bramble {
    pub fn new(mut elements: Vec<Vec<usize>>) -> Bramble {
        for e in &mut elements {
            e.sort_unstable();
            e.dedup();
        }
        Bramble { elements }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BrambleViolation {
    EmptyElement { element: usize },
    VertexOutOfRange { element: usize, vertex: usize },
    Disconnected { element: usize },
    NotTouching { a: usize, b: usize },
}

impl std::fmt::Display for BrambleViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BrambleViolation::EmptyElement { element } => write!(f, "element {element} is empty"),
            BrambleViolation::VertexOutOfRange { element, vertex } => {
                write!(f, "element {element} holds unknown vertex {vertex}")
            }
            BrambleViolation::Disconnected { element } => write!(f, "element {element} is disconnected"),
            BrambleViolation::NotTouching { a, b } => write!(f, "elements {a} and {b} do not touch"),
        }
    }
}

fn touches(g: &Graph, a: &[usize], b: &[usize]) -> bool {
    a.iter()
        .any(|&v| b.binary_search(&v).is_ok() || g.neighbors(v).iter().any(|u| b.binary_search(u).is_ok()))
}

pub fn validate_bramble(g: &Graph, b: &Bramble) -> Vec<BrambleViolation> {
    let mut out = Vec::new();
    let mut sorted = Vec::with_capacity(b.elements.len());
    for (i, e) in b.elements.iter().enumerate() {
        if e.is_empty() {
            out.push(BrambleViolation::EmptyElement { element: i });
        }
        if let Some(&v) = e.iter().find(|&&v| v >= g.n()) {
            out.push(BrambleViolation::VertexOutOfRange { element: i, vertex: v });
            sorted.push(None);
            continue;
        }
        if !e.is_empty() && !g.is_connected_set(e) {
            out.push(BrambleViolation::Disconnected { element: i });
        }
        let mut s = e.clone();
        s.sort_unstable();
        sorted.push(Some(s));
    }
    for i in 0..sorted.len() {
        for j in i + 1..sorted.len() {
            if let (Some(a), Some(b)) = (&sorted[i], &sorted[j]) {
                if !a.is_empty() && !b.is_empty() && !touches(g, a, b) {
                    out.push(BrambleViolation::NotTouching { a: i, b: j });
                }
            }
        }
    }
    out
}

/// Minimum hitting set of the elements, with its size.
pub fn bramble_order(g: &Graph, b: &Bramble) -> Result<(usize, Vec<usize>)> {
    bramble_order_with_limit(g, b, ORDER_LIMIT)
}

pub fn bramble_order_with_limit(g: &Graph, b: &Bramble, limit: usize) -> Result<(usize, Vec<usize>)> {
    budget("bramble_order (elements)", b.elements.len(), limit)?;
    budget("bramble_order (vertices)", g.n(), limit)?;
    g.require_masks("bramble order")?;
    if let Some(v) = b.elements.iter().flatten().find(|&&v| v >= g.n()) {
        return Err(Error::Parameter(format!("bramble vertex {v} out of range")));
    }
    let sets: Vec<u64> = b.elements.iter().map(|e| mask_of(e.iter().copied())).collect();
    if sets.contains(&0) {
        return Err(Error::Parameter("bramble has an empty element".into()));
    }
    let hit = min_hitting_set(&sets);
    Ok((hit.count_ones() as usize, to_vec(hit)))
}

/// Branch and bound: branch on the unhit set with fewest remaining
/// candidates (ties by index), banning each tried vertex for later siblings.
fn min_hitting_set(sets: &[u64]) -> u64 {
    struct Search<'a> {
        sets: &'a [u64],
        best: u64,
    }
    impl Search<'_> {
        fn run(&mut self, chosen: u64, banned: u64) {
            let size = chosen.count_ones();
            if size >= self.best.count_ones() {
                return;
            }
            let mut pick: Option<u64> = None;
            let mut packing = 0u32;
            let mut used = 0u64;
            for &s in self.sets {
                if s & chosen != 0 {
                    continue;
                }
                let free = s & !banned;
                if free == 0 {
                    return;
                }
                if pick.map_or(true, |p| free.count_ones() < p.count_ones()) {
                    pick = Some(free);
                }
                if free & used == 0 {
                    used |= free;
                    packing += 1;
                }
            }
            let Some(free) = pick else {
                self.best = chosen;
                return;
            };
            if size + packing >= self.best.count_ones() {
                return;
            }
            let mut ban = banned;
            for v in bits(free) {
                self.run(chosen | 1 << v, ban);
                ban |= 1 << v;
            }
        }
    }
    let all = sets.iter().fold(0, |a, &s| a | s);
    let mut s = Search { sets, best: all };
    s.run(0, 0);
    s.best
}

/// The crosses (row `i` plus column `j`) of the `l × l` grid, ordered by
/// `(i, j)`.
pub fn grid_bramble(l: usize) -> Result<Bramble> {
    if l == 0 {
        return Err(Error::Parameter("grid bramble needs l >= 1".into()));
    }
    let mut elements = Vec::with_capacity(l * l);
    for i in 0..l {
        for j in 0..l {
            let mut e: Vec<usize> = (0..l).map(|c| i * l + c).collect();
            e.extend((0..l).filter(|&r| r != i).map(|r| r * l + j));
            elements.push(e);
        }
    }
    Ok(Bramble::new(elements))
}

/// A bramble of order `tw(g) + 1`. Elements are components of `g - X` over
/// sets `X` of size `tw(g)`, chosen pairwise touching so that every such `X`
/// misses one of them, then pruned to an inclusion-minimal family.
pub fn treewidth_bramble(g: &Graph) -> Result<Bramble> {
    budget("treewidth_bramble", g.n(), BRAMBLE_LIMIT)?;
    g.require_masks("treewidth bramble")?;
    let n = g.n();
    if n == 0 {
        return Ok(Bramble { elements: Vec::new() });
    }
    let k = treewidth(g);
    let all = crate::bits::full(n);
    let closed = |s: u64| bits(s).fold(s, |a, v| a | g.mask(v));
    let mut xs: Vec<(u64, Vec<u64>)> = Vec::new();
    for x in 0..=all {
        if (x as u64).count_ones() as usize != k {
            continue;
        }
        let mut rest = all & !x;
        let mut comps = Vec::new();
        while rest != 0 {
            let c = g.component_mask(rest.trailing_zeros() as usize, rest);
            comps.push(c);
            rest &= !c;
        }
        xs.push((x, comps));
    }
    struct Search<'a> {
        xs: &'a [(u64, Vec<u64>)],
        closed: &'a dyn Fn(u64) -> u64,
        chosen: Vec<u64>,
        failed: std::collections::HashSet<Vec<u64>>,
    }
    impl Search<'_> {
        fn run(&mut self) -> bool {
            let mut best: Option<Vec<u64>> = None;
            for (x, comps) in self.xs {
                if self.chosen.iter().any(|&c| c & x == 0) {
                    continue;
                }
                let options: Vec<u64> = comps
                    .iter()
                    .copied()
                    .filter(|&c| self.chosen.iter().all(|&d| (self.closed)(c) & d != 0))
                    .collect();
                if best.as_ref().is_none_or(|b| options.len() < b.len()) {
                    let empty = options.is_empty();
                    best = Some(options);
                    if empty {
                        break;
                    }
                }
            }
            let Some(options) = best else {
                return true;
            };
            let mut key = self.chosen.clone();
            key.sort_unstable();
            if self.failed.contains(&key) {
                return false;
            }
            for c in options {
                self.chosen.push(c);
                if self.run() {
                    return true;
                }
                self.chosen.pop();
            }
            self.failed.insert(key);
            false
        }
    }
    let mut s = Search {
        xs: &xs,
        closed: &closed,
        chosen: Vec::new(),
        failed: Default::default(),
    };
    assert!(s.run(), "a haven of order tw + 1 always exists");
    let mut chosen = s.chosen;
    let mut i = 0;
    while i < chosen.len() {
        let c = chosen.remove(i);
        if xs.iter().all(|(x, _)| chosen.iter().any(|&d| d & x == 0)) {
            continue;
        }
        chosen.insert(i, c);
        i += 1;
    }
    Ok(Bramble::new(chosen.into_iter().map(to_vec).collect()))
}

/// The sets `X × B_i` in `g ⊠ h` for every element `X` of the bramble and
/// every branch set `B_i` of a complete-graph model in `h`.
pub fn product_bramble(g: &Graph, bramble: &Bramble, h: &Graph, model: &MinorModel) -> Result<Bramble> {
    let bad = validate_bramble(g, bramble);
    if let Some(v) = bad.first() {
        return Err(Error::Certificate(format!("bramble: {v}")));
    }
    let t = model.branch_sets.len();
    let kt = generate(&FamilySpec::Complete(t))?;
    if let Some(v) = validate_model(h, &kt, model).first() {
        return Err(Error::Certificate(format!("clique model: {v}")));
    }
    let n2 = h.n();
    let mut elements = Vec::with_capacity(bramble.elements.len() * t);
    for x in &bramble.elements {
        for b in &model.branch_sets {
            elements.push(x.iter().flat_map(|&v| b.iter().map(move |&u| v * n2 + u)).collect());
        }
    }
    Ok(Bramble::new(elements))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_graphs, product, ProductKind};
    use crate::minors::hadwiger_number;

    fn fam(s: FamilySpec) -> Graph {
        generate(&s).unwrap()
    }

    fn brute_order(g: &Graph, b: &Bramble) -> usize {
        let sets: Vec<u64> = b.elements.iter().map(|e| mask_of(e.iter().copied())).collect();
        (0u64..1 << g.n())
            .filter(|h| sets.iter().all(|s| s & h != 0))
            .map(|h| h.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn grid_crosses() {
        for l in 1..=4 {
            let g = fam(FamilySpec::Grid(l, l));
            let b = grid_bramble(l).unwrap();
            assert_eq!(b.elements.len(), l * l);
            assert!(validate_bramble(&g, &b).is_empty());
            let (order, hit) = bramble_order(&g, &b).unwrap();
            assert_eq!(order, l);
            assert_eq!(hit.len(), l);
        }
        let g = fam(FamilySpec::Grid(5, 5));
        let b = grid_bramble(5).unwrap();
        assert!(bramble_order(&g, &b).is_err());
        assert_eq!(bramble_order_with_limit(&g, &b, 25).unwrap().0, 5);
    }

    #[test]
    fn singleton_and_violations() {
        let p3 = fam(FamilySpec::Path(3));
        let single = Bramble::new(vec![vec![1]]);
        assert_eq!(bramble_order(&p3, &single).unwrap().0, 1);
        let bad = Bramble::new(vec![vec![0], vec![2], vec![0, 2], vec![]]);
        let v = validate_bramble(&p3, &bad);
        assert!(v.contains(&BrambleViolation::NotTouching { a: 0, b: 1 }));
        assert!(v.contains(&BrambleViolation::Disconnected { element: 2 }));
        assert!(v.contains(&BrambleViolation::EmptyElement { element: 3 }));
    }

    #[test]
    fn hitting_set_matches_brute_force() {
        for n in 1..=6 {
            for g in enumerate_graphs(n) {
                let b = treewidth_bramble(&g).unwrap();
                assert!(validate_bramble(&g, &b).is_empty(), "{g:?}");
                let (order, hit) = bramble_order(&g, &b).unwrap();
                assert_eq!(order, brute_order(&g, &b));
                assert!(b.elements.iter().all(|e| e.iter().any(|v| hit.contains(v))));
                assert_eq!(order, treewidth(&g) + 1, "{g:?}");
            }
        }
    }

    #[test]
    fn product_examples() {
        let p3 = fam(FamilySpec::Path(3));
        let b = treewidth_bramble(&p3).unwrap();
        assert_eq!(bramble_order(&p3, &b).unwrap().0, 2);
        for (t, expect) in [(2, 4), (3, 6)] {
            let kt = fam(FamilySpec::Complete(t));
            let (eta, model) = hadwiger_number(&kt).unwrap();
            assert_eq!(eta, t);
            let pb = product_bramble(&p3, &b, &kt, &model).unwrap();
            let host = product(&p3, &kt, ProductKind::Strong).unwrap().base;
            assert!(validate_bramble(&host, &pb).is_empty());
            assert!(bramble_order(&host, &pb).unwrap().0 >= expect);
        }
        let k1 = fam(FamilySpec::Complete(1));
        let (_, model) = hadwiger_number(&k1).unwrap();
        assert_eq!(product_bramble(&p3, &b, &k1, &model).unwrap(), b);
        let grid = fam(FamilySpec::Grid(2, 2));
        let gb = grid_bramble(2).unwrap();
        let k2 = fam(FamilySpec::Complete(2));
        let (_, model) = hadwiger_number(&k2).unwrap();
        let pb = product_bramble(&grid, &gb, &k2, &model).unwrap();
        let host = product(&grid, &k2, ProductKind::Strong).unwrap().base;
        assert!(bramble_order(&host, &pb).unwrap().0 >= 4);
        let broken = MinorModel::new(vec![vec![0], vec![0]]);
        assert!(product_bramble(&p3, &b, &k2, &broken).is_err());
    }
}
