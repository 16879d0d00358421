use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{product_bramble, treewidth_bramble, Bramble, BRAMBLE_LIMIT};
use crate::decomp::{
    exact_width, lift_product, vc_subdivision_decomp, DecompositionJson, HDecomposition, WidthKind, TREE_LIMIT,
};
use crate::error::{budget, Result};
use crate::graph::{product, Graph, ProductKind};
use crate::minors::{
    find_disjoint_linkage, find_minor, hadwiger_number, vertex_cover, LinkageResult, MinorModel, LINKAGE_LIMIT,
    MINOR_G_LIMIT, MINOR_H_LIMIT, PARAM_LIMIT, PATH_PARAM_LIMIT,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Upper,
    Lower,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    Decomposition(DecompositionJson),
    Bramble(Bramble),
    Model(MinorModel),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub name: String,
    pub kind: BoundKind,
    pub value: i64,
    /// Whether the factors were taken in the order `(g2, g1)`.
    pub swapped: bool,
    /// The formula the value instantiates.
    pub anchor: String,
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Omitted {
    pub name: String,
    pub swapped: bool,
    pub reason: String,
}

/// Factor parameters the bounds draw on; `None` when out of budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSummary {
    pub n: usize,
    pub max_degree: usize,
    pub connected: bool,
    pub bipartite: bool,
    pub treewidth: Option<usize>,
    pub tau: Option<usize>,
    pub hadwiger: Option<usize>,
    pub connectivity: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub kind: ProductKind,
    pub factors: [FactorSummary; 2],
    pub entries: Vec<BoundEntry>,
    pub omitted: Vec<Omitted>,
    pub exact: Option<usize>,
}

impl BoundReport {
    pub fn best_lower(&self) -> Option<i64> {
        self.values(BoundKind::Lower).max()
    }

    pub fn best_upper(&self) -> Option<i64> {
        self.values(BoundKind::Upper).min()
    }

    fn values(&self, kind: BoundKind) -> impl Iterator<Item = i64> + '_ {
        self.entries.iter().filter(move |e| e.kind == kind).map(|e| e.value)
    }

    /// Broken report invariants, as messages.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let (Some(lo), Some(hi)) = (self.best_lower(), self.best_upper()) {
            if lo > hi {
                out.push(format!("lower bound {lo} exceeds upper bound {hi}"));
            }
        }
        if let Some(x) = self.exact.map(|x| x as i64) {
            if self.best_lower().is_some_and(|lo| lo > x) {
                out.push(format!("exact value {x} is below a lower bound"));
            }
            if self.best_upper().is_some_and(|hi| hi < x) {
                out.push(format!("exact value {x} is above an upper bound"));
            }
        }
        out
    }
}

/// Vertex connectivity: `n - 1` for complete graphs, else the fewest
/// vertices whose removal disconnects the graph.
pub fn vertex_connectivity(g: &Graph) -> Result<usize> {
    budget("vertex_connectivity", g.n(), LINKAGE_LIMIT)?;
    let n = g.n();
    let mut best = n.saturating_sub(1);
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                continue;
            }
            let rest: Vec<usize> = (0..n).filter(|&x| x != u && x != v).collect();
            let mut pos = vec![usize::MAX; n];
            for (i, &x) in rest.iter().enumerate() {
                pos[x] = i;
            }
            let sub = g.induced(&rest);
            let a: Vec<usize> = g.neighbors(u).iter().map(|&x| pos[x]).collect();
            let b: Vec<usize> = g.neighbors(v).iter().map(|&x| pos[x]).collect();
            let flow = match find_disjoint_linkage(&sub, &a, &b, best)? {
                LinkageResult::Found { .. } => best,
                LinkageResult::Absent { max, .. } => max,
            };
            best = best.min(flow);
        }
    }
    Ok(best)
}

/// Summary plus the certificates behind it.
struct Factor<'a> {
    g: &'a Graph,
    summary: FactorSummary,
    decomposition: Option<HDecomposition>,
    cover: Option<Vec<usize>>,
    clique_model: Option<MinorModel>,
}

fn factor(g: &Graph) -> Result<Factor<'_>> {
    let n = g.n();
    let width = (n <= TREE_LIMIT).then(|| exact_width(g, WidthKind::Tree)).transpose()?;
    let cover = (n <= PATH_PARAM_LIMIT).then(|| vertex_cover(g)).transpose()?;
    let eta = (n <= PARAM_LIMIT).then(|| hadwiger_number(g)).transpose()?;
    let connectivity = (n <= LINKAGE_LIMIT).then(|| vertex_connectivity(g)).transpose()?;
    Ok(Factor {
        g,
        summary: FactorSummary {
            n,
            max_degree: g.max_degree(),
            connected: g.is_connected(),
            bipartite: g.is_bipartite(),
            treewidth: width.as_ref().map(|w| w.value),
            tau: cover.as_ref().map(Vec::len),
            hadwiger: eta.as_ref().map(|e| e.0),
            connectivity,
        },
        decomposition: width.map(|w| w.decomposition),
        cover,
        clique_model: eta.map(|e| e.1),
    })
}

#[derive(Clone, Copy)]
enum Task {
    StrongLift(bool),
    VcSubdivision(bool),
    Hadwiger(bool),
    Connected,
    DirectMinor(bool),
}

impl Task {
    fn name(self) -> (&'static str, bool) {
        match self {
            Task::StrongLift(s) => ("strong_lift", s),
            Task::VcSubdivision(s) => ("vc_subdivision", s),
            Task::Hadwiger(s) => ("hadwiger", s),
            Task::Connected => ("connected", false),
            Task::DirectMinor(s) => ("direct_minor", s),
        }
    }
}

/// Bag ids of `g2 ∘ g1` rewritten into the id space of `g1 ∘ g2`.
fn unswap(ids: &[usize], n1: usize, n2: usize) -> Vec<usize> {
    ids.iter().map(|&x| (x % n1) * n2 + x / n1).collect()
}

fn evaluate(task: Task, f: &[Factor; 2], kind: ProductKind, host: &Graph) -> std::result::Result<BoundEntry, String> {
    let (name, swapped) = task.name();
    let (a, b) = if swapped { (&f[1], &f[0]) } else { (&f[0], &f[1]) };
    let (n1, n2) = (f[0].g.n(), f[1].g.n());
    let fix_bags = |bags: Vec<Vec<usize>>| -> Vec<Vec<usize>> {
        if swapped {
            bags.iter().map(|bag| unswap(bag, n1, n2)).collect()
        } else {
            bags
        }
    };
    let entry = |kind, value: i64, anchor: &str, certificate| BoundEntry {
        name: name.into(),
        kind,
        value,
        swapped,
        anchor: anchor.into(),
        certificate,
    };
    let tw_of = |x: &Factor| x.summary.treewidth.ok_or_else(|| "treewidth out of budget".to_string());
    match task {
        Task::StrongLift(_) => {
            let tw = tw_of(a)?;
            let dec = a.decomposition.as_ref().expect("decomposition with treewidth");
            let lifted = lift_product(a.g, dec, b.g).map_err(|e| e.to_string())?;
            let lifted = HDecomposition::new(lifted.host.clone(), fix_bags(lifted.bags));
            let value = ((tw + 1) * b.g.n()) as i64 - 1;
            debug_assert!(lifted.width() as i64 <= value);
            Ok(entry(
                BoundKind::Upper,
                value,
                "(tw(G1)+1)v(G2)-1",
                Some(Certificate::Decomposition(lifted.to_json())),
            ))
        }
        Task::VcSubdivision(_) => {
            if kind != ProductKind::Direct {
                return Err("direct products only".into());
            }
            if !a.summary.connected || !b.summary.connected {
                return Err("both factors must be connected".into());
            }
            let cover = a.cover.as_ref().ok_or("vertex cover out of budget")?;
            let tw = tw_of(b)?;
            let dec2 = b.decomposition.as_ref().expect("decomposition with treewidth");
            let d = vc_subdivision_decomp(a.g, cover, b.g, dec2).map_err(|e| e.to_string())?;
            let d = HDecomposition::new(d.host.clone(), fix_bags(d.bags));
            let value = (cover.len() * (tw + 1) * (b.summary.max_degree + 1)) as i64;
            debug_assert!(d.width() as i64 <= value);
            Ok(entry(
                BoundKind::Upper,
                value,
                "tau(G1)(tw(G2)+1)(Delta(G2)+1)",
                Some(Certificate::Decomposition(d.to_json())),
            ))
        }
        Task::Hadwiger(_) => {
            if kind != ProductKind::Strong {
                return Err("strong products only".into());
            }
            let tw = tw_of(a)?;
            let eta = b.summary.hadwiger.ok_or("Hadwiger number out of budget")?;
            let value = (eta * (tw + 1)) as i64 - 1;
            let certificate = if a.g.n() <= BRAMBLE_LIMIT {
                let gb = treewidth_bramble(a.g).map_err(|e| e.to_string())?;
                let model = b.clique_model.as_ref().expect("model with Hadwiger number");
                let pb = product_bramble(a.g, &gb, b.g, model).map_err(|e| e.to_string())?;
                Some(Certificate::Bramble(Bramble::new(fix_bags(pb.elements))))
            } else {
                None
            };
            Ok(entry(BoundKind::Lower, value, "eta(G2)(tw(G1)+1)-1", certificate))
        }
        Task::Connected => {
            if kind == ProductKind::Direct {
                return Err("cartesian and strong products only".into());
            }
            let (k1, k2) = (a.summary.connectivity, b.summary.connectivity);
            let k = k1.zip(k2).map(|(x, y)| x.min(y)).ok_or("connectivity out of budget")?;
            if k == 0 {
                return Err("a factor is not connected".into());
            }
            let (k, n) = (k as i64, a.g.n().min(b.g.n()) as i64);
            Ok(entry(BoundKind::Lower, k * (n - 2 * k + 2) - 1, "k(n-2k+2)-1", None))
        }
        Task::DirectMinor(_) => {
            if kind != ProductKind::Direct {
                return Err("direct products only".into());
            }
            if b.summary.bipartite {
                return Err("the other factor is bipartite".into());
            }
            let tw = tw_of(a)?;
            let model = if host.n() <= MINOR_G_LIMIT && a.g.n() <= MINOR_H_LIMIT {
                find_minor(host, a.g).map_err(|e| e.to_string())?
            } else {
                None
            };
            Ok(entry(BoundKind::Lower, tw as i64, "tw(G1)", model.map(Certificate::Model)))
        }
    }
}

/// Every applicable bound on `tw(g1 ∘ g2)` in both factor orders, with the
/// exact value when the product has at most `TREE_LIMIT` vertices.
pub fn bound_engine(g1: &Graph, g2: &Graph, kind: ProductKind) -> Result<BoundReport> {
    let host = product(g1, g2, kind)?.base;
    let (f1, f2) = rayon::join(|| factor(g1), || factor(g2));
    let factors = [f1?, f2?];
    let tasks = [
        Task::StrongLift(false),
        Task::StrongLift(true),
        Task::VcSubdivision(false),
        Task::VcSubdivision(true),
        Task::Hadwiger(false),
        Task::Hadwiger(true),
        Task::Connected,
        Task::DirectMinor(false),
        Task::DirectMinor(true),
    ];
    let exact = || -> Result<Option<usize>> {
        (host.n() <= TREE_LIMIT)
            .then(|| exact_width(&host, WidthKind::Tree).map(|w| w.value))
            .transpose()
    };
    let (results, exact) = rayon::join(
        || {
            tasks
                .par_iter()
                .map(|&t| (t.name(), evaluate(t, &factors, kind, &host)))
                .collect::<Vec<_>>()
        },
        exact,
    );
    let mut entries = Vec::new();
    let mut omitted = Vec::new();
    for ((name, swapped), r) in results {
        match r {
            Ok(e) => entries.push(e),
            Err(reason) => omitted.push(Omitted {
                name: name.into(),
                swapped,
                reason,
            }),
        }
    }
    let [a, b] = factors;
    Ok(BoundReport {
        kind,
        factors: [a.summary, b.summary],
        entries,
        omitted,
        exact: exact?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{validate_decomposition, treewidth};
    use crate::graph::{enumerate_graphs, generate, FamilySpec};
    use crate::lowerbounds::{bramble_order_with_limit, validate_bramble};
    use crate::minors::validate_model;

    fn fam(s: FamilySpec) -> Graph {
        generate(&s).unwrap()
    }

    fn check_certificates(g1: &Graph, g2: &Graph, r: &BoundReport) {
        let host = product(g1, g2, r.kind).unwrap().base;
        for e in &r.entries {
            match &e.certificate {
                Some(Certificate::Decomposition(d)) => {
                    let d = HDecomposition::from_json(d).unwrap();
                    assert!(validate_decomposition(&host, &d).is_empty(), "{}", e.name);
                    assert!(d.width() as i64 <= e.value);
                }
                Some(Certificate::Bramble(b)) => {
                    assert!(validate_bramble(&host, b).is_empty());
                    assert!(bramble_order_with_limit(&host, b, 64).unwrap().0 as i64 > e.value);
                }
                Some(Certificate::Model(m)) => {
                    let pattern = if e.swapped { g2 } else { g1 };
                    assert!(validate_model(&host, pattern, m).is_empty());
                }
                None => {}
            }
        }
    }

    #[test]
    fn connectivity_examples() {
        let cases = [
            (FamilySpec::Complete(5), 4),
            (FamilySpec::Cycle(6), 2),
            (FamilySpec::Path(4), 1),
            (FamilySpec::Grid(3, 3), 2),
            (FamilySpec::complete_bipartite(3, 4), 3),
        ];
        for (s, k) in cases {
            assert_eq!(vertex_connectivity(&fam(s)).unwrap(), k);
        }
        assert_eq!(vertex_connectivity(&Graph::empty(3)).unwrap(), 0);
    }

    #[test]
    fn strong_path_clique() {
        let p3 = fam(FamilySpec::Path(3));
        let k3 = fam(FamilySpec::Complete(3));
        let r = bound_engine(&p3, &k3, ProductKind::Strong).unwrap();
        assert_eq!(r.exact, Some(5));
        assert_eq!(r.best_upper(), Some(5));
        assert_eq!(r.best_lower(), Some(5));
        let h = r.entries.iter().find(|e| e.name == "hadwiger" && !e.swapped).unwrap();
        assert!(h.certificate.is_some());
        assert!(r.violations().is_empty());
        check_certificates(&p3, &k3, &r);
    }

    #[test]
    fn trivial_factor() {
        let k1 = fam(FamilySpec::Complete(1));
        let c5 = fam(FamilySpec::Cycle(5));
        for kind in ProductKind::ALL {
            let r = bound_engine(&k1, &c5, kind).unwrap();
            let expect = if kind == ProductKind::Direct { 0 } else { 2 };
            assert_eq!(r.exact, Some(expect));
            assert!(r.violations().is_empty());
        }
    }

    #[test]
    fn star_times_path() {
        let s3 = fam(FamilySpec::Star(3));
        let p4 = fam(FamilySpec::Path(4));
        let r = bound_engine(&s3, &p4, ProductKind::Direct).unwrap();
        let vc = r.entries.iter().find(|e| e.name == "vc_subdivision" && !e.swapped).unwrap();
        assert_eq!(vc.value, 6);
        let lift = r.entries.iter().find(|e| e.name == "strong_lift" && !e.swapped).unwrap();
        assert_eq!(lift.value, 7);
        check_certificates(&s3, &p4, &r);
        let host = product(&s3, &p4, ProductKind::Direct).unwrap().base;
        let tw = crate::decomp::exact_width_with_limit(&host, WidthKind::Tree, 16).unwrap().value as i64;
        assert!(tw <= r.best_upper().unwrap());
    }

    #[test]
    fn consistency_on_small_pairs() {
        let graphs: Vec<Graph> = (1..=3).flat_map(enumerate_graphs).collect();
        for g1 in &graphs {
            for g2 in &graphs {
                for kind in ProductKind::ALL {
                    let r = bound_engine(g1, g2, kind).unwrap();
                    assert!(r.violations().is_empty(), "{g1:?} {g2:?} {kind}: {:?}", r.violations());
                    check_certificates(g1, g2, &r);
                }
            }
        }
        let k3 = fam(FamilySpec::Complete(3));
        let r = bound_engine(&fam(FamilySpec::Path(3)), &k3, ProductKind::Direct).unwrap();
        let d = r.entries.iter().find(|e| e.name == "direct_minor" && !e.swapped).unwrap();
        assert_eq!(d.value, treewidth(&fam(FamilySpec::Path(3))) as i64);
        assert!(d.certificate.is_some());
    }
}
