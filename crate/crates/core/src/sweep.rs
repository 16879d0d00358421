//! The acceptance sweep: every property of the library checked over a
//! corpus of small graphs plus parameter and random instance families.
//!
//! Reports are deterministic: cases are evaluated in parallel, merged in
//! corpus order, and carry no timings.

use num_rational::Rational64;
use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::classify::{canned_corpus, classify, empirical_probe_with_limit, CannedClass, Family};
use crate::decomp::{
    exact_width, exact_width_with_limit, gkn_decomposition, lift_product, lift_square, treewidth, pathwidth,
    validate_decomposition, vc_subdivision_decomp, WidthKind,
};
use crate::degeneracy::{
    best_stats, bounds_direct, bounds_strong, degeneracy, strong_cbg_f, witness_direct_lower, witness_strong_lower,
    witness_strong_upper, FactorStats,
};
use crate::graph::{canonical_form, enumerate_graphs, generate, square, to_graph6, FamilySpec};
use crate::lowerbounds::{
    bramble_order_with_limit, grid_bramble, min_separation_order, moore_bound, product_bramble,
    treewidth_bramble, validate_bramble, verify_separation_lemma,
};
use crate::minors::{
    daddy_longlegs, dfs_cover, double_cover, find_minor_with_limit, glm_pipeline, hadwiger_number,
    lift_linked_paths, path_number, select_bipartite_paths, validate_model, vertex_cover, ColouredSubgraph, Linkage,
    PathSystem,
};
use crate::multipartite::{clique_number, decide, oracle_subgraph_with_limit, MultipartitePattern};
use crate::{product, Graph, GraphBuilder, ProductKind};

const COUNTEREXAMPLES: usize = 5;

/// Largest order of the named family members added to a standard corpus.
pub const FAMILY_ORDER: usize = 8;

/// Graphs in canonical form, sorted by order and then graph6 string.
#[derive(Clone, Debug, Default)]
pub struct Corpus {
    graphs: Vec<Graph>,
    families: Vec<String>,
}

impl Corpus {
    pub fn empty() -> Corpus {
        Corpus::default()
    }

    /// All graphs on `1..=max_order` vertices plus the named families.
    pub fn standard(max_order: usize) -> Corpus {
        let mut gs: Vec<Graph> = (1..=max_order).flat_map(enumerate_graphs).collect();
        let families = named_families();
        gs.extend(families.iter().map(|(_, s)| generate(s).expect("named family")));
        let mut c = Corpus::from_graphs(gs);
        c.families = families.into_iter().map(|(n, _)| n).collect();
        c
    }

    /// Canonicalises, removes isomorphic duplicates and graphs with no
    /// vertices, and sorts.
    pub fn from_graphs(gs: impl IntoIterator<Item = Graph>) -> Corpus {
        let mut seen = BTreeSet::new();
        let mut keyed: Vec<(usize, String, Graph)> = Vec::new();
        for g in gs {
            if g.n() == 0 {
                continue;
            }
            let (code, canon) = canonical_form(&g);
            if seen.insert((canon.n(), code)) {
                keyed.push((canon.n(), to_graph6(&canon), canon));
            }
        }
        keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        Corpus {
            graphs: keyed.into_iter().map(|k| k.2).collect(),
            families: Vec::new(),
        }
    }

    pub fn graphs(&self) -> &[Graph] {
        &self.graphs
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    fn upto(&self, n: usize) -> Vec<&Graph> {
        self.graphs.iter().filter(|g| g.n() <= n).collect()
    }

    fn connected_upto(&self, n: usize) -> Vec<&Graph> {
        self.graphs.iter().filter(|g| g.n() <= n && g.is_connected()).collect()
    }

    pub fn summary(&self) -> CorpusSummary {
        let mut by_order = vec![0; self.graphs.iter().map(Graph::n).max().unwrap_or(0) + 1];
        for g in &self.graphs {
            by_order[g.n()] += 1;
        }
        CorpusSummary {
            graphs: self.graphs.len(),
            by_order,
            families: self.families.clone(),
        }
    }
}

fn named_families() -> Vec<(String, FamilySpec)> {
    let mut out = Vec::new();
    for n in 1..=FAMILY_ORDER {
        out.push((format!("P{n}"), FamilySpec::Path(n)));
        out.push((format!("K{n}"), FamilySpec::Complete(n)));
        if n >= 3 {
            out.push((format!("C{n}"), FamilySpec::Cycle(n)));
        }
        if n >= 2 {
            out.push((format!("S{}", n - 1), FamilySpec::Star(n - 1)));
        }
    }
    for s in 1..=FAMILY_ORDER / 2 {
        for t in s..=FAMILY_ORDER - s {
            out.push((format!("K{s},{t}"), FamilySpec::complete_bipartite(s, t)));
        }
    }
    for (a, b) in [(2, 2), (2, 3), (2, 4)] {
        out.push((format!("grid{a}x{b}"), FamilySpec::Grid(a, b)));
    }
    for k in 1..=3 {
        out.push((format!("W{k}"), FamilySpec::DaddyLonglegs(k)));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub graphs: usize,
    /// Number of corpus graphs of each order, indexed by order.
    pub by_order: Vec<usize>,
    pub families: Vec<String>,
}

/// A deliberately wrong check, used to confirm that the harness reports
/// failures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Asserts `|dfs_cover| <= tau` instead of `tau <= |dfs_cover|`.
    DfsCover,
}

impl std::str::FromStr for Fault {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Fault> {
        match s {
            "dfs-cover" => Ok(Fault::DfsCover),
            _ => Err(crate::Error::Parameter(format!("unknown fault {s:?}"))),
        }
    }
}

/// Sizes of every sweep. The defaults are the acceptance sizes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Scale {
    pub multipartite_order: usize,
    pub pattern_order: usize,
    pub pair_order: usize,
    pub cbg_param: usize,
    pub witness_param: usize,
    pub construction_order: usize,
    pub gkn_k: usize,
    pub gkn_n: usize,
    pub grid_n: usize,
    pub clique_factor_order: usize,
    pub clique_m: usize,
    pub width_order: usize,
    pub grid_bramble: usize,
    pub bramble_product: usize,
    pub separation_order: usize,
    pub lemma_product: usize,
    pub lemma_extended: usize,
    pub cover_order: usize,
    pub kk_order: usize,
    pub kk_k: usize,
    pub select_instances: usize,
    pub select_k: usize,
    pub lift_systems: usize,
    pub pipeline_runs: usize,
    /// Largest product order in the classification probes.
    pub probe_order: usize,
}

impl Default for Scale {
    fn default() -> Scale {
        Scale {
            multipartite_order: 4,
            pattern_order: 5,
            pair_order: 5,
            cbg_param: 4,
            witness_param: 3,
            construction_order: 5,
            gkn_k: 2,
            gkn_n: 6,
            grid_n: 3,
            clique_factor_order: 4,
            clique_m: 3,
            width_order: 8,
            grid_bramble: 4,
            bramble_product: 12,
            separation_order: 8,
            lemma_product: 12,
            lemma_extended: 16,
            cover_order: 8,
            kk_order: 6,
            kk_k: 2,
            select_instances: 200,
            select_k: 8,
            lift_systems: 100,
            pipeline_runs: 20,
            probe_order: 24,
        }
    }
}

impl Scale {
    /// A small configuration that runs in a few seconds.
    pub fn quick() -> Scale {
        Scale {
            multipartite_order: 3,
            pattern_order: 4,
            pair_order: 4,
            cbg_param: 3,
            witness_param: 2,
            construction_order: 4,
            gkn_k: 1,
            gkn_n: 4,
            grid_n: 3,
            clique_factor_order: 3,
            clique_m: 2,
            width_order: 6,
            grid_bramble: 3,
            bramble_product: 8,
            separation_order: 6,
            lemma_product: 12,
            lemma_extended: 12,
            cover_order: 6,
            kk_order: 5,
            kk_k: 2,
            select_instances: 40,
            select_k: 8,
            lift_systems: 20,
            pipeline_runs: 5,
            probe_order: 24,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SweepConfig {
    pub scale: Scale,
    pub seed: u64,
    pub fault: Option<Fault>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// The graphs of the failing case in graph6.
    pub graphs: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// The smallest failing cases, smallest first.
    pub counterexamples: Vec<Counterexample>,
    pub warnings: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn warn_if_vacuous(mut self) -> CheckReport {
        if self.cases == 0 {
            self.warnings.push("no cases: vacuous pass".into());
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub id: usize,
    pub title: String,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub corpus: CorpusSummary,
    pub config: SweepConfig,
    pub passed: bool,
    pub warnings: Vec<String>,
    pub criteria: Vec<CriterionReport>,
}

impl SweepReport {
    /// Canonical JSON of the report.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// The first counterexample of the first failing check, if any.
    pub fn first_counterexample(&self) -> Option<(&CheckReport, &Counterexample)> {
        self.criteria
            .iter()
            .flat_map(|c| &c.checks)
            .find_map(|c| c.counterexamples.first().map(|x| (c, x)))
    }
}

pub const CRITERIA: [&str; 9] = [
    "multipartite characterisations agree with the subgraph oracle",
    "clique number is multiplicative under the strong product",
    "degeneracy formulas and witness families",
    "decomposition constructions validate and meet their widths",
    "exact widths",
    "lower-bound certificates",
    "path cover, Moore and complete bipartite minor machinery",
    "double-cover machinery",
    "classification of the canned corpus",
];

/// Runs criteria `1..=9`, or the subset in `only` when given.
pub fn run_sweep(corpus: &Corpus, config: &SweepConfig, only: Option<&[usize]>) -> SweepReport {
    run_sweep_timed(corpus, config, only).0
}

/// [`run_sweep`] plus the wall time of each criterion, kept out of the
/// report so that reports stay reproducible.
pub fn run_sweep_timed(
    corpus: &Corpus,
    config: &SweepConfig,
    only: Option<&[usize]>,
) -> (SweepReport, Vec<(usize, std::time::Duration)>) {
    let s = &config.scale;
    let mut times = Vec::new();
    let wanted = |id: usize| only.is_none_or(|o| o.contains(&id));
    let mut criteria = Vec::new();
    for (i, title) in CRITERIA.iter().enumerate() {
        let id = i + 1;
        if !wanted(id) {
            continue;
        }
        let start = std::time::Instant::now();
        let checks = match id {
            1 => vec![multipartite_check(corpus, s)],
            2 => vec![clique_law(corpus, s)],
            3 => degeneracy_checks(corpus, s),
            4 => construction_checks(corpus, s),
            5 => width_checks(corpus, s),
            6 => lower_bound_checks(corpus, s),
            7 => cover_checks(corpus, s, config.fault),
            8 => double_cover_checks(s, config.seed),
            _ => classification_checks(s),
        };
        times.push((id, start.elapsed()));
        let checks: Vec<CheckReport> = checks.into_iter().map(CheckReport::warn_if_vacuous).collect();
        criteria.push(CriterionReport {
            id,
            title: (*title).into(),
            passed: checks.iter().all(CheckReport::passed),
            checks,
        });
    }
    let mut warnings = Vec::new();
    if corpus.is_empty() {
        warnings.push("corpus is empty: corpus-driven checks pass vacuously".into());
    }
    if let Some(f) = config.fault {
        warnings.push(format!("fault {f:?} injected"));
    }
    let report = SweepReport {
        corpus: corpus.summary(),
        config: config.clone(),
        passed: criteria.iter().all(|c| c.passed),
        warnings,
        criteria,
    };
    (report, times)
}

type Outcome = std::result::Result<(), String>;

trait Lib<T> {
    fn lib(self) -> std::result::Result<T, String>;
}

impl<T> Lib<T> for crate::Result<T> {
    fn lib(self) -> std::result::Result<T, String> {
        self.map_err(|e| e.to_string())
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Evaluates `f` on every case in parallel and collects failures, keeping
/// the smallest ones by total order and then graph6.
fn run<T: Sync>(
    name: &str,
    cases: &[T],
    graphs: impl Fn(&T) -> Vec<Graph> + Sync,
    f: impl Fn(&T) -> Outcome + Sync,
) -> CheckReport {
    let results: Vec<Option<Counterexample>> = cases
        .par_iter()
        .map(|c| {
            f(c).err().map(|detail| Counterexample {
                graphs: graphs(c).iter().map(to_graph6).collect(),
                detail,
            })
        })
        .collect();
    let mut failed: Vec<(usize, Counterexample)> = results
        .into_iter()
        .flatten()
        .map(|c| (c.graphs.iter().map(|s| graph6_order(s)).sum(), c))
        .collect();
    let failures = failed.len();
    failed.sort_by(|a, b| (a.0, &a.1.graphs).cmp(&(b.0, &b.1.graphs)));
    failed.truncate(COUNTEREXAMPLES);
    CheckReport {
        name: name.into(),
        cases: cases.len(),
        failures,
        counterexamples: failed.into_iter().map(|c| c.1).collect(),
        warnings: Vec::new(),
    }
}

fn graph6_order(s: &str) -> usize {
    crate::graph::parse_graph6(s).map(|g| g.n()).unwrap_or(usize::MAX)
}

fn pairs<'a>(a: &[&'a Graph], b: &[&'a Graph]) -> Vec<(&'a Graph, &'a Graph)> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).collect()
}

fn pair_graphs(p: &(&Graph, &Graph)) -> Vec<Graph> {
    vec![p.0.clone(), p.1.clone()]
}

fn one_graph(g: &&Graph) -> Vec<Graph> {
    vec![(*g).clone()]
}

fn no_graphs<T>(_: &T) -> Vec<Graph> {
    Vec::new()
}

fn fam(s: FamilySpec) -> Graph {
    generate(&s).expect("family")
}

/// Every overlay-free pattern with at least two parts and order at most
/// `max`, with parts in every order.
fn patterns(max: usize) -> Vec<MultipartitePattern> {
    fn compositions(r: usize) -> Vec<Vec<usize>> {
        if r == 0 {
            return vec![Vec::new()];
        }
        (1..=r)
            .flat_map(|first| {
                compositions(r - first).into_iter().map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
            })
            .collect()
    }
    (2..=max)
        .flat_map(compositions)
        .filter(|parts| parts.len() >= 2)
        .map(|parts| MultipartitePattern::new(parts, 0).expect("positive parts"))
        .collect()
}

fn multipartite_check(corpus: &Corpus, s: &Scale) -> CheckReport {
    let gs = corpus.upto(s.multipartite_order);
    let pats = patterns(s.pattern_order);
    let mut cases: Vec<(ProductKind, &Graph, &Graph, &MultipartitePattern)> = Vec::new();
    for kind in ProductKind::ALL {
        for (a, b) in pairs(&gs, &gs) {
            if kind == ProductKind::Direct && (a.m() == 0 || b.m() == 0) {
                continue;
            }
            cases.extend(pats.iter().map(|p| (kind, a, b, p)));
        }
    }
    run(
        "decide agrees with oracle_subgraph",
        &cases,
        |c| vec![c.1.clone(), c.2.clone()],
        |&(kind, g1, g2, p)| {
            let prod = product(g1, g2, kind).lib()?.base;
            let want = oracle_subgraph_with_limit(&prod, p, prod.n()).lib()?.is_some();
            let got = decide(kind, g1, g2, p).lib()?;
            if let Some(e) = &got {
                e.validate(&prod, p).map_err(|e| format!("{} embedding of {p:?} invalid: {e}", kind.name()))?;
            }
            ensure(got.is_some() == want, || {
                format!("{} product, pattern {p:?}: decider says {}, oracle says {want}", kind.name(), got.is_some())
            })
        },
    )
}

fn clique_law(corpus: &Corpus, s: &Scale) -> CheckReport {
    let gs = corpus.upto(s.pair_order);
    let omega: Vec<usize> = gs.par_iter().map(|g| clique_number(g).expect("small")).collect();
    let cases: Vec<(usize, usize)> = (0..gs.len()).flat_map(|i| (0..gs.len()).map(move |j| (i, j))).collect();
    run(
        "omega(G strong H) = omega(G) omega(H)",
        &cases,
        |&(i, j)| vec![gs[i].clone(), gs[j].clone()],
        |&(i, j)| {
            let p = product(gs[i], gs[j], ProductKind::Strong).lib()?.base;
            let w = clique_number(&p).lib()?;
            ensure(w == omega[i] * omega[j], || format!("omega = {w}, factors {} and {}", omega[i], omega[j]))
        },
    )
}

/// Every `(d, delta, s, t)` meeting the factor invariants with all values
/// in `1..=max`.
fn stats_tuples(max: usize) -> Vec<FactorStats> {
    let mut out = Vec::new();
    for d in 1..=max {
        for delta in d..=max {
            for s in 1..=d {
                for t in s..=delta {
                    out.push(FactorStats::new(d, delta, s, t).expect("valid tuple"));
                }
            }
        }
    }
    out
}

fn degeneracy_checks(corpus: &Corpus, s: &Scale) -> Vec<CheckReport> {
    let gs = corpus.upto(s.pair_order);
    let all = pairs(&gs, &gs);
    let additivity = run("cartesian degeneracy is additive", &all, pair_graphs, |&(a, b)| {
        let d = degeneracy(&product(a, b, ProductKind::Cartesian).lib()?.base);
        ensure(d == degeneracy(a) + degeneracy(b), || format!("degeneracy {d}"))
    });

    let mut cbg = Vec::new();
    for s1 in 1..=s.cbg_param {
        for t1 in s1..=s.cbg_param {
            for s2 in 1..=s.cbg_param {
                for t2 in s2..=s.cbg_param {
                    cbg.push((s1, t1, s2, t2));
                }
            }
        }
    }
    let kst = |s, t| fam(FamilySpec::complete_bipartite(s, t));
    let bipartite = run(
        "degeneracy of K_{s1,t1} x K_{s2,t2} is min(s1 t2, s2 t1)",
        &cbg,
        |&(s1, t1, s2, t2)| vec![kst(s1, t1), kst(s2, t2)],
        |&(s1, t1, s2, t2)| {
            let d = degeneracy(&product(&kst(s1, t1), &kst(s2, t2), ProductKind::Direct).lib()?.base);
            ensure(d == (s1 * t2).min(s2 * t1), || format!("degeneracy {d}"))
        },
    );

    let edged: Vec<&Graph> = gs.iter().copied().filter(|g| g.m() > 0).collect();
    let edged_pairs = pairs(&edged, &edged);
    let sandwich = run("direct and strong degeneracy sandwiches", &edged_pairs, pair_graphs, |&(a, b)| {
        for (kind, bound) in [
            (ProductKind::Direct, bounds_direct as fn(&FactorStats, &FactorStats) -> crate::Result<_>),
            (ProductKind::Strong, bounds_strong),
        ] {
            let (_, _, bd) = best_stats(a, b, bound).lib()?;
            let d = degeneracy(&product(a, b, kind).lib()?.base);
            ensure(bd.lower <= d && d <= bd.upper, || {
                format!("{} degeneracy {d} outside [{}, {}]", kind.name(), bd.lower, bd.upper)
            })?;
        }
        Ok(())
    });

    let tuples = stats_tuples(s.witness_param);
    let tuple_pairs: Vec<(FactorStats, FactorStats)> =
        tuples.iter().flat_map(|&a| tuples.iter().map(move |&b| (a, b))).collect();
    let direct_lower = run(
        "direct lower witnesses attain the lower bound",
        &tuple_pairs,
        |&(a, b)| witness_direct_lower(&a, &b).map(|(x, y)| vec![x, y]).unwrap_or_default(),
        |(a, b)| {
            let (x, y) = witness_direct_lower(a, b).lib()?;
            let d = degeneracy(&product(&x, &y, ProductKind::Direct).lib()?.base);
            let want = bounds_direct(a, b).lib()?.lower;
            ensure(d == want, || format!("stats {a:?} {b:?}: degeneracy {d}, bound {want}"))
        },
    );
    let strong_lower = run(
        "strong lower witnesses attain the lower bound",
        &tuple_pairs,
        |&(a, b)| witness_strong_lower(&a, &b).map(|(x, y)| vec![x, y]).unwrap_or_default(),
        |(a, b)| {
            let (x, y) = witness_strong_lower(a, b).lib()?;
            let d = degeneracy(&product(&x, &y, ProductKind::Strong).lib()?.base);
            let want = bounds_strong(a, b).lib()?.lower;
            ensure(d == want, || format!("stats {a:?} {b:?}: degeneracy {d}, bound {want}"))
        },
    );
    let w = s.witness_param;
    let quads: Vec<(usize, usize, usize, usize)> = (1..=w)
        .flat_map(|k1| (1..=w).flat_map(move |k2| (1..=w).flat_map(move |d1| (1..=w).map(move |d2| (k1, k2, d1, d2)))))
        .collect();
    let strong_upper = run(
        "strong upper witnesses attain the upper bound",
        &quads,
        |&(k1, k2, d1, d2)| witness_strong_upper(k1, k2, d1, d2).map(|(x, y)| vec![x, y]).unwrap_or_default(),
        |&(k1, k2, d1, d2)| {
            let (x, y) = witness_strong_upper(k1, k2, d1, d2).lib()?;
            let d = degeneracy(&product(&x, &y, ProductKind::Strong).lib()?.base);
            let (delta1, delta2) = (k1 * d1, k2 * d2);
            ensure(x.max_degree() == delta1 && y.max_degree() == delta2, || "factor degrees differ from k d".into())?;
            let want = d1 + d2 + (d1 * delta2).min(d2 * delta1);
            ensure(d == want, || format!("(k1, k2, d1, d2) = {:?}: degeneracy {d}, bound {want}", (k1, k2, d1, d2)))
        },
    );
    let small_cbg: Vec<_> = cbg.iter().copied().filter(|c| c.1 <= w && c.3 <= w).collect();
    let strong_cbg = run(
        "strong products of complete bipartite graphs attain f(s1, t1, s2, t2)",
        &small_cbg,
        |&(s1, t1, s2, t2)| vec![kst(s1, t1), kst(s2, t2)],
        |&(s1, t1, s2, t2)| {
            let d = degeneracy(&product(&kst(s1, t1), &kst(s2, t2), ProductKind::Strong).lib()?.base);
            let want = strong_cbg_f(s1, t1, s2, t2);
            ensure(d == want, || format!("degeneracy {d}, formula {want}"))
        },
    );
    vec![additivity, bipartite, sandwich, direct_lower, strong_lower, strong_upper, strong_cbg]
}

fn construction_checks(corpus: &Corpus, s: &Scale) -> Vec<CheckReport> {
    let gs = corpus.upto(s.construction_order);
    let decs: Vec<_> = gs.par_iter().map(|g| exact_width(g, WidthKind::Tree).expect("small")).collect();
    let idx: Vec<(usize, usize)> = (0..gs.len()).flat_map(|i| (0..gs.len()).map(move |j| (i, j))).collect();
    let lift = run(
        "lift_product",
        &idx,
        |&(i, j)| vec![gs[i].clone(), gs[j].clone()],
        |&(i, j)| {
            let d = lift_product(gs[i], &decs[i].decomposition, gs[j]).lib()?;
            for kind in ProductKind::ALL {
                let p = product(gs[i], gs[j], kind).lib()?.base;
                let v = validate_decomposition(&p, &d);
                ensure(v.is_empty(), || format!("{} product: {v:?}", kind.name()))?;
            }
            let bound = (decs[i].value + 1) * gs[j].n();
            ensure(d.width() < bound, || format!("width {} exceeds {}", d.width(), bound - 1))
        },
    );
    let sq_cases: Vec<usize> = (0..gs.len()).collect();
    let sq = run(
        "lift_square",
        &sq_cases,
        |&i| vec![gs[i].clone()],
        |&i| {
            let g = gs[i];
            let d = lift_square(g, &decs[i].decomposition).lib()?;
            let v = validate_decomposition(&square(g), &d);
            ensure(v.is_empty(), || format!("{v:?}"))?;
            let bound = (decs[i].value + 1) * (g.max_degree() + 1);
            ensure(d.width() < bound, || format!("width {} exceeds {}", d.width(), bound - 1))
        },
    );
    let conn: Vec<usize> = (0..gs.len()).filter(|&i| gs[i].is_connected()).collect();
    let conn_pairs: Vec<(usize, usize)> = conn.iter().flat_map(|&i| conn.iter().map(move |&j| (i, j))).collect();
    let vc = run(
        "vc_subdivision_decomp",
        &conn_pairs,
        |&(i, j)| vec![gs[i].clone(), gs[j].clone()],
        |&(i, j)| {
            let (g1, g2) = (gs[i], gs[j]);
            let cover = vertex_cover(g1).lib()?;
            let d = vc_subdivision_decomp(g1, &cover, g2, &decs[j].decomposition).lib()?;
            let p = product(g1, g2, ProductKind::Direct).lib()?.base;
            let v = validate_decomposition(&p, &d);
            ensure(v.is_empty(), || format!("{v:?}"))?;
            let bound = cover.len() * (decs[j].value + 1) * (g2.max_degree() + 1);
            ensure(d.width() <= bound, || format!("width {} exceeds {bound}", d.width()))
        },
    );
    let kn: Vec<(usize, usize)> = (0..=s.gkn_k).flat_map(|k| (k + 1..=s.gkn_n).map(move |n| (k, n))).collect();
    let gkn = run("gkn_decomposition", &kn, no_graphs, |&(k, n)| {
        let (g, d) = gkn_decomposition(k, n).lib()?;
        let v = validate_decomposition(&g, &d);
        ensure(v.is_empty(), || format!("(k, n) = ({k}, {n}): {v:?}"))?;
        let bound = 6 * n + (k + 1) * (k + 1);
        ensure(d.width() < bound, || format!("(k, n) = ({k}, {n}): width {} exceeds {}", d.width(), bound - 1))?;
        ensure(d.host_is_tree(), || format!("(k, n) = ({k}, {n}): host is not a tree"))
    });
    vec![lift, sq, vc, gkn]
}

fn width_checks(corpus: &Corpus, s: &Scale) -> Vec<CheckReport> {
    let ns: Vec<usize> = (2..=s.grid_n).collect();
    let grids = run(
        "tw(P_n cartesian P_n) = n",
        &ns,
        |&n| vec![fam(FamilySpec::Path(n))],
        |&n| {
            let p = fam(FamilySpec::Path(n));
            let g = product(&p, &p, ProductKind::Cartesian).lib()?.base;
            let tw = exact_width_with_limit(&g, WidthKind::Tree, g.n()).lib()?.value;
            ensure(tw == n, || format!("tw = {tw}"))
        },
    );
    let small = corpus.upto(s.clique_factor_order);
    let cases: Vec<(&Graph, usize)> = small.iter().flat_map(|&g| (1..=s.clique_m).map(move |m| (g, m))).collect();
    let clique = run(
        "tw(G strong K_m) = (tw(G)+1)m - 1",
        &cases,
        |&(g, m)| vec![g.clone(), fam(FamilySpec::Complete(m))],
        |&(g, m)| {
            let p = product(g, &fam(FamilySpec::Complete(m)), ProductKind::Strong).lib()?.base;
            let tw = exact_width_with_limit(&p, WidthKind::Tree, p.n()).lib()?.value;
            let want = (treewidth(g) + 1) * m - 1;
            ensure(tw == want, || format!("m = {m}: tw = {tw}, expected {want}"))
        },
    );
    let gs = corpus.upto(s.width_order);
    let order = run("tw <= pw", &gs, one_graph, |g| {
        let (t, p) = (treewidth(g), pathwidth(g));
        ensure(t <= p, || format!("tw = {t}, pw = {p}"))
    });
    vec![grids, clique, order]
}

fn lower_bound_checks(corpus: &Corpus, s: &Scale) -> Vec<CheckReport> {
    let ls: Vec<usize> = (1..=s.grid_bramble).collect();
    let grid = run(
        "grid_bramble(l) has order l",
        &ls,
        |&l| vec![fam(FamilySpec::Grid(l, l))],
        |&l| {
            let g = fam(FamilySpec::Grid(l, l));
            let b = grid_bramble(l).lib()?;
            let v = validate_bramble(&g, &b);
            ensure(v.is_empty(), || format!("{v:?}"))?;
            let limit = b.elements.len().max(g.n());
            let (o, _) = bramble_order_with_limit(&g, &b, limit).lib()?;
            ensure(o == l, || format!("order {o}"))
        },
    );

    let gs = corpus.upto(s.bramble_product);
    let bp: Vec<(&Graph, &Graph)> = pairs(&gs, &gs)
        .into_iter()
        .filter(|(a, b)| a.n() * b.n() <= s.bramble_product)
        .collect();
    let brambles = run("product_bramble order >= eta(H)(tw(G)+1)", &bp, pair_graphs, |&(g, h)| {
        let b = treewidth_bramble(g).lib()?;
        let (t, model) = hadwiger_number(h).lib()?;
        let pb = product_bramble(g, &b, h, &model).lib()?;
        let p = product(g, h, ProductKind::Strong).lib()?.base;
        let v = validate_bramble(&p, &pb);
        ensure(v.is_empty(), || format!("{v:?}"))?;
        let limit = pb.elements.len().max(p.n());
        let (o, _) = bramble_order_with_limit(&p, &pb, limit).lib()?;
        let want = t * (treewidth(g) + 1);
        ensure(o >= want, || format!("order {o} below {want}"))
    });

    let gs = corpus.upto(s.separation_order);
    let two_thirds = Rational64::new(2, 3);
    let sep = run("min 2/3-separation order <= tw + 1", &gs, one_graph, |g| {
        let complete = g.m() == g.n() * (g.n() - 1) / 2;
        match min_separation_order(g, two_thirds).lib()? {
            None => ensure(complete, || "no separation found for a non-complete graph".into()),
            Some(sp) => {
                sp.validate(g).lib()?;
                ensure(!complete, || "separation reported for a complete graph".into())?;
                let tw = treewidth(g);
                ensure(sp.order() <= tw + 1, || format!("order {} but tw = {tw}", sp.order()))
            }
        }
    });
    let mut sep = sep;
    let no_sep = gs.iter().filter(|g| g.m() == g.n() * (g.n() - 1) / 2).count();
    if no_sep > 0 {
        sep.warnings
            .push(format!("{no_sep} complete graphs admit no separation; checked to return none"));
    }

    let lemma = |max: usize, name: &str| {
        let conn = corpus.connected_upto(max);
        let (eps, beta) = (Rational64::new(2, 3), Rational64::new(3, 4));
        // Necessary for the hypotheses: n >= 1/(1 - beta), i.e. n >= 4.
        let min_h = (Rational64::from_integer(1) / (Rational64::from_integer(1) - beta)).ceil().to_integer() as usize;
        let cases: Vec<(&Graph, &Graph)> = pairs(&conn, &conn)
            .into_iter()
            .filter(|(a, b)| a.n() * b.n() <= max && b.n() >= min_h)
            .collect();
        let reports: Vec<_> = cases
            .par_iter()
            .map(|&(g, h)| verify_separation_lemma(g, h, eps, beta, None))
            .collect();
        let qualifying = reports.iter().filter(|r| r.as_ref().is_ok_and(|r| r.hypotheses_hold)).count();
        let nontrivial = reports
            .iter()
            .filter(|r| r.as_ref().is_ok_and(|r| r.hypotheses_hold && r.k > 0))
            .count();
        let indexed: Vec<usize> = (0..cases.len()).collect();
        let mut rep = run(
            name,
            &indexed,
            |&i| pair_graphs(&cases[i]),
            |&i| {
                let r = reports[i].clone().lib()?;
                ensure(!r.violation, || {
                    format!("k = {}: measured {:?} below bound {}", r.k, r.measured, r.bound)
                })
            },
        );
        rep.warnings.push(format!(
            "{qualifying} of {} pairs meet the hypotheses, {nontrivial} with k > 0",
            cases.len()
        ));
        if nontrivial == 0 {
            rep.warnings.push("no pair with k > 0: the check is vacuous at this size".into());
        }
        rep
    };
    let lemma_small = lemma(s.lemma_product, "separation lemma on connected pairs");
    let lemma_ext = lemma(s.lemma_extended, "separation lemma on connected pairs (extended)");
    vec![grid, brambles, sep, lemma_small, lemma_ext]
}

/// Minimum vertex cover size by exhaustive search.
fn tau_oracle(g: &Graph) -> usize {
    (0u64..1 << g.n())
        .filter(|s| g.edges().all(|(u, v)| s >> u & 1 == 1 || s >> v & 1 == 1))
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap_or(0)
}

fn cover_checks(corpus: &Corpus, s: &Scale, fault: Option<Fault>) -> Vec<CheckReport> {
    let gs = corpus.connected_upto(s.cover_order);
    let dfs = run("tau <= |dfs_cover| <= ceil((dll+1) pn / 2)", &gs, one_graph, |g| {
        let c = dfs_cover(g).lib()?;
        ensure(g.edges().all(|(u, v)| c.contains(&u) || c.contains(&v)), || "not a vertex cover".into())?;
        let tau = tau_oracle(g);
        let lower_ok = match fault {
            Some(Fault::DfsCover) => c.len() <= tau,
            None => tau <= c.len(),
        };
        ensure(lower_ok, || format!("tau = {tau}, |dfs_cover| = {}", c.len()))?;
        let (dll, _) = daddy_longlegs(g).lib()?;
        let pn = path_number(g).lib()?;
        let upper = ((dll + 1) * pn).div_ceil(2);
        ensure(c.len() <= upper, || format!("|dfs_cover| = {} above {upper}", c.len()))
    });
    let moore = run("order <= Moore bound", &gs, one_graph, |g| {
        let delta = g.max_degree();
        let diam = g.diameter().ok_or("connected graph without diameter")?;
        let bound = match delta {
            0 => 1,
            1 => 2,
            _ => moore_bound(delta, diam).lib()?,
        };
        ensure(g.n() as u64 <= bound, || format!("n = {} above {bound}", g.n()))
    });
    let small = corpus.connected_upto(s.kk_order);
    let cases: Vec<(&Graph, usize)> = small
        .par_iter()
        .map(|&g| (g, daddy_longlegs(g).map(|r| r.0).unwrap_or(0)))
        .collect::<Vec<_>>()
        .into_iter()
        .flat_map(|(g, dll)| (1..=dll.min(s.kk_k)).map(move |k| (g, k)))
        .collect();
    let kk = run(
        "K_{k,k} minor in G x P_{2k} when dll(G) >= k",
        &cases,
        |&(g, _)| vec![g.clone()],
        |&(g, k)| {
            let host = product(g, &fam(FamilySpec::Path(2 * k)), ProductKind::Direct).lib()?.base;
            let kkk = fam(FamilySpec::complete_bipartite(k, k));
            let m = find_minor_with_limit(&host, &kkk, host.n()).lib()?;
            let m = m.ok_or_else(|| format!("no K_{{{k},{k}}} minor"))?;
            let v = validate_model(&host, &kkk, &m);
            ensure(v.is_empty(), || format!("{v:?}"))
        },
    );
    vec![dfs, moore, kk]
}

/// Random disjoint coloured trees joined by `k` paths with fresh interiors,
/// plus chords.
fn select_instance(rng: &mut ChaCha8Rng, max_k: usize) -> (Graph, Vec<ColouredSubgraph>, Vec<Vec<usize>>) {
    let t = rng.gen_range(2..=4);
    let mut b = GraphBuilder::new(0);
    let mut subs = Vec::new();
    for _ in 0..t {
        let size = rng.gen_range(1..=4);
        let base = b.n();
        let mut colour = Vec::new();
        let mut edges = Vec::new();
        for i in 0..size {
            let v = b.add_vertex();
            if i == 0 {
                colour.push(rng.gen_range(0..2u8));
            } else {
                let p = base + rng.gen_range(0..i);
                b.add_edge(p, v).expect("fresh");
                edges.push((p, v));
                colour.push(1 - colour[p - base]);
            }
        }
        subs.push(ColouredSubgraph {
            vertices: (base..base + size).collect(),
            edges,
            colour,
        });
    }
    let k = rng.gen_range(1..=max_k);
    let mut paths = Vec::new();
    for _ in 0..k {
        let mut which: Vec<usize> = (0..t).collect();
        which.shuffle(rng);
        let (ha, hb) = (&subs[which[0]], &subs[which[1]]);
        let a = ha.vertices[rng.gen_range(0..ha.vertices.len())];
        let z = hb.vertices[rng.gen_range(0..hb.vertices.len())];
        let mut p = vec![a];
        let interior = if b.has_edge(a, z) { rng.gen_range(1..=3) } else { rng.gen_range(0..=3) };
        for _ in 0..interior {
            let v = b.add_vertex();
            b.add_edge(*p.last().expect("nonempty"), v).expect("fresh");
            p.push(v);
        }
        b.add_edge(*p.last().expect("nonempty"), z).expect("new edge");
        p.push(z);
        paths.push(p);
    }
    let n = b.n();
    for _ in 0..rng.gen_range(0..=3) {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && !b.has_edge(u, v) {
            b.add_edge(u, v).expect("checked");
        }
    }
    (b.build(), subs, paths)
}

/// Random disjoint trunk paths with `2k` disjoint linking paths per linked
/// pair, plus chords.
fn lift_instance(rng: &mut ChaCha8Rng) -> (Graph, PathSystem, usize) {
    let l = rng.gen_range(2..=3);
    let k = rng.gen_range(1..=2);
    let mut b = GraphBuilder::new(0);
    let mut trunks = Vec::new();
    for _ in 0..l {
        let len = rng.gen_range(2 * k..=2 * k + 2);
        let mut p = vec![b.add_vertex()];
        for _ in 1..len {
            let v = b.add_vertex();
            b.add_edge(*p.last().expect("nonempty"), v).expect("fresh");
            p.push(v);
        }
        trunks.push(p);
    }
    let mut linkages = Vec::new();
    for i in 0..l {
        for j in i + 1..l {
            if rng.gen_bool(0.2) {
                continue;
            }
            let mut ends_i = trunks[i].clone();
            let mut ends_j = trunks[j].clone();
            ends_i.shuffle(rng);
            ends_j.shuffle(rng);
            let mut paths = Vec::new();
            for (&a, &z) in ends_i.iter().zip(&ends_j).take(2 * k) {
                let mut p = vec![a];
                let interior = if b.has_edge(a, z) { rng.gen_range(1..=2) } else { rng.gen_range(0..=2) };
                for _ in 0..interior {
                    let v = b.add_vertex();
                    b.add_edge(*p.last().expect("nonempty"), v).expect("fresh");
                    p.push(v);
                }
                b.add_edge(*p.last().expect("nonempty"), z).expect("new edge");
                p.push(z);
                paths.push(p);
            }
            linkages.push(Linkage { i, j, paths });
        }
    }
    let n = b.n();
    for _ in 0..rng.gen_range(0..=2) {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && !b.has_edge(u, v) {
            b.add_edge(u, v).expect("checked");
        }
    }
    (b.build(), PathSystem { trunks, linkages }, k)
}

fn random_connected(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    loop {
        let mut b = GraphBuilder::new(n);
        for v in 1..n {
            b.add_edge(rng.gen_range(0..v), v).expect("tree edge");
        }
        for u in 0..n {
            for v in u + 1..n {
                if !b.has_edge(u, v) && rng.gen_bool(p) {
                    b.add_edge(u, v).expect("checked");
                }
            }
        }
        let g = b.build();
        if g.is_connected() {
            return g;
        }
    }
}

/// Disjoint random walks used as trunks by the pipeline check.
fn random_trunks(rng: &mut ChaCha8Rng, g: &Graph, l: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut used = vec![false; n];
    let mut trunks = Vec::new();
    for _ in 0..l {
        let free: Vec<usize> = (0..n).filter(|&v| !used[v]).collect();
        let mut p = vec![free[rng.gen_range(0..free.len())]];
        used[p[0]] = true;
        for _ in 0..rng.gen_range(1..=2) {
            let last = *p.last().expect("nonempty");
            let next: Vec<usize> = g.neighbors(last).iter().copied().filter(|&u| !used[u]).collect();
            if next.is_empty() {
                break;
            }
            let u = next[rng.gen_range(0..next.len())];
            used[u] = true;
            p.push(u);
        }
        trunks.push(p);
    }
    trunks
}

fn is_path_in(g: &Graph, p: &[usize]) -> bool {
    let distinct = p.iter().collect::<BTreeSet<_>>().len() == p.len();
    !p.is_empty() && distinct && p.iter().all(|&v| v < g.n()) && p.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

fn double_cover_checks(s: &Scale, seed: u64) -> Vec<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let instances: Vec<_> = (0..s.select_instances).map(|_| select_instance(&mut rng, s.select_k)).collect();
    let select = run(
        "select_bipartite_paths keeps half the paths with a bipartite union",
        &instances,
        |i| vec![i.0.clone()],
        |(g, subs, paths)| {
            let sel = select_bipartite_paths(g, subs, paths).lib()?;
            ensure(2 * sel.selected.len() >= paths.len(), || {
                format!("kept {} of {} paths", sel.selected.len(), paths.len())
            })?;
            let mut u = GraphBuilder::new(g.n());
            let edges = subs
                .iter()
                .flat_map(|h| h.edges.iter().copied())
                .chain(sel.selected.iter().flat_map(|&i| paths[i].windows(2).map(|w| (w[0], w[1]))));
            for (a, b) in edges {
                if !u.has_edge(a, b) {
                    u.add_edge(a, b).lib()?;
                }
            }
            ensure(u.build().two_colouring().is_some(), || "union has an odd cycle".into())
        },
    );

    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let systems: Vec<_> = (0..s.lift_systems).map(|_| lift_instance(&mut rng)).collect();
    let lift = run(
        "lift_linked_paths outputs validate in the double cover",
        &systems,
        |i| vec![i.0.clone()],
        |(g, sys, k)| check_lift(g, sys, *k),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
    let runs: Vec<(Graph, Vec<Vec<usize>>, usize)> = (0..s.pipeline_runs)
        .map(|_| {
            let n = rng.gen_range(6..=10);
            let g = random_connected(&mut rng, n, 0.35);
            let l = rng.gen_range(2..=3);
            let trunks = random_trunks(&mut rng, &g, l);
            (g, trunks, rng.gen_range(1..=2))
        })
        .collect();
    let pipeline = run(
        "validate_grid_like_minor accepts the pipeline output",
        &runs,
        |r| vec![r.0.clone()],
        |(g, trunks, k)| {
            let out = glm_pipeline(g, trunks, *k).lib()?;
            ensure(out.report.is_ok(), || format!("{:?}", out.report.violations))?;
            check_lift(g, &out.system, *k)
        },
    );
    vec![select, lift, pipeline]
}

/// Independent verification of a lifted system: trunks and kept linkage
/// paths are paths of the double cover projecting onto the inputs, trunks
/// are disjoint, each kept linkage has `k` disjoint paths between its lifted
/// trunks, and at least half of the linked pairs are kept.
fn check_lift(g: &Graph, sys: &PathSystem, k: usize) -> Outcome {
    let out = lift_linked_paths(g, sys).lib()?;
    let cover = double_cover(g).base;
    let project = |p: &[usize]| p.iter().map(|v| v / 2).collect::<Vec<_>>();
    ensure(out.trunks.len() == sys.trunks.len(), || "trunk count changed".into())?;
    let mut trunk_of = vec![None; cover.n()];
    for (i, (t, src)) in out.trunks.iter().zip(&sys.trunks).enumerate() {
        ensure(is_path_in(&cover, t), || format!("lifted trunk {i} is not a path"))?;
        ensure(project(t) == *src, || format!("lifted trunk {i} does not project onto its trunk"))?;
        for &v in t {
            ensure(trunk_of[v].is_none(), || format!("lifted trunks meet at {v}"))?;
            trunk_of[v] = Some(i);
        }
    }
    ensure(out.pairs == sys.linkages.len(), || "linked pair count is wrong".into())?;
    ensure(2 * out.x.len() >= out.pairs, || format!("kept {} of {} pairs", out.x.len(), out.pairs))?;
    for &(i, j) in &out.x {
        let src = sys
            .linkages
            .iter()
            .find(|l| (l.i, l.j) == (i, j))
            .ok_or_else(|| format!("kept pair ({i}, {j}) was never linked"))?;
        let l = out
            .linkages
            .iter()
            .find(|l| (l.i, l.j) == (i, j))
            .ok_or_else(|| format!("kept pair ({i}, {j}) has no lifted linkage"))?;
        let need = (src.paths.len() / 2).max(k.min(src.paths.len()));
        ensure(l.paths.len() >= need, || format!("pair ({i}, {j}) keeps {} paths", l.paths.len()))?;
        let mut used = BTreeSet::new();
        for p in &l.paths {
            ensure(is_path_in(&cover, p), || format!("pair ({i}, {j}): lifted path is not a path"))?;
            ensure(src.paths.contains(&project(p)), || format!("pair ({i}, {j}): path projects onto no input"))?;
            let ends = (trunk_of[p[0]], trunk_of[p[p.len() - 1]]);
            ensure(ends == (Some(i), Some(j)), || format!("pair ({i}, {j}): path ends off the lifted trunks"))?;
            ensure(p.iter().all(|&v| used.insert(v)), || format!("pair ({i}, {j}): lifted paths meet"))?;
        }
    }
    Ok(())
}

/// The expected verdicts, derived by hand from the four characterisations
/// and the declared class parameters.
fn expected_bounded(kind: ProductKind, width: WidthKind, a: &str, b: &str) -> bool {
    let pair = |x: &str, y: &str| (a == x && b == y) || (a == y && b == x);
    match (kind, width) {
        (ProductKind::Direct, WidthKind::Tree) => pair("stars", "paths") || pair("stars", "bounded-degree trees"),
        (ProductKind::Direct, WidthKind::Path) => pair("stars", "paths"),
        _ => false,
    }
}

/// Probe sizes whose product stays within `max` vertices.
fn probe_sizes(a: &Family, b: &Family, kind: ProductKind, max: usize) -> Vec<usize> {
    (1..=8)
        .filter(|&s| match (a.graph(s), b.graph(s)) {
            (Ok(x), Ok(y)) => x.n() * y.n() <= max && product(&x, &y, kind).is_ok(),
            _ => false,
        })
        .collect()
}

fn classification_checks(s: &Scale) -> Vec<CheckReport> {
    let corpus = canned_corpus();
    let cases: Vec<(ProductKind, WidthKind, &CannedClass, &CannedClass)> = ProductKind::ALL
        .iter()
        .flat_map(|&k| {
            [WidthKind::Tree, WidthKind::Path].into_iter().flat_map({
                let corpus = &corpus;
                move |w| corpus.iter().flat_map(move |a| corpus.iter().map(move |b| (k, w, a, b)))
            })
        })
        .collect();
    let table = run("classify reproduces the verdict table", &cases, no_graphs, |&(kind, w, a, b)| {
        let v = classify(kind, w, &a.flags, &b.flags).lib()?;
        let want = expected_bounded(kind, w, &a.name, &b.name);
        ensure(v.bounded == want, || {
            format!("{} {:?} of {} and {}: bounded = {}, expected {want}", kind.name(), w, a.name, b.name, v.bounded)
        })
    });
    let probe = run("empirical_probe never contradicts classify", &cases, no_graphs, |&(kind, w, a, b)| {
        let v = classify(kind, w, &a.flags, &b.flags).lib()?;
        let sizes = probe_sizes(&a.family, &b.family, kind, s.probe_order);
        let t = empirical_probe_with_limit(kind, w, &a.family, &b.family, &sizes, s.probe_order).lib()?;
        ensure(!t.contradicts(&v), || {
            format!("{} {:?} of {} and {}: widths {:?} grow", kind.name(), w, a.name, b.name, t.widths)
        })
    });
    vec![table, probe]
}
