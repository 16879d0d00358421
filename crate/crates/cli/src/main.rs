//! `prodwidth`: command-line front end for the graph-product library.
//!
//! Exit codes: 0 success, 1 negative decision (absent subgraph or minor,
//! failed sweep), 2 usage or input error, 3 search budget exceeded.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use prodwidth::classify::{canned_corpus, classify, empirical_probe_with_limit, ClassFlags};
use prodwidth::decomp::{
    exact_width_with_limit, gkn_decomposition, lift_product, lift_square, validate_decomposition,
    vc_subdivision_decomp, HDecomposition, WidthKind,
};
use prodwidth::degeneracy::{
    bounds_direct, bounds_strong, degeneracy_exact, witness_direct_lower, witness_strong_lower, FactorStats,
};
use prodwidth::graph::{parse_graph6, to_graph6, GraphFormat};
use prodwidth::lowerbounds::{bound_engine, BoundKind};
use prodwidth::minors::{
    daddy_longlegs, double_cover, find_minor_with_limit, longest_path, vertex_cover, MINOR_G_LIMIT,
};
use prodwidth::multipartite::{decide_cartesian, decide_direct, decide_strong, MultipartitePattern};
use prodwidth::sweep::{run_sweep, Corpus, Fault, Scale, SweepConfig};
use prodwidth::{product, Error, Graph, ProductKind};

#[derive(Parser)]
#[command(name = "prodwidth", version, about = "Widths, degeneracy and substructures of graph products")]
struct Cli {
    /// Print JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    /// Input format for graph files; by default `.g6` files are graph6 and
    /// anything else is an edge list.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Vertex limit for exhaustive searches, overriding the per-operation
    /// advisories.
    #[arg(long, global = true, env = "PRODWIDTH_BUDGET", value_parser = clap::value_parser!(u64).range(1..=64))]
    budget: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    G6,
    Edgelist,
}

#[derive(Clone, Copy, ValueEnum)]
enum Width {
    Tree,
    Path,
}

impl From<Width> for WidthKind {
    fn from(w: Width) -> WidthKind {
        match w {
            Width::Tree => WidthKind::Tree,
            Width::Path => WidthKind::Path,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Cartesian,
    Direct,
    Strong,
}

impl From<Kind> for ProductKind {
    fn from(k: Kind) -> ProductKind {
        match k {
            Kind::Cartesian => ProductKind::Cartesian,
            Kind::Direct => ProductKind::Direct,
            Kind::Strong => ProductKind::Strong,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundedKind {
    Direct,
    Strong,
}

/// One graph, given positionally or with `--g`.
#[derive(Args)]
struct One {
    #[arg(long = "g", value_name = "FILE")]
    flag: Option<PathBuf>,
    #[arg(value_name = "FILE")]
    file: Option<PathBuf>,
}

/// Two graphs, given positionally or with `--g1` / `--g2`.
#[derive(Args)]
struct Two {
    #[arg(long, value_name = "FILE")]
    g1: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    g2: Option<PathBuf>,
    #[arg(value_name = "FILE", num_args = 0..=2)]
    files: Vec<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a product graph and print it.
    Product {
        #[arg(long, value_enum)]
        kind: Kind,
        #[command(flatten)]
        graphs: Two,
    },
    /// Exact degeneracy with its elimination order.
    Degen {
        #[command(flatten)]
        graph: One,
    },
    /// Degeneracy bounds from factor statistics `d,Delta,s,t`.
    DegenBounds {
        #[arg(long, value_enum)]
        kind: BoundedKind,
        #[arg(long, value_name = "d,Delta,s,t")]
        stats1: String,
        #[arg(long, value_name = "d,Delta,s,t")]
        stats2: String,
        /// Also print the factor pair attaining the lower bound.
        #[arg(long)]
        witnesses: bool,
    },
    /// Decide whether a complete multipartite graph is a subgraph of a product.
    Multipartite {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        overlay: usize,
        #[command(flatten)]
        graphs: Two,
    },
    /// Decomposition constructions.
    Decompose {
        #[command(subcommand)]
        which: Decompose,
    },
    /// Exact treewidth or pathwidth.
    Width {
        #[arg(long, value_enum, default_value = "tree")]
        kind: Width,
        #[command(flatten)]
        graph: One,
    },
    /// All applicable treewidth bounds for a product, with certificates.
    Bounds {
        #[arg(long, value_enum)]
        kind: Kind,
        #[command(flatten)]
        graphs: Two,
    },
    /// Decide whether `--h` is a minor of the graph.
    Minor {
        #[arg(long, value_name = "FILE")]
        h: PathBuf,
        #[command(flatten)]
        graph: One,
    },
    /// Largest k with a daddy-longlegs W(k) minor.
    Dll {
        #[command(flatten)]
        graph: One,
    },
    /// Number of vertices on a longest path.
    Pn {
        #[command(flatten)]
        graph: One,
    },
    /// Minimum vertex cover.
    Vc {
        #[command(flatten)]
        graph: One,
    },
    /// The double cover G x K2.
    Doublecover {
        #[command(flatten)]
        graph: One,
    },
    /// Whether a product of two graph classes has bounded width.
    Classify {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, value_enum, default_value = "tree")]
        width: Width,
        /// Class flags as JSON, or the name of a canned class.
        #[arg(long)]
        c1: String,
        #[arg(long)]
        c2: String,
        /// Also compute exact widths along the canned classes' families.
        #[arg(long, value_delimiter = ',')]
        probe: Option<Vec<usize>>,
    },
    /// Run the acceptance properties over a corpus.
    Sweep {
        /// Largest order of the exhaustive part of the corpus.
        #[arg(long, default_value_t = 5)]
        max_order: usize,
        /// Use an empty corpus.
        #[arg(long, conflicts_with_all = ["max_order", "corpus"])]
        empty: bool,
        /// Use the graphs in this file (one graph6 string per line) instead.
        #[arg(long, value_name = "FILE")]
        corpus: Option<PathBuf>,
        /// Small sweep sizes.
        #[arg(long)]
        quick: bool,
        /// Only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<usize>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Inject a deliberately wrong check (`dfs-cover`).
        #[arg(long, value_name = "FAULT")]
        inject_fault: Option<String>,
    },
}

#[derive(Subcommand)]
enum Decompose {
    /// Decomposition of G1 strong G2 from a decomposition of G1.
    Lift {
        #[command(flatten)]
        graphs: Two,
        /// Decomposition of G1 as JSON; an optimal one is computed otherwise.
        #[arg(long, value_name = "FILE")]
        dec: Option<PathBuf>,
    },
    /// Decomposition of the square of G.
    Square {
        #[command(flatten)]
        graph: One,
        #[arg(long, value_name = "FILE")]
        dec: Option<PathBuf>,
    },
    /// Decomposition of G1 x G2 from a vertex cover of G1.
    Vcsub {
        #[command(flatten)]
        graphs: Two,
        /// Vertex cover of G1; a minimum one is computed otherwise.
        #[arg(long, value_delimiter = ',')]
        cover: Option<Vec<usize>>,
        /// Decomposition of G2 as JSON; an optimal one is computed otherwise.
        #[arg(long, value_name = "FILE")]
        dec: Option<PathBuf>,
    },
    /// The explicit decomposition of G(k,n) strong G(k,n).
    Gkn {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
}

enum Failure {
    Lib(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

type Res<T> = Result<T, Failure>;

struct Out {
    text: String,
    code: u8,
}

impl Out {
    fn ok(text: impl Into<String>) -> Out {
        Out { text: text.into(), code: 0 }
    }
}

struct Ctx {
    json: bool,
    format: Option<Format>,
    budget: Option<usize>,
}

impl Ctx {
    fn limit(&self, advisory: usize) -> usize {
        self.budget.unwrap_or(advisory)
    }

    fn read(&self, path: &Path) -> Res<Graph> {
        let data = if path == Path::new("-") {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
            s
        } else {
            std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
        };
        let fmt = match self.format {
            Some(Format::G6) => GraphFormat::Graph6,
            Some(Format::Edgelist) => GraphFormat::Edgelist,
            None => GraphFormat::from_path(path),
        };
        fmt.parse(&data)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
    }

    fn one(&self, a: &One) -> Res<Graph> {
        match (&a.flag, &a.file) {
            (Some(p), None) | (None, Some(p)) => self.read(p),
            (Some(_), Some(_)) => Err(Failure::Usage("give the graph either with --g or positionally".into())),
            (None, None) => Err(Failure::Usage("missing graph file".into())),
        }
    }

    fn two(&self, a: &Two) -> Res<(Graph, Graph)> {
        let mut files = a.files.iter();
        let mut next = |flag: &Option<PathBuf>, name: &str| match flag {
            Some(p) => Ok(p.clone()),
            None => files.next().cloned().ok_or_else(|| Failure::Usage(format!("missing graph file for {name}"))),
        };
        let p1 = next(&a.g1, "G1")?;
        let p2 = next(&a.g2, "G2")?;
        if files.next().is_some() {
            return Err(Failure::Usage("too many graph files".into()));
        }
        Ok((self.read(&p1)?, self.read(&p2)?))
    }

    /// JSON when requested, otherwise the plain rendering.
    fn emit(&self, v: &impl Serialize, plain: impl FnOnce() -> String) -> String {
        if self.json {
            serde_json::to_string_pretty(v).expect("serialisable")
        } else {
            plain()
        }
    }
}

fn read_dec(path: &Path) -> Res<HDecomposition> {
    let data = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let j = serde_json::from_str(&data).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(HDecomposition::from_json(&j)?)
}

fn parse_stats(s: &str) -> Res<FactorStats> {
    let v: Vec<usize> = s
        .split(',')
        .map(|x| x.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("stats must be four integers d,Delta,s,t, got {s:?}")))?;
    match v[..] {
        [d, delta, s, t] => Ok(FactorStats::new(d, delta, s, t)?),
        _ => Err(Failure::Usage(format!("stats must be four integers d,Delta,s,t, got {s:?}"))),
    }
}

fn class_flags(arg: &str) -> Res<(ClassFlags, Option<prodwidth::classify::Family>)> {
    if let Some(c) = canned_corpus().into_iter().find(|c| c.name == arg) {
        return Ok((c.flags, Some(c.family)));
    }
    let data = if Path::new(arg).exists() {
        std::fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("{arg}: {e}")))?
    } else {
        arg.to_string()
    };
    let flags = serde_json::from_str(&data).map_err(|e| {
        let names: Vec<String> = canned_corpus().into_iter().map(|c| c.name).collect();
        Failure::Usage(format!("{arg:?} is neither class flags JSON nor one of {names:?}: {e}"))
    })?;
    Ok((flags, None))
}

fn decomposition_out(ctx: &Ctx, target: &Graph, d: &HDecomposition, extra: Option<(&str, Value)>) -> Res<Out> {
    let violations = validate_decomposition(target, d);
    if !violations.is_empty() {
        return Err(Error::Certificate(format!("constructed decomposition is invalid: {violations:?}")).into());
    }
    let mut v = json!({
        "width": d.width(),
        "valid": true,
        "decomposition": d.to_json(),
    });
    if let Some((k, x)) = extra {
        v[k] = x;
    }
    Ok(Out::ok(ctx.emit(&v, || {
        format!("width {} ({} bags, valid)", d.width(), d.bags.len())
    })))
}

fn run(cli: Cli) -> Res<Out> {
    let ctx = Ctx {
        json: cli.json,
        format: cli.format,
        budget: cli.budget.map(|b| b as usize),
    };
    match cli.command {
        Command::Product { kind, graphs } => {
            let (g1, g2) = ctx.two(&graphs)?;
            let p = product(&g1, &g2, kind.into())?.base;
            let v = json!({ "n": p.n(), "m": p.m(), "graph6": to_graph6(&p) });
            Ok(Out::ok(ctx.emit(&v, || to_graph6(&p))))
        }
        Command::Degen { graph } => {
            let g = ctx.one(&graph)?;
            let prof = degeneracy_exact(&g);
            Ok(Out::ok(ctx.emit(&prof, || prof.d.to_string())))
        }
        Command::DegenBounds {
            kind,
            stats1,
            stats2,
            witnesses,
        } => {
            let (f1, f2) = (parse_stats(&stats1)?, parse_stats(&stats2)?);
            let (b, w) = match kind {
                BoundedKind::Direct => (bounds_direct(&f1, &f2)?, witness_direct_lower(&f1, &f2)?),
                BoundedKind::Strong => (bounds_strong(&f1, &f2)?, witness_strong_lower(&f1, &f2)?),
            };
            let mut v = json!({ "lower": b.lower, "upper": b.upper });
            if witnesses {
                v["witnesses"] = json!([to_graph6(&w.0), to_graph6(&w.1)]);
            }
            Ok(Out::ok(ctx.emit(&v, || {
                let mut s = format!("lower {} upper {}", b.lower, b.upper);
                if witnesses {
                    s += &format!("\n{}\n{}", to_graph6(&w.0), to_graph6(&w.1));
                }
                s
            })))
        }
        Command::Multipartite {
            kind,
            parts,
            overlay,
            graphs,
        } => {
            let (g1, g2) = ctx.two(&graphs)?;
            let p = MultipartitePattern::new(parts, overlay)?;
            let cert = match kind {
                Kind::Cartesian => decide_cartesian(&g1, &g2, &p)?.map(|c| serde_json::to_value(c)),
                Kind::Direct => decide_direct(&g1, &g2, &p)?.map(|c| serde_json::to_value(c)),
                Kind::Strong => decide_strong(&g1, &g2, &p)?.map(|c| serde_json::to_value(c)),
            }
            .transpose()
            .expect("certificates serialise");
            let present = cert.is_some();
            let v = json!({ "present": present, "certificate": cert });
            Ok(Out {
                text: ctx.emit(&v, || if present { "present" } else { "absent" }.into()),
                code: if present { 0 } else { 1 },
            })
        }
        Command::Decompose { which } => match which {
            Decompose::Lift { graphs, dec } => {
                let (g1, g2) = ctx.two(&graphs)?;
                let d1 = match dec {
                    Some(p) => read_dec(&p)?,
                    None => exact_width_with_limit(&g1, WidthKind::Tree, ctx.limit(WidthKind::Tree.limit()))?.decomposition,
                };
                let d = lift_product(&g1, &d1, &g2)?;
                let target = product(&g1, &g2, ProductKind::Strong)?.base;
                decomposition_out(&ctx, &target, &d, None)
            }
            Decompose::Square { graph, dec } => {
                let g = ctx.one(&graph)?;
                let d0 = match dec {
                    Some(p) => read_dec(&p)?,
                    None => exact_width_with_limit(&g, WidthKind::Tree, ctx.limit(WidthKind::Tree.limit()))?.decomposition,
                };
                let d = lift_square(&g, &d0)?;
                decomposition_out(&ctx, &prodwidth::graph::square(&g), &d, None)
            }
            Decompose::Vcsub { graphs, cover, dec } => {
                let (g1, g2) = ctx.two(&graphs)?;
                let cover = match cover {
                    Some(c) => c,
                    None => vertex_cover(&g1)?,
                };
                let d2 = match dec {
                    Some(p) => read_dec(&p)?,
                    None => exact_width_with_limit(&g2, WidthKind::Tree, ctx.limit(WidthKind::Tree.limit()))?.decomposition,
                };
                let d = vc_subdivision_decomp(&g1, &cover, &g2, &d2)?;
                let target = product(&g1, &g2, ProductKind::Direct)?.base;
                decomposition_out(&ctx, &target, &d, Some(("cover", json!(cover))))
            }
            Decompose::Gkn { k, n } => {
                let (g, d) = gkn_decomposition(k, n)?;
                decomposition_out(&ctx, &g, &d, Some(("graph6", json!(to_graph6(&g)))))
            }
        },
        Command::Width { kind, graph } => {
            let g = ctx.one(&graph)?;
            let kind: WidthKind = kind.into();
            let r = exact_width_with_limit(&g, kind, ctx.limit(kind.limit()))?;
            let v = json!({ "kind": kind, "value": r.value, "decomposition": r.decomposition.to_json() });
            Ok(Out::ok(ctx.emit(&v, || r.value.to_string())))
        }
        Command::Bounds { kind, graphs } => {
            let (g1, g2) = ctx.two(&graphs)?;
            let r = bound_engine(&g1, &g2, kind.into())?;
            Ok(Out::ok(ctx.emit(&r, || {
                let mut lines: Vec<String> = r
                    .entries
                    .iter()
                    .map(|e| {
                        let k = match e.kind {
                            BoundKind::Upper => "upper",
                            BoundKind::Lower => "lower",
                        };
                        let sw = if e.swapped { " (factors swapped)" } else { "" };
                        format!("{k} {} {} = {}{sw}", e.name, e.anchor, e.value)
                    })
                    .collect();
                if let Some(x) = r.exact {
                    lines.push(format!("exact {x}"));
                }
                lines.join("\n")
            })))
        }
        Command::Minor { h, graph } => {
            let g = ctx.one(&graph)?;
            let h = ctx.read(&h)?;
            let m = find_minor_with_limit(&g, &h, ctx.limit(MINOR_G_LIMIT))?;
            let present = m.is_some();
            let v = json!({ "present": present, "model": m });
            Ok(Out {
                text: ctx.emit(&v, || if present { "present" } else { "absent" }.into()),
                code: if present { 0 } else { 1 },
            })
        }
        Command::Dll { graph } => {
            let g = ctx.one(&graph)?;
            let (k, model) = daddy_longlegs(&g)?;
            let v = json!({ "value": k, "model": model });
            Ok(Out::ok(ctx.emit(&v, || k.to_string())))
        }
        Command::Pn { graph } => {
            let g = ctx.one(&graph)?;
            let p = longest_path(&g)?;
            let v = json!({ "value": p.len(), "path": p });
            Ok(Out::ok(ctx.emit(&v, || p.len().to_string())))
        }
        Command::Vc { graph } => {
            let g = ctx.one(&graph)?;
            let c = vertex_cover(&g)?;
            let v = json!({ "value": c.len(), "cover": c });
            Ok(Out::ok(ctx.emit(&v, || c.len().to_string())))
        }
        Command::Doublecover { graph } => {
            let g = ctx.one(&graph)?;
            let d = double_cover(&g).base;
            let v = json!({ "n": d.n(), "m": d.m(), "graph6": to_graph6(&d) });
            Ok(Out::ok(ctx.emit(&v, || to_graph6(&d))))
        }
        Command::Classify {
            kind,
            width,
            c1,
            c2,
            probe,
        } => {
            let (f1, fam1) = class_flags(&c1)?;
            let (f2, fam2) = class_flags(&c2)?;
            let verdict = classify(kind.into(), width.into(), &f1, &f2)?;
            let table = match probe {
                None => None,
                Some(sizes) => {
                    let (Some(a), Some(b)) = (fam1, fam2) else {
                        return Err(Failure::Usage("--probe needs two canned classes".into()));
                    };
                    let t = empirical_probe_with_limit(kind.into(), width.into(), &a, &b, &sizes, ctx.limit(24))?;
                    Some(t)
                }
            };
            let v = json!({ "verdict": verdict, "probe": table });
            Ok(Out::ok(ctx.emit(&v, || {
                let mut s = format!(
                    "{}: {}",
                    if verdict.bounded { "bounded" } else { "unbounded" },
                    verdict.rule
                );
                if let Some(t) = &table {
                    s += &format!("\nwidths {:?} at sizes {:?}", t.widths, t.sizes);
                    if t.contradicts(&verdict) {
                        s += "\nprobe contradicts the verdict";
                    }
                }
                s
            })))
        }
        Command::Sweep {
            max_order,
            empty,
            corpus,
            quick,
            only,
            seed,
            inject_fault,
        } => {
            let corpus = if empty {
                Corpus::empty()
            } else if let Some(p) = corpus {
                let data = std::fs::read_to_string(&p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
                let gs = data
                    .lines()
                    .filter(|l| !l.trim().is_empty())
                    .map(|l| parse_graph6(l.trim()))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
                Corpus::from_graphs(gs)
            } else {
                Corpus::standard(max_order)
            };
            let fault = inject_fault
                .map(|f| f.parse::<Fault>())
                .transpose()
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let config = SweepConfig {
                scale: if quick { Scale::quick() } else { Scale::default() },
                seed,
                fault,
            };
            let report = run_sweep(&corpus, &config, only.as_deref());
            if let Some((check, x)) = report.first_counterexample() {
                eprintln!("counterexample for {}: {} ({})", check.name, x.graphs.join(" "), x.detail);
            }
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            let text = if ctx.json {
                report.to_json()
            } else {
                report
                    .criteria
                    .iter()
                    .map(|c| {
                        let cases: usize = c.checks.iter().map(|x| x.cases).sum();
                        let status = if c.passed { "PASS" } else { "FAIL" };
                        format!("{status} {:>2}. {} ({cases} cases)", c.id, c.title)
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            Ok(Out {
                text,
                code: if report.passed { 0 } else { 1 },
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            if !out.text.is_empty() {
                let _ = writeln!(std::io::stdout(), "{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("prodwidth: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("prodwidth: {e}");
            ExitCode::from(match e {
                Error::Budget { .. } | Error::Size { .. } => 3,
                _ => 2,
            })
        }
    }
}
