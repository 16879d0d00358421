//! Boundedness verdicts for products of declared graph classes, and an
//! empirical probe that can only falsify them.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decomp::{exact_width_with_limit, WidthKind};
use crate::error::{Error, Result};
use crate::graph::{generate, product, FamilySpec, Graph, GraphBuilder, ProductKind};
use crate::lowerbounds::moore_bound;

/// Whether a parameter is bounded on the class, with a bound when known.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "ParamRepr")]
pub struct Param {
    pub bounded: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<usize>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ParamRepr {
    Flag(bool),
    Value(usize),
    Full {
        bounded: bool,
        #[serde(default)]
        witness: Option<usize>,
    },
}

impl From<ParamRepr> for Param {
    fn from(r: ParamRepr) -> Param {
        match r {
            ParamRepr::Flag(bounded) => Param { bounded, witness: None },
            ParamRepr::Value(w) => Param::at_most(w),
            ParamRepr::Full { bounded, witness } => Param { bounded, witness },
        }
    }
}

impl Param {
    pub const UNBOUNDED: Param = Param {
        bounded: false,
        witness: None,
    };

    pub fn at_most(w: usize) -> Param {
        Param {
            bounded: true,
            witness: Some(w),
        }
    }
}

/// Declared parameters of a graph class. Absent parameters count as
/// unbounded. `component_order` is the largest component order and
/// `component_tau` the largest vertex cover number of a component.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ClassFlags {
    pub tw: Param,
    pub pw: Param,
    pub max_degree: Param,
    pub component_order: Param,
    pub component_tau: Param,
    pub dll: Param,
    pub pn: Param,
    pub monotone: bool,
    pub contains_k2: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub bounded: bool,
    pub rule: String,
    pub derivation: Vec<String>,
}

fn combine(inputs: &[Param], f: impl Fn(&[usize]) -> Option<usize>) -> Param {
    let witness = inputs.iter().map(|p| p.witness).collect::<Option<Vec<_>>>().and_then(|w| f(&w));
    Param { bounded: true, witness }
}

impl ClassFlags {
    /// Applies the implications between parameters until nothing changes.
    /// Each newly bounded parameter adds one line to `log`.
    pub fn close(&self, label: &str, log: &mut Vec<String>) -> ClassFlags {
        let mut c = self.clone();
        loop {
            let before = c.clone();
            let mut derive = |target: &mut Param, from: &[Param], why: &str, f: &dyn Fn(&[usize]) -> Option<usize>| {
                if !target.bounded && from.iter().all(|p| p.bounded) {
                    *target = combine(from, f);
                    let w = target.witness.map(|w| format!(" (<= {w})")).unwrap_or_default();
                    log.push(format!("{label}: {why}{w}"));
                }
            };
            let (pw, ord, tau, deg, pn, dll) = (c.pw, c.component_order, c.component_tau, c.max_degree, c.pn, c.dll);
            derive(&mut c.tw, &[pw], "tw <= pw", &|w| Some(w[0]));
            derive(&mut c.component_tau, &[ord], "component tau <= component order", &|w| Some(w[0]));
            derive(&mut c.pn, &[ord], "pn <= component order", &|w| Some(w[0]));
            derive(&mut c.max_degree, &[ord], "max degree < component order", &|w| Some(w[0].saturating_sub(1)));
            derive(&mut c.pw, &[ord], "pw < component order", &|w| Some(w[0].saturating_sub(1)));
            derive(&mut c.tw, &[ord], "tw < component order", &|w| Some(w[0].saturating_sub(1)));
            derive(
                &mut c.component_order,
                &[deg, pn],
                "bounded degree and bounded diameter bound the component order",
                &|w| match w[0] {
                    0 | 1 => Some(2),
                    d => moore_bound(d, w[1].saturating_sub(1)).ok().map(|m| m as usize),
                },
            );
            derive(
                &mut c.component_tau,
                &[dll, pn],
                "tau <= ceil((dll + 1) pn / 2) on each component",
                &|w| Some(((w[0] + 1) * w[1]).div_ceil(2)),
            );
            derive(&mut c.pw, &[tau], "pw <= component tau", &|w| Some(w[0]));
            derive(&mut c.tw, &[tau], "tw <= component tau", &|w| Some(w[0]));
            derive(&mut c.pn, &[tau], "pn <= 2 component tau + 1", &|w| Some(2 * w[0] + 1));
            if c == before {
                return c;
            }
        }
    }

    fn width(&self, width: WidthKind) -> Param {
        match width {
            WidthKind::Tree => self.tw,
            WidthKind::Path => self.pw,
        }
    }
}

/// Applies the product characterisation for `kind` and `width` to two
/// monotone classes; direct products also need both classes to contain `K2`.
pub fn classify(kind: ProductKind, width: WidthKind, c1: &ClassFlags, c2: &ClassFlags) -> Result<Verdict> {
    if !c1.monotone || !c2.monotone {
        return Err(Error::Precondition("characterisations need monotone classes".into()));
    }
    if kind == ProductKind::Direct && !(c1.contains_k2 && c2.contains_k2) {
        return Err(Error::Precondition("direct-product characterisations need both classes to contain K2".into()));
    }
    let mut derivation = Vec::new();
    let a = c1.close("G1", &mut derivation);
    let b = c2.close("G2", &mut derivation);
    let w = match width {
        WidthKind::Tree => "tw",
        WidthKind::Path => "pw",
    };
    let both = a.width(width).bounded && b.width(width).bounded;
    let (bounded, rule) = if !both {
        let which = if a.width(width).bounded { "G2" } else { "G1" };
        (false, format!("{w}({which}) is unbounded"))
    } else if a.component_order.bounded || b.component_order.bounded {
        let which = if a.component_order.bounded { "G1" } else { "G2" };
        (true, format!("{w}(G1), {w}(G2) bounded and component order of {which} bounded"))
    } else if kind != ProductKind::Direct {
        (false, format!("{w} bounded on both but component order unbounded on both"))
    } else if a.component_tau.bounded && b.max_degree.bounded {
        (true, format!("{w}(G1), {w}(G2) bounded, component tau of G1 and max degree of G2 bounded"))
    } else if b.component_tau.bounded && a.max_degree.bounded {
        (true, format!("{w}(G1), {w}(G2) bounded, component tau of G2 and max degree of G1 bounded"))
    } else {
        (false, format!("{w} bounded on both but no degree and component-cover pairing holds"))
    };
    Ok(Verdict {
        bounded,
        rule,
        derivation,
    })
}

/// A size-indexed graph sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Path,
    Cycle,
    Star,
    Complete,
    /// The `s × s` grid.
    Grid,
    DaddyLonglegs,
    /// The complete binary tree with `s` levels.
    BinaryTree,
    /// The same graph at every size.
    Fixed(FamilySpec),
}

impl Family {
    pub fn graph(&self, s: usize) -> Result<Graph> {
        let spec = match self {
            Family::Path => FamilySpec::Path(s),
            Family::Cycle => FamilySpec::Cycle(s),
            Family::Star => FamilySpec::Star(s),
            Family::Complete => FamilySpec::Complete(s),
            Family::Grid => FamilySpec::Grid(s, s),
            Family::DaddyLonglegs => FamilySpec::DaddyLonglegs(s),
            Family::Fixed(spec) => spec.clone(),
            Family::BinaryTree => {
                let n = (1usize << s.min(20)) - 1;
                let mut b = GraphBuilder::new(n);
                for v in 1..n {
                    b.add_edge((v - 1) / 2, v)?;
                }
                return Ok(b.build());
            }
        };
        generate(&spec)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeTable {
    pub sizes: Vec<usize>,
    pub orders: Vec<usize>,
    pub widths: Vec<usize>,
    /// The widths strictly increase over at least three sizes.
    pub growth: bool,
}

impl ProbeTable {
    /// Growth contradicts a bounded verdict; nothing contradicts an
    /// unbounded one.
    pub fn contradicts(&self, v: &Verdict) -> bool {
        v.bounded && self.growth
    }
}

pub fn empirical_probe(
    kind: ProductKind,
    width: WidthKind,
    f1: &Family,
    f2: &Family,
    sizes: &[usize],
) -> Result<ProbeTable> {
    empirical_probe_with_limit(kind, width, f1, f2, sizes, width.limit())
}

/// Exact widths of `f1(s) ∘ f2(s)` for each size, computed in parallel.
pub fn empirical_probe_with_limit(
    kind: ProductKind,
    width: WidthKind,
    f1: &Family,
    f2: &Family,
    sizes: &[usize],
    limit: usize,
) -> Result<ProbeTable> {
    let rows = sizes
        .par_iter()
        .map(|&s| {
            let g = product(&f1.graph(s)?, &f2.graph(s)?, kind)?.base;
            Ok((g.n(), exact_width_with_limit(&g, width, limit)?.value))
        })
        .collect::<Result<Vec<_>>>()?;
    let widths: Vec<usize> = rows.iter().map(|r| r.1).collect();
    Ok(ProbeTable {
        sizes: sizes.to_vec(),
        orders: rows.iter().map(|r| r.0).collect(),
        growth: widths.len() >= 3 && widths.windows(2).all(|w| w[0] < w[1]),
        widths,
    })
}

/// A named class with declared flags and a representative sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CannedClass {
    pub name: String,
    pub flags: ClassFlags,
    pub family: Family,
}

fn declared(f: impl FnOnce(&mut ClassFlags)) -> ClassFlags {
    let mut c = ClassFlags {
        monotone: true,
        contains_k2: true,
        ..ClassFlags::default()
    };
    f(&mut c);
    c
}

/// Subgraph-closed versions of paths, stars, trees, trees of maximum
/// degree 3, cliques and grids.
pub fn canned_corpus() -> Vec<CannedClass> {
    let class = |name: &str, family, flags| CannedClass {
        name: name.into(),
        flags,
        family,
    };
    vec![
        class(
            "paths",
            Family::Path,
            declared(|c| {
                c.tw = Param::at_most(1);
                c.pw = Param::at_most(1);
                c.max_degree = Param::at_most(2);
                c.dll = Param::at_most(1);
            }),
        ),
        class(
            "stars",
            Family::Star,
            declared(|c| {
                c.tw = Param::at_most(1);
                c.pw = Param::at_most(1);
                c.component_tau = Param::at_most(1);
                c.dll = Param::at_most(1);
                c.pn = Param::at_most(3);
            }),
        ),
        class("trees", Family::DaddyLonglegs, declared(|c| c.tw = Param::at_most(1))),
        class(
            "bounded-degree trees",
            Family::BinaryTree,
            declared(|c| {
                c.tw = Param::at_most(1);
                c.max_degree = Param::at_most(3);
            }),
        ),
        class("cliques", Family::Complete, declared(|_| {})),
        class("grids", Family::Grid, declared(|c| c.max_degree = Param::at_most(4))),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flags(f: impl FnOnce(&mut ClassFlags)) -> ClassFlags {
        declared(f)
    }

    #[test]
    fn spec_examples() {
        let a = flags(|c| {
            c.tw = Param::at_most(2);
            c.component_order = Param::at_most(5);
        });
        let b = flags(|c| c.tw = Param::at_most(3));
        let v = classify(ProductKind::Strong, WidthKind::Tree, &a, &b).unwrap();
        assert!(v.bounded);
        assert!(v.rule.contains("component order of G1"));

        let paths = flags(|c| {
            c.tw = Param::at_most(1);
            c.pw = Param::at_most(1);
            c.max_degree = Param::at_most(2);
        });
        assert!(!classify(ProductKind::Direct, WidthKind::Tree, &paths, &paths).unwrap().bounded);

        let a = flags(|c| {
            c.tw = Param::at_most(1);
            c.component_tau = Param::at_most(1);
        });
        let b = flags(|c| {
            c.tw = Param::at_most(1);
            c.max_degree = Param::at_most(2);
        });
        let v = classify(ProductKind::Direct, WidthKind::Tree, &a, &b).unwrap();
        assert!(v.bounded);
        assert!(v.rule.contains("component tau of G1 and max degree of G2"));
    }

    #[test]
    fn inapplicable() {
        let mut a = flags(|_| {});
        a.monotone = false;
        assert!(classify(ProductKind::Strong, WidthKind::Tree, &a, &flags(|_| {})).is_err());
        let mut b = flags(|_| {});
        b.contains_k2 = false;
        assert!(classify(ProductKind::Direct, WidthKind::Path, &flags(|_| {}), &b).is_err());
        assert!(classify(ProductKind::Cartesian, WidthKind::Path, &flags(|_| {}), &b).is_ok());
    }

    #[test]
    fn closure_steps() {
        let mut log = Vec::new();
        let c = flags(|c| {
            c.dll = Param::at_most(2);
            c.pn = Param::at_most(4);
            c.max_degree = Param::at_most(3);
        })
        .close("G", &mut log);
        assert_eq!(c.component_tau, Param::at_most(6));
        assert_eq!(c.component_order, Param::at_most(moore_bound(3, 3).unwrap() as usize));
        assert!(c.tw.bounded && c.pw.bounded);
        assert!(log.iter().any(|l| l.contains("ceil((dll + 1) pn / 2)")));
        let mut log = Vec::new();
        let c = flags(|c| c.pw = Param { bounded: true, witness: None }).close("G", &mut log);
        assert_eq!(c.tw, Param { bounded: true, witness: None });
        assert_eq!(log.len(), 1);
    }

    #[test]
    fn symmetric_on_corpus() {
        let corpus = canned_corpus();
        for a in &corpus {
            for b in &corpus {
                for kind in ProductKind::ALL {
                    for width in [WidthKind::Tree, WidthKind::Path] {
                        let x = classify(kind, width, &a.flags, &b.flags).unwrap();
                        let y = classify(kind, width, &b.flags, &a.flags).unwrap();
                        assert_eq!(x.bounded, y.bounded);
                    }
                }
            }
        }
    }

    #[test]
    fn flags_json() {
        let c: ClassFlags =
            serde_json::from_str(r#"{"tw": true, "max_degree": 3, "pn": {"bounded": true}, "monotone": true}"#).unwrap();
        assert_eq!(c.tw, Param { bounded: true, witness: None });
        assert_eq!(c.max_degree, Param::at_most(3));
        assert!(c.pn.bounded && !c.pw.bounded && !c.contains_k2);
    }

    #[test]
    fn probe_examples() {
        let t = empirical_probe_with_limit(
            ProductKind::Direct,
            WidthKind::Tree,
            &Family::Star,
            &Family::Star,
            &[1, 2, 3, 4],
            25,
        )
        .unwrap();
        assert_eq!(t.widths, vec![1, 2, 3, 4]);
        assert!(t.growth);
        let k3 = Family::Fixed(FamilySpec::Complete(3));
        let t = empirical_probe(ProductKind::Strong, WidthKind::Tree, &Family::Path, &k3, &[2, 3, 4]).unwrap();
        assert_eq!(t.widths, vec![5, 5, 5]);
        assert!(!t.growth);
        let t = empirical_probe(ProductKind::Cartesian, WidthKind::Tree, &Family::Path, &Family::Path, &[2, 3]).unwrap();
        assert_eq!(t.widths, vec![2, 3]);
        assert!(!t.growth);
        assert!(empirical_probe(ProductKind::Cartesian, WidthKind::Tree, &Family::Path, &Family::Path, &[4]).is_err());
    }
}
