use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::bits::{full, to_vec};
use crate::error::{budget, Error, Result};
use crate::graph::{product, Graph, ProductKind};

/// Advisory order limit for the exact separation search.
pub const SEPARATION_LIMIT: usize = 16;

/// Rationals as `"p/q"` strings (or `"p"` for integers).
pub(crate) mod ratio_str {
    use num_rational::Rational64;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational64, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(|_| D::Error::custom(format!("bad rational {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub a: Vec<usize>,
    pub s: Vec<usize>,
    pub b: Vec<usize>,
    #[serde(with = "ratio_str")]
    pub epsilon: Rational64,
}

fn check_epsilon(name: &str, e: Rational64) -> Result<()> {
    if e < Rational64::new(2, 3) || e >= Rational64::from_integer(1) {
        return Err(Error::Parameter(format!("{name} = {e} is outside [2/3, 1)")));
    }
    Ok(())
}

/// Whether `size <= epsilon * n`.
fn fits(size: usize, epsilon: Rational64, n: usize) -> bool {
    Rational64::from_integer(size as i64) <= epsilon * Rational64::from_integer(n as i64)
}

impl Separation {
    pub fn order(&self) -> usize {
        self.s.len()
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.n();
        let mut side = vec![None; n];
        for (tag, part) in [(0u8, &self.a), (1, &self.s), (2, &self.b)] {
            for &v in part.iter() {
                if v >= n {
                    return Err(Error::Certificate(format!("vertex {v} out of range")));
                }
                if side[v].replace(tag).is_some() {
                    return Err(Error::Certificate(format!("vertex {v} is in two parts")));
                }
            }
        }
        if let Some(v) = side.iter().position(Option::is_none) {
            return Err(Error::Certificate(format!("vertex {v} is in no part")));
        }
        for (u, v) in g.edges() {
            if side[u].zip(side[v]).is_some_and(|(x, y)| x + y == 2 && x != 1) {
                return Err(Error::Certificate(format!("edge {u}-{v} joins A and B")));
            }
        }
        for (name, part) in [("A", &self.a), ("B", &self.b)] {
            if part.is_empty() || !fits(part.len(), self.epsilon, n) {
                return Err(Error::Certificate(format!("|{name}| = {} is out of range", part.len())));
            }
        }
        Ok(())
    }
}

/// A minimum-order `epsilon`-separation, or `None` when the graph has none
/// (complete graphs and graphs on fewer than two vertices). Separators are
/// tried by increasing size, then increasing mask.
pub fn min_separation_order(g: &Graph, epsilon: Rational64) -> Result<Option<Separation>> {
    budget("min_separation_order", g.n(), SEPARATION_LIMIT)?;
    check_epsilon("epsilon", epsilon)?;
    g.require_masks("separation search")?;
    let n = g.n();
    if n < 2 {
        return Ok(None);
    }
    let all = full(n);
    for size in 0..=n - 2 {
        for s in (0..=all).filter(|m: &u64| m.count_ones() as usize == size) {
            if let Some(a) = split(g, all & !s, epsilon, n) {
                return Ok(Some(Separation {
                    a: to_vec(a),
                    s: to_vec(s),
                    b: to_vec(all & !s & !a),
                    epsilon,
                }));
            }
        }
    }
    Ok(None)
}

/// A union `A` of components of `g[rest]` with both `A` and `rest - A`
/// non-empty and within the size cap.
fn split(g: &Graph, rest: u64, epsilon: Rational64, n: usize) -> Option<u64> {
    let mut comps = Vec::new();
    let mut left = rest;
    while left != 0 {
        let c = g.component_mask(left.trailing_zeros() as usize, left);
        comps.push(c);
        left &= !c;
    }
    if comps.len() < 2 {
        return None;
    }
    let total = rest.count_ones() as usize;
    // reach[s] is the mask of components first reaching size s.
    let mut reach: Vec<Option<u64>> = vec![None; total + 1];
    reach[0] = Some(0);
    for &c in &comps {
        let w = c.count_ones() as usize;
        for s in (w..=total).rev() {
            if reach[s].is_none() {
                if let Some(m) = reach[s - w] {
                    reach[s] = Some(m | c);
                }
            }
        }
    }
    (1..total)
        .filter(|&s| fits(s, epsilon, n) && fits(total - s, epsilon, n))
        .find_map(|s| reach[s])
}

/// One named hypothesis and whether it holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationReport {
    pub hypotheses: Vec<Hypothesis>,
    pub hypotheses_hold: bool,
    pub k: usize,
    #[serde(with = "ratio_str")]
    pub bound: Rational64,
    /// Minimum `epsilon`-separation order of `G □ H`; `None` inside means the
    /// product has no separation, `None` outside means it was not computed.
    pub measured: Option<Option<usize>>,
    pub holds: Option<bool>,
    pub violation: bool,
}

/// Checks the cartesian separation lower bound on one pair. With `k = None`
/// the largest `k` meeting both the separation and the order hypotheses is
/// used. The product side is computed whenever it is within budget, and
/// asserted only when all hypotheses hold.
pub fn verify_separation_lemma(
    g: &Graph,
    h: &Graph,
    epsilon: Rational64,
    beta: Rational64,
    k: Option<usize>,
) -> Result<SeparationReport> {
    let (m, n) = (g.n(), h.n());
    let ranges = check_epsilon("epsilon", epsilon).is_ok() && check_epsilon("beta", beta).is_ok();
    let g_order = if ranges && g.n() <= SEPARATION_LIMIT {
        Some(min_separation_order(g, beta)?.map(|s| s.order()))
    } else {
        None
    };
    let k = k.unwrap_or_else(|| {
        let cap = m.checked_div(n).unwrap_or(0);
        match g_order {
            Some(Some(o)) => o.min(cap),
            _ => cap,
        }
    });
    let one = Rational64::from_integer(1);
    let mut hyp = vec![
        ("epsilon and beta in [2/3, 1)", ranges),
        ("beta > epsilon", beta > epsilon),
        ("G connected", m > 0 && g.is_connected()),
        ("H connected", n > 0 && h.is_connected()),
        ("m >= k n", m >= k * n),
        (
            "n >= 1/(1 - beta)",
            ranges && Rational64::from_integer(n as i64) * (one - beta) >= one,
        ),
    ];
    hyp.push((
        "every beta-separation of G has order >= k",
        matches!(g_order, Some(None)) || matches!(g_order, Some(Some(o)) if o >= k),
    ));
    let hypotheses_hold = hyp.iter().all(|h| h.1);
    let bound = if epsilon < beta && beta != Rational64::from_integer(0) {
        (one - epsilon / beta) * Rational64::from_integer((k * n) as i64)
    } else {
        Rational64::from_integer(0)
    };
    let measured = if ranges && m * n <= SEPARATION_LIMIT {
        let p = product(g, h, ProductKind::Cartesian)?.base;
        Some(min_separation_order(&p, epsilon)?.map(|s| s.order()))
    } else if hypotheses_hold {
        return Err(Error::Budget {
            op: "verify_separation_lemma",
            size: m * n,
            limit: SEPARATION_LIMIT,
        });
    } else {
        None
    };
    let holds = measured.map(|o| o.map_or(true, |o| Rational64::from_integer(o as i64) >= bound));
    Ok(SeparationReport {
        hypotheses: hyp
            .into_iter()
            .map(|(name, holds)| Hypothesis {
                name: name.into(),
                holds,
            })
            .collect(),
        hypotheses_hold,
        k,
        bound,
        measured,
        violation: hypotheses_hold && holds == Some(false),
        holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "formula", rename_all = "snake_case")]
pub enum Formula {
    /// Two `k`-connected factors with at least `n` vertices each.
    Connected { k: usize, n: usize },
    Separation {
        #[serde(with = "ratio_str")]
        epsilon: Rational64,
        #[serde(with = "ratio_str")]
        beta: Rational64,
        k: usize,
        n: usize,
        m: usize,
    },
    /// Order bound for maximum degree `delta` and diameter `diameter`.
    Moore { delta: usize, diameter: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaValue {
    pub name: String,
    #[serde(with = "ratio_str")]
    pub value: Rational64,
}

pub fn moore_bound(delta: usize, diameter: usize) -> Result<u64> {
    let overflow = || Error::Parameter(format!("Moore bound overflows for delta = {delta}, diameter = {diameter}"));
    match delta {
        0 | 1 => Err(Error::Precondition("Moore bound needs maximum degree > 1".into())),
        2 => Ok(2 * diameter as u64 + 1),
        _ => {
            let d = delta as u64;
            let exp = u32::try_from(diameter).map_err(|_| overflow())?;
            let pow = (d - 1).checked_pow(exp).ok_or_else(overflow)?;
            let geo = (pow - 1) / (d - 2);
            d.checked_mul(geo).and_then(|x| x.checked_add(1)).ok_or_else(overflow)
        }
    }
}

pub fn formula_lower_bounds(formulas: &[Formula]) -> Result<Vec<FormulaValue>> {
    let int = |x: i64| Rational64::from_integer(x);
    formulas
        .iter()
        .map(|f| match *f {
            Formula::Connected { k, n } => {
                if k == 0 {
                    return Err(Error::Precondition("connectivity k must be at least 1".into()));
                }
                let (k, n) = (k as i64, n as i64);
                Ok(FormulaValue {
                    name: "connected".into(),
                    value: int(k * (n - 2 * k + 2) - 1),
                })
            }
            Formula::Separation { epsilon, beta, k, n, m } => {
                check_epsilon("epsilon", epsilon).map_err(|e| Error::Precondition(e.to_string()))?;
                check_epsilon("beta", beta).map_err(|e| Error::Precondition(e.to_string()))?;
                if beta <= epsilon {
                    return Err(Error::Precondition(format!("beta = {beta} must exceed epsilon = {epsilon}")));
                }
                if k == 0 || n == 0 || m == 0 {
                    return Err(Error::Precondition("k, n and m must be at least 1".into()));
                }
                if m < k * n {
                    return Err(Error::Precondition(format!("m = {m} is below k n = {}", k * n)));
                }
                if int(n as i64) * (int(1) - beta) < int(1) {
                    return Err(Error::Precondition(format!("n = {n} is below 1/(1 - beta)")));
                }
                Ok(FormulaValue {
                    name: "separation".into(),
                    value: (int(1) - epsilon / beta) * int((k * n) as i64) - int(1),
                })
            }
            Formula::Moore { delta, diameter } => Ok(FormulaValue {
                name: "moore".into(),
                value: int(moore_bound(delta, diameter)? as i64),
            }),
        })
        .collect()
}
