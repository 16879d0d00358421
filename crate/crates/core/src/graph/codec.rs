use std::path::Path;

use super::{Graph, GraphBuilder};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    Edgelist,
}

impl GraphFormat {
    /// `.g6` / `.graph6` select graph6; anything else is an edge list.
    pub fn from_path(p: &Path) -> GraphFormat {
        match p.extension().and_then(|e| e.to_str()) {
            Some("g6") | Some("graph6") => GraphFormat::Graph6,
            _ => GraphFormat::Edgelist,
        }
    }

    pub fn parse(self, data: &str) -> Result<Graph> {
        match self {
            GraphFormat::Graph6 => parse_graph6(data),
            GraphFormat::Edgelist => parse_edgelist(data),
        }
    }

    pub fn write(self, g: &Graph) -> String {
        match self {
            GraphFormat::Graph6 => to_graph6(g),
            GraphFormat::Edgelist => to_edgelist(g),
        }
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Decodes the first non-empty line of graph6 data.
pub fn parse_graph6(data: &str) -> Result<Graph> {
    let (lineno, line) = data
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .find(|(_, l)| !l.is_empty())
        .ok_or_else(|| perr(1, "empty graph6 input"))?;
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(perr(lineno, format!("byte {b} outside the graph6 range")));
    }
    let vals: Vec<u32> = bytes.iter().map(|&b| (b - 63) as u32).collect();
    let (n, body) = match vals.first() {
        None => return Err(perr(lineno, "missing order header")),
        Some(&v) if v < 63 => (v as usize, &vals[1..]),
        Some(_) => {
            if vals.len() >= 8 && vals[1] == 63 {
                let n = vals[2..8].iter().fold(0usize, |a, &v| a << 6 | v as usize);
                (n, &vals[8..])
            } else if vals.len() >= 4 {
                let n = vals[1..4].iter().fold(0usize, |a, &v| a << 6 | v as usize);
                (n, &vals[4..])
            } else {
                return Err(perr(lineno, "truncated order header"));
            }
        }
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    if body.len() != need {
        return Err(perr(
            lineno,
            format!("expected {need} data bytes for {n} vertices, found {}", body.len()),
        ));
    }
    let mut b = GraphBuilder::new(n);
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if body[k / 6] >> (5 - k % 6) & 1 == 1 {
                b.add_edge(u, v)?;
            }
            k += 1;
        }
    }
    Ok(b.build())
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut vals: Vec<u8> = Vec::new();
    if n < 63 {
        vals.push(n as u8);
    } else if n < 258_048 {
        vals.push(63);
        vals.extend((0..3).rev().map(|i| (n >> (6 * i) & 63) as u8));
    } else {
        vals.push(63);
        vals.push(63);
        vals.extend((0..6).rev().map(|i| (n >> (6 * i) & 63) as u8));
    }
    let mut acc = 0u8;
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
            k += 1;
            if k % 6 == 0 {
                vals.push(acc);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        vals.push(acc << (6 - k % 6));
    }
    vals.into_iter().map(|v| (v + 63) as char).collect()
}

/// Parses `u v` lines. An optional `n <count>` header line fixes the order
/// (so isolated vertices survive); otherwise the order is one more than the
/// largest id seen.
pub fn parse_edgelist(data: &str) -> Result<Graph> {
    let mut n_decl: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, raw) in data.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() == 2 && toks[0] == "n" {
            if n_decl.is_some() || !edges.is_empty() {
                return Err(perr(lineno, "order header must come first"));
            }
            n_decl = Some(toks[1].parse().map_err(|_| perr(lineno, "bad vertex count"))?);
            continue;
        }
        if toks.len() != 2 {
            return Err(perr(lineno, format!("expected two vertex ids, got {line:?}")));
        }
        let u: usize = toks[0].parse().map_err(|_| perr(lineno, format!("bad vertex id {:?}", toks[0])))?;
        let v: usize = toks[1].parse().map_err(|_| perr(lineno, format!("bad vertex id {:?}", toks[1])))?;
        if u == v {
            return Err(perr(lineno, format!("loop at vertex {u}")));
        }
        edges.push((lineno, u, v));
    }
    let n = match n_decl {
        Some(n) => n,
        None => edges.iter().map(|&(_, u, v)| u.max(v) + 1).max().unwrap_or(0),
    };
    let mut b = GraphBuilder::new(n);
    for (lineno, u, v) in edges {
        b.add_edge(u, v).map_err(|e| perr(lineno, e.to_string()))?;
    }
    Ok(b.build())
}

/// Edge-list text with an order header, one edge per line.
pub fn to_edgelist(g: &Graph) -> String {
    let mut s = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_strings() {
        let g = parse_graph6("DQc").unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 2), (0, 4), (1, 3), (3, 4)]);
        let star = parse_graph6("D?{").unwrap();
        assert_eq!(star.edges().collect::<Vec<_>>(), vec![(0, 4), (1, 4), (2, 4), (3, 4)]);
        assert_eq!(to_graph6(&star), "D?{");
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
    }

    #[test]
    fn long_header() {
        let g = crate::graph::generate(&crate::graph::FamilySpec::Path(70)).unwrap();
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_errors() {
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("Da").is_err());
        assert!(parse_graph6("D\x20").is_err());
    }

    #[test]
    fn edgelist() {
        let g = parse_edgelist("0 1\n1 2").unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        let h = parse_edgelist("# c\nn 4\n0 1 # x\n").unwrap();
        assert_eq!(h.n(), 4);
        assert_eq!(parse_edgelist(&to_edgelist(&h)).unwrap(), h);
        match parse_edgelist("0 1\n0 0") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_edgelist("n 2\n0 5"), Err(Error::Parse { line: 2, .. })));
        assert!(parse_edgelist("0 x").is_err());
    }
}
