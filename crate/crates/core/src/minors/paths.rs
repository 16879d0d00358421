use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bits::{bits, full, to_vec};
use crate::error::{budget, Error, Result};
use crate::graph::Graph;

/// Advisory order limit for exact path number and vertex cover number.
pub const PATH_PARAM_LIMIT: usize = 16;

/// A longest path (as a vertex sequence) by subset dynamic programming.
pub fn longest_path(g: &Graph) -> Result<Vec<usize>> {
    budget("longest_path", g.n(), PATH_PARAM_LIMIT)?;
    g.require_masks("longest path")?;
    let n = g.n();
    if n == 0 {
        return Ok(Vec::new());
    }
    // reach[mask] has bit v set when some path covers exactly `mask` and ends at v.
    let size = 1usize << n;
    let mut reach = vec![0u32; size];
    for v in 0..n {
        reach[1 << v] |= 1 << v;
    }
    let mut best = (1usize, 1u64, 0usize);
    for mask in 1..size {
        let ends = reach[mask];
        if ends == 0 {
            continue;
        }
        let len = (mask as u64).count_ones() as usize;
        if len > best.0 {
            best = (len, mask as u64, ends.trailing_zeros() as usize);
        }
        for v in bits(ends as u64) {
            for u in bits(g.mask(v) & !(mask as u64)) {
                reach[mask | 1 << u] |= 1 << u;
            }
        }
    }
    let (_, mut mask, mut end) = best;
    let mut path = vec![end];
    while mask.count_ones() > 1 {
        let prev_mask = mask & !(1u64 << end);
        let prev = bits(g.mask(end) & prev_mask)
            .find(|&u| reach[prev_mask as usize] >> u & 1 == 1)
            .expect("predecessor exists");
        path.push(prev);
        mask = prev_mask;
        end = prev;
    }
    path.reverse();
    Ok(path)
}

/// Number of vertices on a longest path.
pub fn path_number(g: &Graph) -> Result<usize> {
    Ok(longest_path(g)?.len())
}

/// A minimum vertex cover by branching on a maximum-degree vertex.
pub fn vertex_cover(g: &Graph) -> Result<Vec<usize>> {
    budget("vertex_cover", g.n(), PATH_PARAM_LIMIT)?;
    g.require_masks("vertex cover")?;
    fn rec(g: &Graph, alive: u64, memo: &mut HashMap<u64, u64>) -> u64 {
        let v = bits(alive).max_by_key(|&v| ((g.mask(v) & alive).count_ones(), std::cmp::Reverse(v)));
        let Some(v) = v.filter(|&v| g.mask(v) & alive != 0) else {
            return 0;
        };
        if let Some(&c) = memo.get(&alive) {
            return c;
        }
        let nb = g.mask(v) & alive;
        let with_v = rec(g, alive & !(1u64 << v), memo) | 1 << v;
        let with_nb = if nb.count_ones() < with_v.count_ones() {
            Some(rec(g, alive & !(1u64 << v) & !nb, memo) | nb)
        } else {
            None
        };
        let best = match with_nb {
            Some(c) if c.count_ones() < with_v.count_ones() => c,
            _ => with_v,
        };
        memo.insert(alive, best);
        best
    }
    let mut memo = HashMap::new();
    Ok(to_vec(rec(g, full(g.n()), &mut memo)))
}

/// Non-root leaves of a depth-first spanning tree from vertex 0 are
/// independent, so the remaining vertices cover every edge. Neighbours are
/// visited in increasing order; the single-vertex graph gets the empty cover.
pub fn dfs_cover(g: &Graph) -> Result<Vec<usize>> {
    let n = g.n();
    if n == 0 || !g.is_connected() {
        return Err(Error::Precondition("depth-first cover needs a connected non-empty graph".into()));
    }
    if n == 1 {
        return Ok(Vec::new());
    }
    let mut children = vec![0usize; n];
    let mut seen = vec![false; n];
    let mut stack = vec![(0usize, 0usize)];
    seen[0] = true;
    while let Some(top) = stack.last_mut() {
        let (v, i) = *top;
        let nb = g.neighbors(v);
        let Some(skip) = nb[i..].iter().position(|&u| !seen[u]) else {
            stack.pop();
            continue;
        };
        top.1 = i + skip + 1;
        let u = nb[i + skip];
        seen[u] = true;
        children[v] += 1;
        stack.push((u, 0));
    }
    Ok((0..n).filter(|&v| v == 0 || children[v] > 0).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathCover {
    pub path_number: usize,
    pub longest_path: Vec<usize>,
    pub tau: usize,
    pub min_cover: Vec<usize>,
    /// Present for connected graphs only.
    pub dfs_cover: Option<Vec<usize>>,
}

pub fn path_and_cover(g: &Graph) -> Result<PathCover> {
    let path = longest_path(g)?;
    let cover = vertex_cover(g)?;
    let dfs = if g.n() > 0 && g.is_connected() { Some(dfs_cover(g)?) } else { None };
    Ok(PathCover {
        path_number: path.len(),
        longest_path: path,
        tau: cover.len(),
        min_cover: cover,
        dfs_cover: dfs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_graphs, generate, FamilySpec};

    fn fam(s: FamilySpec) -> Graph {
        generate(&s).unwrap()
    }

    fn is_cover(g: &Graph, c: &[usize]) -> bool {
        g.edges().all(|(u, v)| c.contains(&u) || c.contains(&v))
    }

    fn brute_tau(g: &Graph) -> usize {
        (0u32..1 << g.n())
            .filter(|s| g.edges().all(|(u, v)| s >> u & 1 == 1 || s >> v & 1 == 1))
            .map(|s| s.count_ones() as usize)
            .min()
            .unwrap()
    }

    fn brute_pn(g: &Graph) -> usize {
        fn ext(g: &Graph, path: &mut Vec<usize>) -> usize {
            let last = *path.last().unwrap();
            let mut best = path.len();
            for &u in g.neighbors(last) {
                if !path.contains(&u) {
                    path.push(u);
                    best = best.max(ext(g, path));
                    path.pop();
                }
            }
            best
        }
        (0..g.n()).map(|v| ext(g, &mut vec![v])).max().unwrap_or(0)
    }

    #[test]
    fn matches_brute_force() {
        for n in 0..=6 {
            for g in enumerate_graphs(n) {
                let pc = path_and_cover(&g).unwrap();
                assert_eq!(pc.tau, brute_tau(&g));
                assert!(is_cover(&g, &pc.min_cover));
                assert_eq!(pc.path_number, brute_pn(&g));
                let p = &pc.longest_path;
                assert!(p.windows(2).all(|w| g.has_edge(w[0], w[1])));
                if let Some(c) = &pc.dfs_cover {
                    assert!(is_cover(&g, c));
                }
            }
        }
    }

    #[test]
    fn examples() {
        let s4 = fam(FamilySpec::Star(4));
        let pc = path_and_cover(&s4).unwrap();
        assert_eq!((pc.tau, pc.path_number), (1, 3));
        assert!(pc.dfs_cover.unwrap().len() <= 3);
        let p6 = fam(FamilySpec::Path(6));
        let pc = path_and_cover(&p6).unwrap();
        assert_eq!((pc.tau, pc.path_number), (3, 6));
        let k1 = fam(FamilySpec::Complete(1));
        let pc = path_and_cover(&k1).unwrap();
        assert_eq!((pc.tau, pc.path_number), (0, 1));
        assert_eq!(pc.dfs_cover, Some(Vec::new()));
        assert!(dfs_cover(&Graph::empty(2)).is_err());
    }
}
