//! Canonical labelling by colour refinement plus individualisation, used to
//! enumerate isomorphism classes of small graphs.

use std::collections::BTreeSet;

use super::Graph;
use crate::bits::bits;

/// Adjacency rows of the canonically relabelled graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonCode(pub Vec<u64>);

/// Returns the canonical code and the canonically relabelled graph.
/// Panics above 64 vertices.
pub fn canonical_form(g: &Graph) -> (CanonCode, Graph) {
    let n = g.n();
    if n == 0 {
        return (CanonCode(Vec::new()), g.clone());
    }
    let masks = g.masks();
    let start = refine(masks, vec![(0..n).collect()]);
    let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
    search(masks, start, &mut best);
    let (code, order) = best.expect("at least one leaf");
    let mut perm = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        perm[v] = i;
    }
    (CanonCode(code), g.permute(&perm))
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.m() == b.m() && canonical_form(a).0 == canonical_form(b).0
}

fn search(masks: &[u64], cells: Vec<Vec<usize>>, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    if cells.iter().all(|c| c.len() == 1) || homogeneous(masks, &cells) {
        let order: Vec<usize> = cells.into_iter().flatten().collect();
        let code = relabelled_rows(masks, &order);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, order));
        }
        return;
    }
    let target = cells.iter().position(|c| c.len() > 1).expect("non-discrete");
    for &v in &cells[target] {
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..target]);
        next.push(vec![v]);
        next.push(cells[target].iter().copied().filter(|&u| u != v).collect());
        next.extend_from_slice(&cells[target + 1..]);
        search(masks, refine(masks, next), best);
    }
}

/// Every cell is a clique or independent and every pair of cells is complete
/// or anticomplete, so all orderings inside cells give the same rows.
fn homogeneous(masks: &[u64], cells: &[Vec<usize>]) -> bool {
    let cm: Vec<u64> = cells.iter().map(|c| c.iter().fold(0, |m, &v| m | 1 << v)).collect();
    cells.iter().all(|c| {
        let first: Vec<u32> = cm.iter().map(|&m| (masks[c[0]] & m).count_ones()).collect();
        c.iter().all(|&v| {
            cm.iter().zip(&first).zip(cells).all(|((&m, &f), cell)| {
                let k = (masks[v] & m).count_ones();
                k == f && (k == 0 || k as usize == cell.len() || (k as usize == cell.len() - 1 && m >> v & 1 == 1))
            })
        })
    })
}

fn relabelled_rows(masks: &[u64], order: &[usize]) -> Vec<u64> {
    let mut label = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        label[v] = i;
    }
    order
        .iter()
        .map(|&v| bits(masks[v]).fold(0u64, |m, u| m | 1 << label[u]))
        .collect()
}

/// Splits cells by neighbour counts into every cell until stable. Cells keep
/// their relative order and are split in order of the count signature, so the
/// result depends only on the labelled structure of the input partition.
fn refine(masks: &[u64], mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let cm: Vec<u64> = cells.iter().map(|c| c.iter().fold(0, |m, &v| m | 1 << v)).collect();
        let mut next = Vec::with_capacity(cells.len());
        for c in &cells {
            if c.len() == 1 {
                next.push(c.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = c
                .iter()
                .map(|&v| (cm.iter().map(|&m| (masks[v] & m).count_ones()).collect(), v))
                .collect();
            keyed.sort();
            let mut group: Vec<usize> = Vec::new();
            for i in 0..keyed.len() {
                if i > 0 && keyed[i].0 != keyed[i - 1].0 {
                    next.push(std::mem::take(&mut group));
                }
                group.push(keyed[i].1);
            }
            next.push(group);
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

/// All graphs on exactly `n` vertices up to isomorphism, in canonical form,
/// sorted by edge count and then canonical code.
pub fn enumerate_graphs(n: usize) -> Vec<Graph> {
    let mut level: Vec<Graph> = vec![Graph::empty(0)];
    for k in 1..=n {
        let mut seen: BTreeSet<(usize, CanonCode)> = BTreeSet::new();
        let mut out = Vec::new();
        for g in &level {
            for sub in 0u64..(1u64 << (k - 1)) {
                let mut b = super::GraphBuilder::from(g);
                let v = b.add_vertex();
                for u in bits(sub) {
                    b.add_edge(u, v).expect("new vertex");
                }
                let h = b.build();
                let (code, canon) = canonical_form(&h);
                if seen.insert((h.m(), code)) {
                    out.push(canon);
                }
            }
        }
        let mut keyed: Vec<((usize, CanonCode), Graph)> = out
            .into_iter()
            .map(|g| ((g.m(), canonical_form(&g).0), g))
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        level = keyed.into_iter().map(|(_, g)| g).collect();
    }
    level
}
