//! Canonical labeling by ordered partition refinement plus exhaustive
//! individualization. Intended for small graphs; the only automorphism
//! pruning is skipping twins, so symmetric graphs without twins still cost
//! many leaves.

use crate::graph::{Graph, Vertex};

/// Adjacency rows of the canonically relabeled graph, prefixed by `n`.
pub type CanonicalCode = Vec<u64>;

/// Returns `perm` with `perm[v]` the canonical position of `v`.
pub fn canonical_labeling(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let mut cells: Vec<Vec<Vertex>> = Vec::new();
    let mut by_degree: Vec<(usize, Vertex)> = (0..n).map(|v| (g.degree(v), v)).collect();
    by_degree.sort_unstable();
    for (d, v) in by_degree {
        match cells.last_mut() {
            Some(cell) if g.degree(cell[0]) == d => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    refine(g, &mut cells);
    let mut best: Option<(CanonicalCode, Vec<Vertex>)> = None;
    search(g, cells, &mut best);
    best.expect("non-empty graph has a leaf").1
}

pub fn canonical_code(g: &Graph) -> CanonicalCode {
    code_for(g, &canonical_labeling(g))
}

pub fn canonical_form(g: &Graph) -> Graph {
    g.permuted(&canonical_labeling(g))
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n()
        && a.m() == b.m()
        && {
            let mut da = a.degrees();
            let mut db = b.degrees();
            da.sort_unstable();
            db.sort_unstable();
            da == db
        }
        && canonical_code(a) == canonical_code(b)
}

fn search(g: &Graph, cells: Vec<Vec<Vertex>>, best: &mut Option<(CanonicalCode, Vec<Vertex>)>) {
    let target = cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(i, c)| (c.len(), *i))
        .map(|(i, _)| i);
    let Some(t) = target else {
        let mut perm = vec![0; g.n()];
        for (pos, cell) in cells.iter().enumerate() {
            perm[cell[0]] = pos;
        }
        let code = code_for(g, &perm);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, perm));
        }
        return;
    };
    let cell = &cells[t];
    for (i, &v) in cell.iter().enumerate() {
        // a twin of an earlier vertex in the cell gives the same subtree
        if cell[..i].iter().any(|&u| twins(g, u, v)) {
            continue;
        }
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..t]);
        next.push(vec![v]);
        next.push(cells[t].iter().copied().filter(|&w| w != v).collect());
        next.extend_from_slice(&cells[t + 1..]);
        refine(g, &mut next);
        search(g, next, best);
    }
}

/// Swapping `u` and `v` is an automorphism.
fn twins(g: &Graph, u: Vertex, v: Vertex) -> bool {
    g.neighbor_mask(u) & !(1 << v) == g.neighbor_mask(v) & !(1 << u)
}

/// Splits cells by neighbor counts into each splitter cell until equitable.
/// Sub-cells are ordered by ascending count, so the result depends only on
/// the ordered partition, not on vertex names.
fn refine(g: &Graph, cells: &mut Vec<Vec<Vertex>>) {
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            let splitter: u64 = cells[s].iter().fold(0, |m, &v| m | 1 << v);
            let mut out = Vec::with_capacity(cells.len());
            for cell in cells.iter() {
                if cell.len() == 1 {
                    out.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(u32, Vertex)> = cell
                    .iter()
                    .map(|&v| ((g.neighbor_mask(v) & splitter).count_ones(), v))
                    .collect();
                keyed.sort_unstable();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        out.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                        start = i;
                    }
                }
            }
            if out.len() != cells.len() {
                changed = true;
                *cells = out;
            }
            s += 1;
        }
        if !changed {
            return;
        }
    }
}

fn code_for(g: &Graph, perm: &[Vertex]) -> CanonicalCode {
    let n = g.n();
    let mut rows = vec![0u64; n + 1];
    rows[0] = n as u64;
    for &(u, v) in g.edges() {
        let (a, b) = (perm[u], perm[v]);
        rows[a + 1] |= 1 << b;
        rows[b + 1] |= 1 << a;
    }
    rows
}
