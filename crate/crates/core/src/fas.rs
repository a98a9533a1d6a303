//! Minimum weighted feedback arc set on small penalty digraphs.
//!
//! Works on arcs only, never on the crossing matrix, so it can audit the
//! exact solver.

use crate::penalty::PenaltyGraph;

/// Arc counts up to this size are solved by trying every arc subset.
const SUBSET_ARC_LIMIT: usize = 16;

pub fn min_feedback_arc_set(pg: &PenaltyGraph) -> u64 {
    if pg.arcs().len() <= SUBSET_ARC_LIMIT {
        by_arc_subsets(pg)
    } else {
        by_vertex_orders(pg)
    }
}

/// Tries every subset of arcs to remove and keeps the lightest one whose
/// removal leaves an acyclic digraph.
pub fn by_arc_subsets(pg: &PenaltyGraph) -> u64 {
    let arcs = pg.arcs();
    let n = pg.n_free();
    assert!(arcs.len() < 64, "too many arcs for subset enumeration");
    let mut best = u64::MAX;
    for removed in 0u64..1 << arcs.len() {
        let weight: u64 = arcs
            .iter()
            .enumerate()
            .filter(|(i, _)| removed >> i & 1 == 1)
            .map(|(_, a)| a.weight)
            .sum();
        if weight >= best {
            continue;
        }
        let kept = arcs
            .iter()
            .enumerate()
            .filter(|(i, _)| removed >> i & 1 == 0)
            .map(|(_, a)| (a.from, a.to));
        if acyclic(n, kept) {
            best = weight;
        }
    }
    best
}

fn acyclic(n: usize, arcs: impl Iterator<Item = (usize, usize)>) -> bool {
    let mut out = vec![Vec::new(); n];
    let mut indeg = vec![0; n];
    for (u, v) in arcs {
        out[u].push(v);
        indeg[v] += 1;
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(u) = stack.pop() {
        seen += 1;
        for &v in &out[u] {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                stack.push(v);
            }
        }
    }
    seen == n
}

/// Minimum over vertex orders of the weight of arcs pointing against the
/// order, by DP over vertex subsets.
pub fn by_vertex_orders(pg: &PenaltyGraph) -> u64 {
    let n = pg.n_free();
    assert!(n <= 24, "vertex-order DP limited to 24 vertices");
    let mut w = vec![0u64; n * n];
    for a in pg.arcs() {
        w[a.from * n + a.to] = a.weight;
    }
    let mut best = vec![0u64; 1 << n];
    for set in 1usize..1 << n {
        best[set] = (0..n)
            .filter(|&v| set >> v & 1 == 1)
            .map(|last| {
                let rest = set & !(1 << last);
                let against: u64 = (0..n)
                    .filter(|&u| rest >> u & 1 == 1)
                    .map(|u| w[u * n + last])
                    .sum();
                best[rest] + against
            })
            .min()
            .unwrap();
    }
    best[(1 << n) - 1]
}
