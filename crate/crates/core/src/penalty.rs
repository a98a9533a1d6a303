//! The penalty digraph on the free layer and the topological-order algorithm
//! that assumes it is acyclic for trees.
//!
//! The penalty digraph has `cr(u,v) - cr(v,u)` parallel arcs `u -> v` whenever
//! `cr(u,v) > cr(v,u)`. Parallel arcs are stored as one arc with that weight.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::crossings::{crossing_matrix, CrossingMatrix};
use crate::instance::{FreeId, Instance, Ordering};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Arc {
    pub from: FreeId,
    pub to: FreeId,
    pub weight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PenaltyGraph {
    n_free: usize,
    /// Sorted by (from, to).
    arcs: Vec<Arc>,
    out: Vec<Vec<FreeId>>,
}

impl PenaltyGraph {
    pub fn from_matrix(m: &CrossingMatrix) -> Self {
        let n = m.n_free();
        let mut arcs = Vec::new();
        let mut out = vec![Vec::new(); n];
        for u in 0..n {
            for v in 0..n {
                let (forward, backward) = (m.get(u, v), m.get(v, u));
                if u != v && forward > backward {
                    arcs.push(Arc {
                        from: u,
                        to: v,
                        weight: forward - backward,
                    });
                    out[u].push(v);
                }
            }
        }
        PenaltyGraph { n_free: n, arcs, out }
    }

    pub fn n_free(&self) -> usize {
        self.n_free
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn successors(&self, u: FreeId) -> &[FreeId] {
        &self.out[u]
    }

    pub fn total_weight(&self) -> u64 {
        self.arcs.iter().map(|a| a.weight).sum()
    }

    pub fn is_acyclic(&self) -> bool {
        self.find_cycle().is_none()
    }

    /// One directed cycle, in depth-first discovery order, if any exists.
    pub fn find_cycle(&self) -> Option<Vec<FreeId>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let n = self.n_free;
        let mut mark = vec![Mark::New; n];
        let mut path: Vec<FreeId> = Vec::new();
        for root in 0..n {
            if mark[root] != Mark::New {
                continue;
            }
            // explicit stack of (vertex, next successor index)
            let mut stack = vec![(root, 0usize)];
            mark[root] = Mark::Active;
            path.push(root);
            while let Some(&mut (u, ref mut next)) = stack.last_mut() {
                if let Some(&v) = self.out[u].get(*next) {
                    *next += 1;
                    match mark[v] {
                        Mark::New => {
                            mark[v] = Mark::Active;
                            path.push(v);
                            stack.push((v, 0));
                        }
                        Mark::Active => {
                            let start = path.iter().position(|&x| x == v).unwrap();
                            return Some(path[start..].to_vec());
                        }
                        Mark::Done => {}
                    }
                } else {
                    mark[u] = Mark::Done;
                    path.pop();
                    stack.pop();
                }
            }
        }
        None
    }

    /// An order in which no arc is violated, if one exists.
    ///
    /// An arc `u -> v` says that placing `u` above `v` costs extra, so every
    /// arc head must be placed above its tail. Among the vertices whose
    /// out-arcs are all satisfied, the smallest id is placed next. `None` if
    /// the digraph is cyclic.
    pub fn topological_order(&self) -> Option<Ordering> {
        let n = self.n_free;
        let mut preds = vec![Vec::new(); n];
        let mut pending: Vec<usize> = self.out.iter().map(Vec::len).collect();
        for a in &self.arcs {
            preds[a.to].push(a.from);
        }
        let mut ready: BinaryHeap<Reverse<FreeId>> =
            (0..n).filter(|&v| pending[v] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(v)) = ready.pop() {
            order.push(v);
            for &u in &preds[v] {
                pending[u] -= 1;
                if pending[u] == 0 {
                    ready.push(Reverse(u));
                }
            }
        }
        (order.len() == n).then(|| Ordering::new(order).expect("topological order is a permutation"))
    }

    /// Total weight of arcs whose tail is placed above their head in `ord`.
    ///
    /// For any ordering, crossings = lower bound + violated weight.
    pub fn violated_weight(&self, ord: &Ordering) -> u64 {
        let pos = ord.positions();
        self.arcs
            .iter()
            .filter(|a| pos[a.from] < pos[a.to])
            .map(|a| a.weight)
            .sum()
    }
}

pub fn build_penalty_graph(m: &CrossingMatrix) -> PenaltyGraph {
    PenaltyGraph::from_matrix(m)
}

/// A directed cycle in the penalty digraph, which blocks the
/// topological-order algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicWitness {
    pub cycle: Vec<FreeId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TopoOutcome {
    Ordered(Ordering),
    Cyclic(CyclicWitness),
}

impl TopoOutcome {
    pub fn ordering(&self) -> Option<&Ordering> {
        match self {
            TopoOutcome::Ordered(o) => Some(o),
            TopoOutcome::Cyclic(_) => None,
        }
    }
}

/// Order the free layer by a topological order of the penalty digraph.
///
/// This is optimal whenever the penalty digraph is acyclic. When it is not,
/// the algorithm has nothing to return and a cycle is reported instead.
pub fn harrigan_healy_order(inst: &Instance) -> TopoOutcome {
    let pg = PenaltyGraph::from_matrix(&crossing_matrix(inst));
    match pg.topological_order() {
        Some(ord) => TopoOutcome::Ordered(ord),
        None => TopoOutcome::Cyclic(CyclicWitness {
            cycle: pg.find_cycle().expect("Kahn failed, so a cycle exists"),
        }),
    }
}
