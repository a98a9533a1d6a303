//! Exact and heuristic solvers.
//!
//! Every solver returns a [`SolveResult`] whose crossing count has been
//! recomputed from the instance with the inversion counter.

use std::cmp::Ordering as CmpOrdering;
use std::fmt;

use thiserror::Error;

use crate::crossings::{count_crossings, crossing_matrix, CrossingMatrix};
use crate::instance::{FreeId, Instance, Ordering};
use crate::penalty::{harrigan_healy_order, PenaltyGraph, TopoOutcome};

/// Largest free layer the factorial oracle accepts.
pub const BRUTE_FORCE_LIMIT: usize = 10;
/// Default largest free layer for the subset DP.
pub const DEFAULT_EXACT_LIMIT: usize = 24;
/// Hard cap on the subset DP, whatever limit is requested.
pub const MAX_EXACT_LIMIT: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ExactDp,
    BruteForce,
    Barycenter,
    Median,
    GreedySwitch,
    HarriganHealy,
}

impl Method {
    pub fn is_exact(self) -> bool {
        matches!(self, Method::ExactDp | Method::BruteForce)
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::ExactDp => "exact-dp",
            Method::BruteForce => "brute-force",
            Method::Barycenter => "barycenter",
            Method::Median => "median",
            Method::GreedySwitch => "greedy-switch",
            Method::HarriganHealy => "harrigan-healy",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("{method} refuses {n_free} free vertices (limit {limit})")]
    SizeGuard {
        method: Method,
        n_free: usize,
        limit: usize,
    },
    #[error("start ordering has {got} entries, expected {expected}")]
    StartLength { got: usize, expected: usize },
}

/// An ordering with its certified crossing count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    ordering: Ordering,
    crossings: u64,
    method: Method,
    optimal: bool,
}

impl SolveResult {
    /// Recounts the crossings of `ordering` and records them.
    pub fn certify(inst: &Instance, ordering: Ordering, method: Method) -> Self {
        let crossings =
            count_crossings(inst, &ordering).expect("solver produced an ordering of the wrong length");
        SolveResult {
            ordering,
            crossings,
            method,
            optimal: method.is_exact(),
        }
    }

    pub fn ordering(&self) -> &Ordering {
        &self.ordering
    }

    pub fn crossings(&self) -> u64 {
        self.crossings
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn optimal(&self) -> bool {
        self.optimal
    }
}

/// Tries every ordering; ties go to the lexicographically smallest one.
pub fn brute_force_opt(inst: &Instance) -> Result<SolveResult, SolveError> {
    let n = inst.n_free();
    if n > BRUTE_FORCE_LIMIT {
        return Err(SolveError::SizeGuard {
            method: Method::BruteForce,
            n_free: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let m = crossing_matrix(inst);
    let mut search = Enumerator {
        m: &m,
        prefix: Vec::with_capacity(n),
        used: vec![false; n],
        best: None,
    };
    search.run(0);
    let (_, best) = search.best.expect("at least one ordering exists");
    Ok(SolveResult::certify(
        inst,
        Ordering::new(best).unwrap(),
        Method::BruteForce,
    ))
}

struct Enumerator<'a> {
    m: &'a CrossingMatrix,
    prefix: Vec<FreeId>,
    used: Vec<bool>,
    best: Option<(u64, Vec<FreeId>)>,
}

impl Enumerator<'_> {
    // Visits permutations in lexicographic order, so keeping only strict
    // improvements leaves the smallest optimal ordering.
    fn run(&mut self, cost: u64) {
        let n = self.used.len();
        if self.prefix.len() == n {
            if self.best.as_ref().is_none_or(|(b, _)| cost < *b) {
                self.best = Some((cost, self.prefix.clone()));
            }
            return;
        }
        for v in 0..n {
            if self.used[v] {
                continue;
            }
            let added: u64 = self.prefix.iter().map(|&u| self.m.get(u, v)).sum();
            self.used[v] = true;
            self.prefix.push(v);
            self.run(cost + added);
            self.prefix.pop();
            self.used[v] = false;
        }
    }
}

pub fn solve_exact(inst: &Instance) -> Result<SolveResult, SolveError> {
    solve_exact_with_limit(inst, DEFAULT_EXACT_LIMIT)
}

/// Subset DP over the crossing matrix.
///
/// `cost[S]` is the cheapest way to order the vertex set `S` on its own:
/// `cost[S] = min over v in S of cost[S - v] + sum_{u in S - v} cr(u, v)`
/// with `v` placed last. The ordering is rebuilt front to back, taking the
/// smallest vertex that can start an optimal order of what remains.
pub fn solve_exact_with_limit(inst: &Instance, limit: usize) -> Result<SolveResult, SolveError> {
    let n = inst.n_free();
    let limit = limit.min(MAX_EXACT_LIMIT);
    if n > limit {
        return Err(SolveError::SizeGuard {
            method: Method::ExactDp,
            n_free: n,
            limit,
        });
    }
    let m = crossing_matrix(inst);
    let cost = subset_costs(&m);
    let mut remaining: usize = (1usize << n) - 1;
    let mut order = Vec::with_capacity(n);
    while remaining != 0 {
        let v = (0..n)
            .filter(|&v| remaining >> v & 1 == 1)
            .find(|&v| {
                let rest = remaining & !(1 << v);
                let lead: u64 = bits(rest).map(|w| m.get(v, w)).sum();
                lead + cost[rest] == cost[remaining]
            })
            .expect("some vertex starts an optimal order");
        order.push(v);
        remaining &= !(1 << v);
    }
    Ok(SolveResult::certify(
        inst,
        Ordering::new(order).unwrap(),
        Method::ExactDp,
    ))
}

fn bits(mut set: usize) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set == 0 {
            None
        } else {
            let b = set.trailing_zeros() as usize;
            set &= set - 1;
            Some(b)
        }
    })
}

fn subset_costs(m: &CrossingMatrix) -> Vec<u64> {
    let n = m.n_free();
    let mut cost = vec![u64::MAX; 1 << n];
    cost[0] = 0;
    for set in 1usize..1 << n {
        let mut best = u64::MAX;
        for v in bits(set) {
            let rest = set & !(1 << v);
            let tail: u64 = bits(rest).map(|u| m.get(u, v)).sum();
            best = best.min(cost[rest] + tail);
        }
        cost[set] = best;
    }
    cost
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FasError {
    #[error("accounting needs an optimal result, got one from {0}")]
    NotOptimal(Method),
    #[error(
        "identity violated: {crossings} crossings != lower bound {lower_bound} + violated weight {violated}"
    )]
    Decomposition {
        crossings: u64,
        lower_bound: u64,
        violated: u64,
    },
    #[error("violated weight {violated} differs from minimum feedback arc set weight {min_fas}")]
    NotMinimum { violated: u64, min_fas: u64 },
}

/// The optimum split into the unavoidable part and the feedback arc set part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FasReport {
    pub crossings: u64,
    /// Sum over pairs of `min(cr(u,v), cr(v,u))`.
    pub lower_bound: u64,
    /// Weight of penalty arcs the ordering violates.
    pub violated_weight: u64,
    /// Independently computed minimum feedback arc set weight, when the
    /// free layer is small enough to check exhaustively.
    pub min_fas: Option<u64>,
}

/// Checks `crossings = lower bound + violated arc weight` and, for small
/// free layers, that the violated weight is a minimum feedback arc set.
pub fn fas_accounting(inst: &Instance, res: &SolveResult) -> Result<FasReport, FasError> {
    if !res.optimal() {
        return Err(FasError::NotOptimal(res.method()));
    }
    let m = crossing_matrix(inst);
    let pg = PenaltyGraph::from_matrix(&m);
    let lower_bound = m.lower_bound();
    let violated = pg.violated_weight(res.ordering());
    if res.crossings() != lower_bound + violated {
        return Err(FasError::Decomposition {
            crossings: res.crossings(),
            lower_bound,
            violated,
        });
    }
    let min_fas = (inst.n_free() <= BRUTE_FORCE_LIMIT).then(|| crate::fas::min_feedback_arc_set(&pg));
    if let Some(min_fas) = min_fas {
        if min_fas != violated {
            return Err(FasError::NotMinimum { violated, min_fas });
        }
    }
    Ok(FasReport {
        crossings: res.crossings(),
        lower_bound,
        violated_weight: violated,
        min_fas,
    })
}

/// Orders by a per-vertex key. Isolated vertices go first in id order; the
/// rest by key, then id.
fn sort_by_key<K>(inst: &Instance, key: impl Fn(FreeId) -> K, cmp: impl Fn(&K, &K) -> CmpOrdering) -> Ordering {
    let (mut isolated, mut placed): (Vec<FreeId>, Vec<FreeId>) =
        (0..inst.n_free()).partition(|&v| inst.degree(v) == 0);
    let keys: Vec<Option<K>> = (0..inst.n_free())
        .map(|v| (inst.degree(v) > 0).then(|| key(v)))
        .collect();
    placed.sort_by(|&a, &b| {
        cmp(keys[a].as_ref().unwrap(), keys[b].as_ref().unwrap()).then(a.cmp(&b))
    });
    isolated.extend(placed);
    Ordering::new(isolated).unwrap()
}

/// Free vertices sorted by mean neighbour position.
pub fn barycenter(inst: &Instance) -> SolveResult {
    // mean compared exactly as sum_a * deg_b vs sum_b * deg_a
    let ord = sort_by_key(
        inst,
        |v| (inst.neighbors(v).iter().sum::<usize>() as u128, inst.degree(v) as u128),
        |&(sa, da), &(sb, db)| (sa * db).cmp(&(sb * da)),
    );
    SolveResult::certify(inst, ord, Method::Barycenter)
}

/// Free vertices sorted by the lower median of their neighbour positions.
pub fn median(inst: &Instance) -> SolveResult {
    let ord = sort_by_key(
        inst,
        |v| {
            let nb = inst.neighbors(v);
            nb[(nb.len() - 1) / 2]
        },
        |a, b| a.cmp(b),
    );
    SolveResult::certify(inst, ord, Method::Median)
}

/// Adjacent-swap local search from `start`.
///
/// Sweeps top to bottom swapping neighbours `u, v` whenever
/// `cr(v,u) < cr(u,v)`, until a full sweep changes nothing. Each swap lowers
/// the total, so this terminates.
pub fn greedy_switch(inst: &Instance, start: &Ordering) -> Result<SolveResult, SolveError> {
    if start.len() != inst.n_free() {
        return Err(SolveError::StartLength {
            got: start.len(),
            expected: inst.n_free(),
        });
    }
    let m = crossing_matrix(inst);
    let mut ord = start.as_slice().to_vec();
    let mut changed = true;
    while changed {
        changed = false;
        for i in 1..ord.len() {
            let (u, v) = (ord[i - 1], ord[i]);
            if m.get(v, u) < m.get(u, v) {
                ord.swap(i - 1, i);
                changed = true;
            }
        }
    }
    Ok(SolveResult::certify(
        inst,
        Ordering::new(ord).unwrap(),
        Method::GreedySwitch,
    ))
}

/// The topological-order algorithm as a solver; `None` when the penalty
/// digraph is cyclic.
pub fn harrigan_healy(inst: &Instance) -> Option<SolveResult> {
    match harrigan_healy_order(inst) {
        TopoOutcome::Ordered(ord) => Some(SolveResult::certify(inst, ord, Method::HarriganHealy)),
        TopoOutcome::Cyclic(_) => None,
    }
}
