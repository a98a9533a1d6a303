//! Exhaustive search for trees whose penalty digraph has a cycle.
//!
//! Fixed vertices are identified with their positions, so enumerating the
//! labeled spanning trees of `K_{a,b}` already runs through every
//! (tree, fixed order) pair. Witnesses are reported once per class under
//! free-vertex relabeling and reversal of the fixed order.

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;
use thiserror::Error;

use crate::crossings::{crossing_matrix, CrossingMatrix};
use crate::instance::{FixedId, FreeId, Instance, Labels};
use crate::penalty::PenaltyGraph;

/// Largest total vertex count `find_cyclic_counterexamples` accepts.
pub const SEARCH_VERTEX_LIMIT: usize = 10;

/// Published pairwise values in the order
/// `cr(g,h), cr(h,g), cr(g,i), cr(i,g), cr(h,i), cr(i,h)`.
pub const PAPER_PROFILE: [u64; 6] = [2, 3, 3, 2, 4, 5];
/// Names of the fixed positions in the published fixed order.
pub const PAPER_FIXED_NAMES: [&str; 6] = ["d", "f", "b", "a", "c", "e"];
pub const PAPER_FREE_NAMES: [&str; 3] = ["g", "h", "i"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search over {requested} vertices exceeds the budget of {limit}")]
    Budget { requested: usize, limit: usize },
    #[error("profile matching needs exactly 3 free vertices, witness has {0}")]
    WrongFreeSize(usize),
}

pub type EdgeSet = Vec<(FixedId, FreeId)>;

/// Every labeled spanning tree of `K_{n_fixed, n_free}`, as sorted edge lists.
///
/// Vertices `0..n_fixed` are the fixed side and `n_fixed..` the free side of
/// a Prüfer code. A tree is bipartite-respecting only if fixed vertices
/// occupy exactly `n_free - 1` code positions, so only codes with that
/// composition are decoded; decoded trees with an edge inside one side are
/// dropped.
pub fn enumerate_bipartite_trees(
    n_fixed: usize,
    n_free: usize,
) -> Box<dyn Iterator<Item = EdgeSet> + Send> {
    let n = n_fixed + n_free;
    if n_fixed == 0 || n_free == 0 {
        let single = if n == 1 { vec![Vec::new()] } else { Vec::new() };
        return Box::new(single.into_iter());
    }
    if n == 2 {
        return Box::new(std::iter::once(vec![(0, 0)]));
    }
    let len = n - 2;
    let it = (0..len)
        .combinations(n_free - 1)
        .flat_map(move |fixed_slots| {
            (0..len)
                .map(|i| {
                    if fixed_slots.contains(&i) {
                        0..n_fixed
                    } else {
                        n_fixed..n
                    }
                })
                .multi_cartesian_product()
        })
        .filter_map(move |code| decode_bipartite(&code, n_fixed, n));
    Box::new(it)
}

fn decode_bipartite(code: &[usize], n_fixed: usize, n: usize) -> Option<EdgeSet> {
    let mut degree = vec![1usize; n];
    for &x in code {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut push = |x: usize, y: usize| -> bool {
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        if lo < n_fixed && hi >= n_fixed {
            edges.push((lo, hi - n_fixed));
            true
        } else {
            false
        }
    };
    for &x in code {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        if !push(leaf, x) {
            return None;
        }
        degree[leaf] = 0;
        degree[x] -= 1;
    }
    let mut last = (0..n).filter(|&v| degree[v] == 1);
    let (u, v) = (last.next().unwrap(), last.next().unwrap());
    if !push(u, v) {
        return None;
    }
    edges.sort_unstable();
    Some(edges)
}

/// `a^(b-1) * b^(a-1)`, the number of spanning trees of `K_{a,b}`.
pub fn bipartite_tree_count(n_fixed: usize, n_free: usize) -> u64 {
    if n_fixed == 0 || n_free == 0 {
        return u64::from(n_fixed + n_free == 1);
    }
    (n_fixed as u64).pow(n_free as u32 - 1) * (n_free as u64).pow(n_fixed as u32 - 1)
}

/// A tree with a cyclic penalty digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleWitness {
    pub instance: Instance,
    pub n_total: usize,
    pub cycle: Vec<FreeId>,
    /// `cr(0,1), cr(1,0), cr(0,2), cr(2,0), cr(1,2), cr(2,1)` for three free
    /// vertices.
    pub cr_profile: Option<[u64; 6]>,
}

impl CounterexampleWitness {
    fn from_instance(instance: Instance) -> Option<Self> {
        let m = crossing_matrix(&instance);
        let cycle = PenaltyGraph::from_matrix(&m).find_cycle()?;
        Some(CounterexampleWitness {
            n_total: instance.n_fixed() + instance.n_free(),
            cr_profile: (instance.n_free() == 3).then(|| profile(&m, [0, 1, 2])),
            cycle,
            instance,
        })
    }

    pub fn matrix(&self) -> CrossingMatrix {
        crossing_matrix(&self.instance)
    }

    /// Comment lines to store alongside the instance file.
    pub fn annotation(&self) -> Vec<String> {
        let m = self.matrix();
        let n = self.instance.n_free();
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    pairs.push(format!(
                        "cr({},{})={}",
                        self.instance.free_label(u),
                        self.instance.free_label(v),
                        m.get(u, v)
                    ));
                }
            }
        }
        let cycle = self
            .cycle
            .iter()
            .map(|&v| self.instance.free_label(v))
            .join(" -> ");
        vec![
            format!("cr profile: {}", pairs.join(" ")),
            format!("penalty cycle: {cycle}"),
        ]
    }
}

fn profile(m: &CrossingMatrix, [g, h, i]: [FreeId; 3]) -> [u64; 6] {
    [
        m.get(g, h),
        m.get(h, g),
        m.get(g, i),
        m.get(i, g),
        m.get(h, i),
        m.get(i, h),
    ]
}

/// Tally for one `(n_fixed, n_free)` split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartitionStats {
    pub n_fixed: usize,
    pub n_free: usize,
    pub trees: u64,
    /// Labeled trees (= tree and fixed order pairs) with a cyclic penalty
    /// digraph, before any deduplication.
    pub cyclic: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub max_total_vertices: usize,
    /// Canonical representatives sorted by (vertex count, edge list).
    pub witnesses: Vec<CounterexampleWitness>,
    pub stats: Vec<BipartitionStats>,
}

impl SearchOutcome {
    /// Smallest vertex count of any witness.
    pub fn min_vertices(&self) -> Option<usize> {
        self.witnesses.iter().map(|w| w.n_total).min()
    }
}

/// Canonical representative of an instance under free relabeling and
/// reversal of the fixed order: the lexicographically smallest edge list.
pub fn canonical_form(inst: &Instance) -> Instance {
    let n_free = inst.n_free();
    let mut best: Option<EdgeSet> = None;
    for base in [inst.clone(), inst.reversed_fixed()] {
        for perm in (0..n_free).permutations(n_free) {
            let mut edges: EdgeSet = base.edges().iter().map(|&(a, v)| (a, perm[v])).collect();
            edges.sort_unstable();
            if best.as_ref().is_none_or(|b| edges < *b) {
                best = Some(edges);
            }
        }
    }
    Instance::new(inst.n_fixed(), n_free, best.unwrap()).unwrap()
}

/// All trees on at most `max_total_vertices` vertices (every split, every
/// fixed order) whose penalty digraph contains a directed cycle.
pub fn find_cyclic_counterexamples(max_total_vertices: usize) -> Result<SearchOutcome, SearchError> {
    if max_total_vertices > SEARCH_VERTEX_LIMIT {
        return Err(SearchError::Budget {
            requested: max_total_vertices,
            limit: SEARCH_VERTEX_LIMIT,
        });
    }
    let mut stats = Vec::new();
    let mut classes: BTreeMap<(usize, EdgeSet, usize), CounterexampleWitness> = BTreeMap::new();
    for total in 2..=max_total_vertices {
        for n_fixed in 1..total {
            let n_free = total - n_fixed;
            let (trees, hits) = search_split(n_fixed, n_free);
            stats.push(BipartitionStats {
                n_fixed,
                n_free,
                trees,
                cyclic: hits.len() as u64,
            });
            for inst in hits {
                let canon = canonical_form(&inst);
                let key = (total, canon.edges().to_vec(), n_fixed);
                classes.entry(key).or_insert_with(|| {
                    CounterexampleWitness::from_instance(canon).expect("canonical form stays cyclic")
                });
            }
        }
    }
    Ok(SearchOutcome {
        max_total_vertices,
        witnesses: classes.into_values().collect(),
        stats,
    })
}

/// Counts the trees of one split and returns the cyclic ones, sorted.
pub fn search_split(n_fixed: usize, n_free: usize) -> (u64, Vec<Instance>) {
    let (count, mut hits) = enumerate_bipartite_trees(n_fixed, n_free)
        .par_bridge()
        .map(|edges| {
            // fewer than three free vertices can never form a cycle
            if n_free < 3 {
                return (1u64, None);
            }
            let inst = Instance::new(n_fixed, n_free, edges).unwrap();
            let cyclic = !PenaltyGraph::from_matrix(&crossing_matrix(&inst)).is_acyclic();
            (1, cyclic.then_some(inst))
        })
        .fold(
            || (0u64, Vec::new()),
            |(c, mut v), (one, hit)| {
                v.extend(hit);
                (c + one, v)
            },
        )
        .reduce(
            || (0, Vec::new()),
            |(c1, mut v1), (c2, v2)| {
                v1.extend(v2);
                (c1 + c2, v1)
            },
        );
    hits.sort_by(|a, b| a.edges().cmp(b.edges()));
    (count, hits)
}

/// The relabeling `[g, h, i]` of the witness's free vertices that
/// reproduces the published pairwise values, if one exists.
pub fn paper_labeling(w: &CounterexampleWitness) -> Result<Option<[FreeId; 3]>, SearchError> {
    if w.instance.n_free() != 3 {
        return Err(SearchError::WrongFreeSize(w.instance.n_free()));
    }
    let m = w.matrix();
    Ok((0..3)
        .permutations(3)
        .map(|p| [p[0], p[1], p[2]])
        .find(|&p| profile(&m, p) == PAPER_PROFILE))
}

pub fn match_paper_profile(w: &CounterexampleWitness) -> Result<bool, SearchError> {
    paper_labeling(w).map(|l| l.is_some())
}

/// The witness relabeled so free ids 0, 1, 2 are g, h, i, with the published
/// vertex names attached. `None` unless the profile matches.
pub fn paper_named_instance(w: &CounterexampleWitness) -> Option<Instance> {
    let [g, h, i] = paper_labeling(w).ok()??;
    let mut perm = [0; 3];
    perm[g] = 0;
    perm[h] = 1;
    perm[i] = 2;
    let inst = w.instance.relabel_free(&perm);
    if inst.n_fixed() != PAPER_FIXED_NAMES.len() {
        return Some(inst);
    }
    inst.with_labels(Labels {
        fixed: PAPER_FIXED_NAMES.iter().map(|s| s.to_string()).collect(),
        free: PAPER_FREE_NAMES.iter().map(|s| s.to_string()).collect(),
    })
    .ok()
}
