//! Disjoint 4-star instances and the apex augmentation that turns them into
//! trees.
//!
//! The base instances are disjoint unions of `K_{1,4}` with the centres on the
//! free layer and the leaves on the fixed layer. Appending one fixed vertex
//! below all leaves and joining it to every centre yields a tree, and shifts
//! the crossing count of every free-layer order by the same amount.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::crossings::{count_crossings, crossing_matrix};
use crate::instance::{Instance, Labels, Ordering};
use crate::solvers::{solve_exact, SolveError, DEFAULT_EXACT_LIMIT};

pub const LEAVES_PER_STAR: usize = 4;
/// Up to this many stars every free-layer order is checked in each trial;
/// above it a seeded sample is used.
pub const EXHAUSTIVE_ORDERINGS_LIMIT: usize = 8;
const SAMPLED_ORDERINGS: usize = 2000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("leaf order has {got} entries, expected {expected}")]
    LeafCount { got: usize, expected: usize },
    #[error("leaf ({star}, {leaf}) does not exist")]
    UnknownLeaf { star: usize, leaf: usize },
    #[error("leaf ({star}, {leaf}) appears twice")]
    RepeatedLeaf { star: usize, leaf: usize },
    #[error("at least one trial is required")]
    NoTrials,
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Fixed-layer order of the leaves of `star_count` 4-stars.
///
/// `leaf_order[p] = (star, leaf)` puts that leaf at fixed position `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarInstanceSpec {
    star_count: usize,
    leaf_order: Vec<(usize, usize)>,
}

impl StarInstanceSpec {
    pub fn new(star_count: usize, leaf_order: Vec<(usize, usize)>) -> Result<Self, ReductionError> {
        let expected = star_count * LEAVES_PER_STAR;
        if leaf_order.len() != expected {
            return Err(ReductionError::LeafCount {
                got: leaf_order.len(),
                expected,
            });
        }
        let mut seen = vec![false; expected];
        for &(star, leaf) in &leaf_order {
            if star >= star_count || leaf >= LEAVES_PER_STAR {
                return Err(ReductionError::UnknownLeaf { star, leaf });
            }
            if std::mem::replace(&mut seen[star * LEAVES_PER_STAR + leaf], true) {
                return Err(ReductionError::RepeatedLeaf { star, leaf });
            }
        }
        Ok(StarInstanceSpec {
            star_count,
            leaf_order,
        })
    }

    /// Leaves grouped by star, stars in id order.
    pub fn sorted(star_count: usize) -> Self {
        let order = (0..star_count)
            .flat_map(|s| (0..LEAVES_PER_STAR).map(move |l| (s, l)))
            .collect();
        StarInstanceSpec::new(star_count, order).unwrap()
    }

    /// Leaves grouped by star, stars in reverse id order.
    pub fn reversed(star_count: usize) -> Self {
        let order = (0..star_count)
            .rev()
            .flat_map(|s| (0..LEAVES_PER_STAR).map(move |l| (s, l)))
            .collect();
        StarInstanceSpec::new(star_count, order).unwrap()
    }

    /// Round robin: one leaf of each star in turn.
    pub fn interleaved(star_count: usize) -> Self {
        let order = (0..LEAVES_PER_STAR)
            .flat_map(|l| (0..star_count).map(move |s| (s, l)))
            .collect();
        StarInstanceSpec::new(star_count, order).unwrap()
    }

    pub fn random<R: Rng + ?Sized>(star_count: usize, rng: &mut R) -> Self {
        let mut spec = StarInstanceSpec::sorted(star_count);
        spec.leaf_order.shuffle(rng);
        spec
    }

    pub fn star_count(&self) -> usize {
        self.star_count
    }

    pub fn leaf_order(&self) -> &[(usize, usize)] {
        &self.leaf_order
    }
}

/// One free vertex per star, adjacent to its four leaves.
pub fn build_star_instance(spec: &StarInstanceSpec) -> Instance {
    let edges = spec
        .leaf_order
        .iter()
        .enumerate()
        .map(|(pos, &(star, _))| (pos, star));
    let labels = Labels {
        fixed: spec
            .leaf_order
            .iter()
            .map(|&(s, l)| format!("s{s}.{l}"))
            .collect(),
        free: (0..spec.star_count).map(|s| format!("s{s}")).collect(),
    };
    Instance::new(spec.leaf_order.len(), spec.star_count, edges)
        .and_then(|i| i.with_labels(labels))
        .expect("validated spec builds a valid instance")
}

/// Appends an apex at the bottom of the fixed layer, adjacent to every free
/// vertex.
pub fn apex_augment(inst: &Instance) -> Instance {
    let apex = inst.n_fixed();
    let edges = inst
        .edges()
        .iter()
        .copied()
        .chain((0..inst.n_free()).map(|v| (apex, v)));
    let out = Instance::new(apex + 1, inst.n_free(), edges).expect("apex edges are new");
    match inst.labels() {
        Some(l) => {
            let mut labels = l.clone();
            labels.fixed.push("apex".into());
            out.with_labels(labels).unwrap()
        }
        None => out,
    }
}

/// The commonly stated offset of the apex augmentation, `n(n-1)`.
pub fn lemma_offset(n: usize) -> u64 {
    (n * n.saturating_sub(1)) as u64
}

/// The offset obtained by summing the per-pair apex terms,
/// `4 + 2*4 + ... + (n-1)*4 = 2n(n-1)`.
pub fn proof_offset(n: usize) -> u64 {
    2 * lemma_offset(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaMatch {
    /// Both closed forms agree with the data (only when they coincide, `n <= 1`).
    Both,
    LemmaStatement,
    ProofComputation,
    Neither,
}

impl fmt::Display for FormulaMatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormulaMatch::Both => "both n(n-1) and 2n(n-1)",
            FormulaMatch::LemmaStatement => "n(n-1)",
            FormulaMatch::ProofComputation => "2n(n-1)",
            FormulaMatch::Neither => "neither",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialRow {
    pub label: String,
    pub opt_base: u64,
    pub opt_apex: u64,
    /// Distinct values of crossings(G', order) - crossings(G, order) seen.
    pub per_ordering: BTreeSet<u64>,
    /// Exact solver picked the same order on both instances.
    pub same_argmin: bool,
}

impl TrialRow {
    pub fn diff(&self) -> u64 {
        self.opt_apex - self.opt_base
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OffsetReport {
    pub stars: usize,
    pub seed: u64,
    pub random_trials: usize,
    /// Random trials first, then the sorted, reversed and interleaved orders.
    pub rows: Vec<TrialRow>,
    pub orderings_per_trial: usize,
    pub exhaustive: bool,
}

impl OffsetReport {
    /// The common value of every per-ordering and optimum difference, if
    /// there is one.
    pub fn constant(&self) -> Option<u64> {
        let mut all = BTreeSet::new();
        for row in &self.rows {
            all.extend(row.per_ordering.iter().copied());
            all.insert(row.diff());
        }
        (all.len() == 1).then(|| *all.first().unwrap())
    }

    pub fn diffs(&self) -> Vec<u64> {
        self.rows.iter().map(TrialRow::diff).collect()
    }

    pub fn matched(&self) -> FormulaMatch {
        let Some(c) = self.constant() else {
            return FormulaMatch::Neither;
        };
        let lemma = c == lemma_offset(self.stars);
        let proof = c == proof_offset(self.stars);
        match (lemma, proof) {
            (true, true) => FormulaMatch::Both,
            (true, false) => FormulaMatch::LemmaStatement,
            (false, true) => FormulaMatch::ProofComputation,
            (false, false) => FormulaMatch::Neither,
        }
    }

    pub fn argmin_preserved(&self) -> bool {
        self.rows.iter().all(|r| r.same_argmin)
    }
}

impl fmt::Display for OffsetReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.stars;
        writeln!(
            f,
            "# stars={n} seed={} trials={} orderings/trial={} ({})",
            self.seed,
            self.random_trials,
            self.orderings_per_trial,
            if self.exhaustive { "exhaustive" } else { "sampled" }
        )?;
        writeln!(f, "{:<14} {:>10} {:>10} {:>8}", "trial", "opt(G)", "opt(G')", "diff")?;
        for row in &self.rows {
            writeln!(
                f,
                "{:<14} {:>10} {:>10} {:>8}",
                row.label,
                row.opt_base,
                row.opt_apex,
                row.diff()
            )?;
        }
        match self.constant() {
            Some(c) => writeln!(f, "# per-ordering difference: constant {c}")?,
            None => {
                let all: BTreeSet<u64> = self
                    .rows
                    .iter()
                    .flat_map(|r| r.per_ordering.iter().copied().chain([r.diff()]))
                    .collect();
                writeln!(f, "# per-ordering difference: NOT constant {all:?}")?
            }
        }
        let c = self.constant();
        let verdict = |v: u64| if c == Some(v) { "match" } else { "mismatch" };
        writeln!(f, "# lemma n(n-1) = {}: {}", lemma_offset(n), verdict(lemma_offset(n)))?;
        writeln!(f, "# proof 2n(n-1) = {}: {}", proof_offset(n), verdict(proof_offset(n)))?;
        writeln!(
            f,
            "# argmin preserved: {}",
            if self.argmin_preserved() { "yes" } else { "no" }
        )?;
        writeln!(f, "matched formula: {}", self.matched())
    }
}

/// Measures `opt(G') - opt(G)` over seeded random leaf orders plus the
/// sorted, reversed and interleaved ones, and checks that every free-layer
/// order is shifted by the same amount.
pub fn measure_offset(n: usize, trials: usize, seed: u64) -> Result<OffsetReport, ReductionError> {
    if trials == 0 {
        return Err(ReductionError::NoTrials);
    }
    if n > DEFAULT_EXACT_LIMIT {
        return Err(SolveError::SizeGuard {
            method: crate::solvers::Method::ExactDp,
            n_free: n,
            limit: DEFAULT_EXACT_LIMIT,
        }
        .into());
    }
    let exhaustive = n <= EXHAUSTIVE_ORDERINGS_LIMIT;
    let orderings: Vec<Ordering> = if exhaustive {
        all_orderings(n)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(u64::MAX);
        (0..SAMPLED_ORDERINGS)
            .map(|_| {
                let mut o: Vec<usize> = (0..n).collect();
                o.shuffle(&mut rng);
                Ordering::new(o).unwrap()
            })
            .collect()
    };

    let mut specs: Vec<(String, StarInstanceSpec)> = (0..trials)
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            (format!("random-{t}"), StarInstanceSpec::random(n, &mut rng))
        })
        .collect();
    specs.push(("sorted".into(), StarInstanceSpec::sorted(n)));
    specs.push(("reversed".into(), StarInstanceSpec::reversed(n)));
    specs.push(("interleaved".into(), StarInstanceSpec::interleaved(n)));

    let rows = specs
        .into_par_iter()
        .map(|(label, spec)| run_trial(label, &spec, &orderings))
        .collect::<Result<Vec<_>, _>>()?;

    Ok(OffsetReport {
        stars: n,
        seed,
        random_trials: trials,
        rows,
        orderings_per_trial: orderings.len(),
        exhaustive,
    })
}

fn run_trial(
    label: String,
    spec: &StarInstanceSpec,
    orderings: &[Ordering],
) -> Result<TrialRow, ReductionError> {
    let base = build_star_instance(spec);
    let apex = apex_augment(&base);
    debug_assert!(apex.is_tree());
    let opt_base = solve_exact(&base)?;
    let opt_apex = solve_exact(&apex)?;
    let per_ordering = orderings
        .iter()
        .map(|o| count_crossings(&apex, o).unwrap() - count_crossings(&base, o).unwrap())
        .collect();
    Ok(TrialRow {
        label,
        opt_base: opt_base.crossings(),
        opt_apex: opt_apex.crossings(),
        per_ordering,
        same_argmin: opt_base.ordering() == opt_apex.ordering(),
    })
}

fn all_orderings(n: usize) -> Vec<Ordering> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Ordering>) {
        if prefix.len() == used.len() {
            out.push(Ordering::new(prefix.clone()).unwrap());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Pairwise apex contribution: for stars `u` above `w`, the apex edge of `u`
/// crosses all four leaf edges of `w`.
pub fn apex_pair_crossings(inst: &Instance) -> Vec<Vec<u64>> {
    let apexed = apex_augment(inst);
    let (a, b) = (crossing_matrix(&apexed), crossing_matrix(inst));
    (0..inst.n_free())
        .map(|u| (0..inst.n_free()).map(|v| a.get(u, v) - b.get(u, v)).collect())
        .collect()
}
