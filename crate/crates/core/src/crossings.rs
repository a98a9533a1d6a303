//! Pairwise crossing numbers and total crossing counts.
//!
//! `cr(u, v)` is the number of crossing edge pairs between the edges of `u`
//! and the edges of `v` when `u` is drawn above `v`. Edges `(a, u)` and
//! `(b, v)` cross exactly when `a` sits strictly below `b` in the fixed layer.

use rayon::prelude::*;

use crate::instance::{FreeId, Instance, InstanceError, Ordering, OrderingError};

/// Dense `n_free × n_free` table of `cr(u, v)`, zero on the diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingMatrix {
    n: usize,
    cr: Vec<u64>,
}

impl CrossingMatrix {
    /// Builds a matrix from explicit rows. Diagonal entries must be zero.
    pub fn from_rows(rows: Vec<Vec<u64>>) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) || (0..n).any(|i| rows[i][i] != 0) {
            return None;
        }
        Some(CrossingMatrix {
            n,
            cr: rows.into_iter().flatten().collect(),
        })
    }

    pub fn n_free(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: FreeId, v: FreeId) -> u64 {
        self.cr[u * self.n + v]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.cr.chunks(self.n.max(1)).map(<[u64]>::to_vec).collect()
    }

    /// Sum over pairs of `min(cr(u,v), cr(v,u))`: a lower bound on any ordering.
    pub fn lower_bound(&self) -> u64 {
        let mut total = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                total += self.get(u, v).min(self.get(v, u));
            }
        }
        total
    }

    /// Total of `cr(u, v)` over all pairs with `u` before `v`.
    pub fn ordering_cost(&self, ord: &[FreeId]) -> u64 {
        let mut total = 0;
        for (i, &u) in ord.iter().enumerate() {
            for &v in &ord[i + 1..] {
                total += self.get(u, v);
            }
        }
        total
    }
}

fn pair_count(upper: &[usize], lower: &[usize]) -> u64 {
    // both ascending; count (a, b) with a > b
    let mut j = 0;
    let mut total = 0u64;
    for &a in upper {
        while j < lower.len() && lower[j] < a {
            j += 1;
        }
        total += j as u64;
    }
    total
}

/// Crossings charged to placing `u` directly above `v`.
pub fn pairwise_crossings(inst: &Instance, u: FreeId, v: FreeId) -> Result<u64, InstanceError> {
    inst.check_free(u)?;
    inst.check_free(v)?;
    if u == v {
        return Err(InstanceError::SameVertex(u));
    }
    Ok(pair_count(inst.neighbors(u), inst.neighbors(v)))
}

pub fn crossing_matrix(inst: &Instance) -> CrossingMatrix {
    let n = inst.n_free();
    let cr = (0..n)
        .into_par_iter()
        .flat_map_iter(|u| {
            (0..n).map(move |v| {
                if u == v {
                    0
                } else {
                    pair_count(inst.neighbors(u), inst.neighbors(v))
                }
            })
        })
        .collect();
    CrossingMatrix { n, cr }
}

fn check_len(inst: &Instance, ord: &Ordering) -> Result<(), OrderingError> {
    if ord.len() == inst.n_free() {
        Ok(())
    } else {
        Err(OrderingError::WrongLength {
            got: ord.len(),
            expected: inst.n_free(),
        })
    }
}

/// Total crossings of the drawing, in `O(m log m)`.
///
/// Edges are listed by (free position, fixed position); every strict
/// inversion of the fixed positions in that list is one crossing. Edges at
/// the same free vertex are listed in ascending fixed order and so never
/// contribute, and neither do edges sharing a fixed endpoint.
pub fn count_crossings(inst: &Instance, ord: &Ordering) -> Result<u64, OrderingError> {
    check_len(inst, ord)?;
    let mut seq = Vec::with_capacity(inst.edge_count());
    for &v in ord.as_slice() {
        seq.extend_from_slice(inst.neighbors(v));
    }
    Ok(count_strict_inversions(&mut seq))
}

/// Quadratic reference: tests every pair of edges as segments.
pub fn count_crossings_reference(inst: &Instance, ord: &Ordering) -> Result<u64, OrderingError> {
    check_len(inst, ord)?;
    let pos = ord.positions();
    let edges = inst.edges();
    let mut total = 0;
    for (i, &(a1, v1)) in edges.iter().enumerate() {
        for &(a2, v2) in &edges[i + 1..] {
            let (p1, p2) = (pos[v1], pos[v2]);
            if (p1 < p2 && a1 > a2) || (p1 > p2 && a1 < a2) {
                total += 1;
            }
        }
    }
    Ok(total)
}

/// Number of pairs `i < j` with `xs[i] > xs[j]`. Sorts `xs` in place.
pub fn count_strict_inversions(xs: &mut [usize]) -> u64 {
    let mut buf = xs.to_vec();
    merge_count(xs, &mut buf)
}

fn merge_count(xs: &mut [usize], buf: &mut [usize]) -> u64 {
    let n = xs.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut inv = merge_count(&mut xs[..mid], &mut buf[..mid]);
    inv += merge_count(&mut xs[mid..], &mut buf[mid..]);
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        // ties go left first: equal values are not inversions
        if xs[j] < xs[i] {
            inv += (mid - i) as u64;
            buf[k] = xs[j];
            j += 1;
        } else {
            buf[k] = xs[i];
            i += 1;
        }
        k += 1;
    }
    buf[k..k + mid - i].copy_from_slice(&xs[i..mid]);
    k += mid - i;
    buf[k..k + n - j].copy_from_slice(&xs[j..n]);
    xs.copy_from_slice(&buf[..n]);
    inv
}
