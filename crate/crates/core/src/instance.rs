//! Two-layer instances and free-layer orderings.
//!
//! Fixed-layer vertices are identified by their position in the fixed order
//! (position 0 is the top of the drawing), so the fixed permutation never has
//! to be carried around separately. Free-layer vertices carry stable ids
//! `0..n_free`.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Position of a vertex in the fixed layer.
pub type FixedId = usize;
/// Stable id of a vertex in the free layer.
pub type FreeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("edge ({fixed}, {free}) references fixed vertex {fixed}, but only {n_fixed} exist")]
    FixedOutOfRange {
        fixed: FixedId,
        free: FreeId,
        n_fixed: usize,
    },
    #[error("edge ({fixed}, {free}) references free vertex {free}, but only {n_free} exist")]
    FreeOutOfRange {
        fixed: FixedId,
        free: FreeId,
        n_free: usize,
    },
    #[error("duplicate edge ({fixed}, {free})")]
    DuplicateEdge { fixed: FixedId, free: FreeId },
    #[error("free vertex {id} out of range (n_free = {n_free})")]
    InvalidFreeId { id: FreeId, n_free: usize },
    #[error("expected two distinct free vertices, got {0} twice")]
    SameVertex(FreeId),
    #[error("label table has {got} {layer} labels, expected {expected}")]
    LabelCount {
        layer: &'static str,
        got: usize,
        expected: usize,
    },
}

/// Display names for the vertices of an [`Instance`]. Purely cosmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labels {
    pub fixed: Vec<String>,
    pub free: Vec<String>,
}

/// A bipartite graph with its fixed layer already ordered.
///
/// Immutable once built. Equality is structural: labels are ignored.
#[derive(Debug, Clone)]
pub struct Instance {
    n_fixed: usize,
    n_free: usize,
    /// Sorted by (fixed, free).
    edges: Vec<(FixedId, FreeId)>,
    /// Fixed neighbours of each free vertex, ascending.
    free_adj: Vec<Vec<FixedId>>,
    labels: Option<Labels>,
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.n_fixed == other.n_fixed && self.n_free == other.n_free && self.edges == other.edges
    }
}

impl Eq for Instance {}

impl Instance {
    /// Validates and builds an instance. Duplicate edges are rejected, never
    /// silently merged.
    pub fn new(
        n_fixed: usize,
        n_free: usize,
        edges: impl IntoIterator<Item = (FixedId, FreeId)>,
    ) -> Result<Self, InstanceError> {
        let mut free_adj = vec![Vec::new(); n_free];
        let mut list = Vec::new();
        for (fixed, free) in edges {
            if fixed >= n_fixed {
                return Err(InstanceError::FixedOutOfRange {
                    fixed,
                    free,
                    n_fixed,
                });
            }
            if free >= n_free {
                return Err(InstanceError::FreeOutOfRange {
                    fixed,
                    free,
                    n_free,
                });
            }
            list.push((fixed, free));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            let (fixed, free) = w[0];
            return Err(InstanceError::DuplicateEdge { fixed, free });
        }
        for &(fixed, free) in &list {
            free_adj[free].push(fixed);
        }
        Ok(Instance {
            n_fixed,
            n_free,
            edges: list,
            free_adj,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Labels) -> Result<Self, InstanceError> {
        if labels.fixed.len() != self.n_fixed {
            return Err(InstanceError::LabelCount {
                layer: "fixed",
                got: labels.fixed.len(),
                expected: self.n_fixed,
            });
        }
        if labels.free.len() != self.n_free {
            return Err(InstanceError::LabelCount {
                layer: "free",
                got: labels.free.len(),
                expected: self.n_free,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n_fixed(&self) -> usize {
        self.n_fixed
    }

    pub fn n_free(&self) -> usize {
        self.n_free
    }

    /// Edges as (fixed position, free id), sorted by fixed then free.
    pub fn edges(&self) -> &[(FixedId, FreeId)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Ascending fixed positions adjacent to `v`.
    pub fn neighbors(&self, v: FreeId) -> &[FixedId] {
        &self.free_adj[v]
    }

    pub fn degree(&self, v: FreeId) -> usize {
        self.free_adj[v].len()
    }

    pub fn labels(&self) -> Option<&Labels> {
        self.labels.as_ref()
    }

    pub fn fixed_label(&self, a: FixedId) -> String {
        match &self.labels {
            Some(l) => l.fixed[a].clone(),
            None => (a + 1).to_string(),
        }
    }

    pub fn free_label(&self, v: FreeId) -> String {
        match &self.labels {
            Some(l) => l.free[v].clone(),
            None => (self.n_fixed + v + 1).to_string(),
        }
    }

    pub(crate) fn check_free(&self, v: FreeId) -> Result<(), InstanceError> {
        if v < self.n_free {
            Ok(())
        } else {
            Err(InstanceError::InvalidFreeId {
                id: v,
                n_free: self.n_free,
            })
        }
    }

    /// Connected with exactly `n_fixed + n_free - 1` edges.
    pub fn is_tree(&self) -> bool {
        let n = self.n_fixed + self.n_free;
        if n == 0 || self.edges.len() != n - 1 {
            return false;
        }
        // fixed vertices are 0..n_fixed, free vertices n_fixed..n
        let mut adj = vec![Vec::new(); n];
        for &(a, v) in &self.edges {
            adj[a].push(self.n_fixed + v);
            adj[self.n_fixed + v].push(a);
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    reached += 1;
                    queue.push_back(y);
                }
            }
        }
        reached == n
    }

    /// Number of fixed vertices adjacent to both `u` and `v`.
    pub fn common_neighbors(&self, u: FreeId, v: FreeId) -> Result<usize, InstanceError> {
        self.check_free(u)?;
        self.check_free(v)?;
        if u == v {
            return Err(InstanceError::SameVertex(u));
        }
        let (a, b) = (&self.free_adj[u], &self.free_adj[v]);
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(count)
    }

    /// Same graph with the fixed order turned upside down.
    pub fn reversed_fixed(&self) -> Instance {
        let last = self.n_fixed.saturating_sub(1);
        let edges = self.edges.iter().map(|&(a, v)| (last - a, v));
        let mut out = Instance::new(self.n_fixed, self.n_free, edges)
            .expect("reversal keeps edges valid");
        out.labels = self.labels.as_ref().map(|l| Labels {
            fixed: l.fixed.iter().rev().cloned().collect(),
            free: l.free.clone(),
        });
        out
    }

    /// Renames free vertex `v` to `perm[v]`.
    pub fn relabel_free(&self, perm: &[FreeId]) -> Instance {
        assert_eq!(perm.len(), self.n_free, "relabeling must cover the free layer");
        let edges = self.edges.iter().map(|&(a, v)| (a, perm[v]));
        let mut out = Instance::new(self.n_fixed, self.n_free, edges)
            .expect("relabeling keeps edges valid");
        out.labels = self.labels.as_ref().map(|l| {
            let mut free = l.free.clone();
            for (old, &new) in perm.iter().enumerate() {
                free[new] = l.free[old].clone();
            }
            Labels {
                fixed: l.fixed.clone(),
                free,
            }
        });
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderingError {
    #[error("ordering has {got} entries, expected {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error("free vertex {0} out of range")]
    OutOfRange(FreeId),
    #[error("free vertex {0} appears more than once")]
    Repeated(FreeId),
}

/// A top-to-bottom order of the free layer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ordering(Vec<FreeId>);

impl Ordering {
    pub fn new(order: Vec<FreeId>) -> Result<Self, OrderingError> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n {
                return Err(OrderingError::OutOfRange(v));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(OrderingError::Repeated(v));
            }
        }
        Ok(Ordering(order))
    }

    /// Like [`Ordering::new`], but also checks the length against an instance.
    pub fn for_instance(inst: &Instance, order: Vec<FreeId>) -> Result<Self, OrderingError> {
        if order.len() != inst.n_free() {
            return Err(OrderingError::WrongLength {
                got: order.len(),
                expected: inst.n_free(),
            });
        }
        Ordering::new(order)
    }

    pub fn identity(n: usize) -> Self {
        Ordering((0..n).collect())
    }

    pub fn as_slice(&self) -> &[FreeId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `positions()[v]` is the index of `v` in the ordering.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    pub fn reversed(&self) -> Ordering {
        Ordering(self.0.iter().rev().copied().collect())
    }

    pub fn into_inner(self) -> Vec<FreeId> {
        self.0
    }
}

impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
