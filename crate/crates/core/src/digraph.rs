//! Directed multigraphs with loops, and the union digraph of a transformation set.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::transformation::{PointSet, Style, Transformation};

/// A directed multigraph on vertices `0..n`, stored as an arc-count matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    counts: Vec<u32>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph {
            n,
            counts: vec![0; n * n],
        }
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut d = Digraph::new(n);
        for (u, v) in arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::PointOutOfRange { point: x, arity: n });
                }
            }
            d.add_arc(u, v);
        }
        Ok(d)
    }

    /// Adds one arc; panics on out-of-range vertices.
    pub fn add_arc(&mut self, u: usize, v: usize) {
        self.counts[u * self.n + v] += 1;
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of parallel arcs `u -> v`.
    #[inline]
    pub fn count(&self, u: usize, v: usize) -> u32 {
        self.counts[u * self.n + v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.count(u, v) > 0
    }

    /// Total arcs, counting multiplicity; each loop counts once.
    pub fn arc_count(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }

    pub fn out_degree(&self, v: usize) -> u32 {
        (0..self.n).map(|w| self.count(v, w)).sum()
    }

    pub fn in_degree(&self, v: usize) -> u32 {
        (0..self.n).map(|u| self.count(u, v)).sum()
    }

    pub fn successors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.has_arc(u, v))
    }

    pub fn predecessors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.has_arc(u, v))
    }

    /// Distinct arcs with their multiplicities, row-major.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        (0..self.n).flat_map(move |u| {
            (0..self.n).filter_map(move |v| {
                let c = self.count(u, v);
                (c > 0).then_some((u, v, c))
            })
        })
    }

    pub fn has_loops(&self) -> bool {
        (0..self.n).any(|v| self.has_arc(v, v))
    }

    /// Rows indexed by source vertex.
    pub fn matrix(&self) -> Vec<Vec<u32>> {
        self.counts.chunks(self.n.max(1)).take(self.n).map(<[u32]>::to_vec).collect()
    }

    /// Whether the arc multiset equals its reverse.
    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|u| (0..self.n).all(|v| self.count(u, v) == self.count(v, u)))
    }

    /// Arc list such as `a->a, a->c, b->a ...` with `xk` suffixes for multiplicity.
    pub fn format_arcs(&self, style: Style) -> String {
        let style = style.effective(self.n);
        self.arcs()
            .map(|(u, v, c)| {
                let base = format!("{}->{}", style.point(u), style.point(v));
                if c > 1 {
                    format!("{base}x{c}")
                } else {
                    base
                }
            })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// The digraph with one arc `x -> f(x)` for every element `f` of a set and
/// every point `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionDigraph {
    graph: Digraph,
    source_size: usize,
    fixed: PointSet,
}

/// Builds the union digraph of a nonempty, uniform-arity transformation set.
///
/// The vertices recorded as fixed are those fixed by the set's idempotents;
/// for a group this is `ng_fix`.
pub fn build_digraph(set: &[Transformation]) -> Result<UnionDigraph> {
    let first = set
        .first()
        .ok_or_else(|| Error::Domain("empty transformation set".into()))?;
    let n = first.arity();
    let mut graph = Digraph::new(n);
    let mut fixed = PointSet::empty(n);
    for f in set {
        if f.arity() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: f.arity(),
            });
        }
        for x in 0..n {
            graph.add_arc(x, f.apply(x));
        }
        if f.is_idempotent() {
            fixed = fixed.union(&f.fixed_points());
        }
    }
    Ok(UnionDigraph {
        graph,
        source_size: set.len(),
        fixed,
    })
}

impl UnionDigraph {
    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    /// Number of transformations the digraph was built from.
    pub fn source_size(&self) -> usize {
        self.source_size
    }

    pub fn fixed_vertices(&self) -> &PointSet {
        &self.fixed
    }

    /// Entry `(i, j)` counts the elements sending `i` to `j`.
    pub fn adjacency_matrix(&self) -> Vec<Vec<u32>> {
        self.graph.matrix()
    }

    /// `(vertex count, arc count)`.
    pub fn size_pair(&self) -> (usize, u64) {
        (self.graph.vertex_count(), self.graph.arc_count())
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile::of(&self.graph, &self.fixed)
    }
}

impl AsRef<Digraph> for UnionDigraph {
    fn as_ref(&self) -> &Digraph {
        &self.graph
    }
}

impl AsRef<Digraph> for Digraph {
    fn as_ref(&self) -> &Digraph {
        self
    }
}

/// Out-, in- and total degree of every vertex. A loop adds one to each of
/// `out` and `inn`, hence two to `total`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub out: Vec<u32>,
    #[serde(rename = "in")]
    pub inn: Vec<u32>,
    pub total: Vec<u32>,
    pub delta_min: u32,
    pub delta_max: u32,
    /// Total degree of each fixed vertex, keyed by 0-based vertex.
    pub fix_degrees: BTreeMap<usize, u32>,
}

impl DegreeProfile {
    pub fn of(graph: &Digraph, fixed: &PointSet) -> Self {
        let n = graph.vertex_count();
        let out: Vec<u32> = (0..n).map(|v| graph.out_degree(v)).collect();
        let inn: Vec<u32> = (0..n).map(|v| graph.in_degree(v)).collect();
        let total: Vec<u32> = out.iter().zip(&inn).map(|(a, b)| a + b).collect();
        DegreeProfile {
            delta_min: total.iter().copied().min().unwrap_or(0),
            delta_max: total.iter().copied().max().unwrap_or(0),
            fix_degrees: fixed.iter().map(|v| (v, total[v])).collect(),
            out,
            inn,
            total,
        }
    }

    pub fn degree_sum(&self) -> u64 {
        self.total.iter().map(|&d| d as u64).sum()
    }

    /// The common degree of the fixed vertices, when they all agree.
    pub fn uniform_fix_degree(&self) -> Option<u32> {
        let mut vals = self.fix_degrees.values().copied();
        let first = vals.next()?;
        vals.all(|d| d == first).then_some(first)
    }
}
