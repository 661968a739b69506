//! Stochastic graph representation.
//!
//! Vertices are dense indices in `[0, n)`. Edges are stored in canonical
//! order: each edge is normalized to `(min, max)` and the list is sorted
//! lexicographically, so an [`EdgeId`] is also the edge's rank in that order.
//! Every deterministic tie-break downstream relies on this ordering.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense vertex index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

/// Position of an edge in the canonical edge order of its graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// An undirected weighted edge with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub weight: f64,
}

impl Edge {
    pub fn new(a: usize, b: usize, weight: f64) -> Self {
        let (u, v) = if a <= b { (a, b) } else { (b, a) };
        Edge {
            u: VertexId(u),
            v: VertexId(v),
            weight,
        }
    }

    #[inline]
    pub fn endpoints(&self) -> (usize, usize) {
        (self.u.0, self.v.0)
    }

    #[inline]
    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`.
    #[inline]
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// Graph `G = (V, E)` whose vertices survive with probability `p_v` and whose
/// edges survive with probability `p_e` once both endpoints have survived.
///
/// Immutable after construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GraphRecord")]
pub struct StochasticGraph {
    n: usize,
    edges: Vec<Edge>,
    p_v: f64,
    p_e: f64,
    weighted: bool,
    #[serde(skip_serializing)]
    incidence: Vec<Vec<EdgeId>>,
}

fn check_probability(name: &'static str, p: f64) -> Result<()> {
    if p.is_finite() && p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(Error::input(format!("{name} must lie in (0, 1], got {p}")))
    }
}

impl StochasticGraph {
    /// Builds a weighted graph. Edges may be given in any order and with
    /// either endpoint first; they are normalized into canonical order.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>, p_v: f64, p_e: f64) -> Result<Self> {
        Self::build(n, edges.into_iter().map(|(a, b, w)| Edge::new(a, b, w)).collect(), p_v, p_e, true)
    }

    /// Builds an unweighted graph; every edge gets weight exactly 1.
    pub fn unweighted(n: usize, edges: impl IntoIterator<Item = (usize, usize)>, p_v: f64, p_e: f64) -> Result<Self> {
        Self::build(n, edges.into_iter().map(|(a, b)| Edge::new(a, b, 1.0)).collect(), p_v, p_e, false)
    }

    fn build(n: usize, mut edges: Vec<Edge>, p_v: f64, p_e: f64, weighted: bool) -> Result<Self> {
        check_probability("p_v", p_v)?;
        check_probability("p_e", p_e)?;
        for e in &edges {
            let (u, v) = e.endpoints();
            if v >= n {
                return Err(Error::input(format!("edge ({u}, {v}) has an endpoint outside [0, {n})")));
            }
            if u == v {
                return Err(Error::input(format!("self-loop at vertex {u}")));
            }
            if !(e.weight.is_finite() && e.weight >= 0.0) {
                return Err(Error::input(format!("edge ({u}, {v}) has invalid weight {}", e.weight)));
            }
            if !weighted && e.weight != 1.0 {
                return Err(Error::input(format!("edge ({u}, {v}) has weight {} in an unweighted graph", e.weight)));
            }
        }
        edges.sort_by_key(|e| e.endpoints());
        if let Some(w) = edges.windows(2).find(|w| w[0].endpoints() == w[1].endpoints()) {
            let (u, v) = w[0].endpoints();
            return Err(Error::input(format!("duplicate edge ({u}, {v})")));
        }
        let mut g = StochasticGraph {
            n,
            edges,
            p_v,
            p_e,
            weighted,
            incidence: Vec::new(),
        };
        g.index();
        Ok(g)
    }

    fn index(&mut self) {
        let mut incidence = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            incidence[e.u.0].push(EdgeId(i));
            incidence[e.v.0].push(EdgeId(i));
        }
        self.incidence = incidence;
    }

    /// Same topology and weights under different survival probabilities.
    pub fn with_probabilities(&self, p_v: f64, p_e: f64) -> Result<Self> {
        check_probability("p_v", p_v)?;
        check_probability("p_e", p_e)?;
        Ok(StochasticGraph {
            p_v,
            p_e,
            ..self.clone()
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn p_v(&self) -> f64 {
        self.p_v
    }

    #[inline]
    pub fn p_e(&self) -> f64 {
        self.p_e
    }

    /// Probability that a fixed edge is realized: `p_v² · p_e`.
    #[inline]
    pub fn edge_survival(&self) -> f64 {
        self.p_v * self.p_v * self.p_e
    }

    #[inline]
    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    /// Edges in canonical order.
    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id.0]
    }

    #[inline]
    pub fn weight(&self, id: EdgeId) -> f64 {
        self.edges[id.0].weight
    }

    pub fn edge_ids(&self) -> impl ExactSizeIterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> {
        (0..self.n).map(VertexId)
    }

    /// Looks up the edge joining `a` and `b`, in either order.
    pub fn find_edge(&self, a: usize, b: usize) -> Option<EdgeId> {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.edges.binary_search_by_key(&key, |e| e.endpoints()).ok().map(EdgeId)
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.0 < self.n {
            Ok(())
        } else {
            Err(Error::input(format!("vertex {} out of range [0, {})", v.0, self.n)))
        }
    }

    /// Edges incident to `v`, in canonical order.
    pub fn incident(&self, v: VertexId) -> Result<&[EdgeId]> {
        self.check_vertex(v)?;
        Ok(&self.incidence[v.0])
    }

    pub(crate) fn incident_unchecked(&self, v: usize) -> &[EdgeId] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        Ok(self.incident(v)?.len())
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `E(U)`: the edges with both endpoints in `subset`, in canonical order.
    pub fn induced_edges(&self, subset: &[VertexId]) -> Result<Vec<EdgeId>> {
        let mut inside = FixedBitSet::with_capacity(self.n);
        for &v in subset {
            self.check_vertex(v)?;
            inside.insert(v.0);
        }
        Ok(self
            .edge_ids()
            .filter(|&id| {
                let (u, v) = self.edges[id.0].endpoints();
                inside.contains(u) && inside.contains(v)
            })
            .collect())
    }

    /// Degree of every vertex in the subgraph spanned by `subset`.
    pub fn degrees_in(&self, subset: &EdgeSet) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for id in subset.iter() {
            let (u, v) = self.edges[id.0].endpoints();
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }
}

#[derive(Deserialize)]
struct GraphRecord {
    n: usize,
    edges: Vec<Edge>,
    p_v: f64,
    p_e: f64,
    weighted: bool,
}

impl TryFrom<GraphRecord> for StochasticGraph {
    type Error = Error;

    fn try_from(r: GraphRecord) -> Result<Self> {
        StochasticGraph::build(r.n, r.edges, r.p_v, r.p_e, r.weighted)
    }
}

/// A subset of the edges of one graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "EdgeSetRecord", try_from = "EdgeSetRecord")]
pub struct EdgeSet {
    bits: FixedBitSet,
}

#[derive(Serialize, Deserialize)]
struct EdgeSetRecord {
    universe: usize,
    ids: Vec<EdgeId>,
}

impl From<EdgeSet> for EdgeSetRecord {
    fn from(s: EdgeSet) -> Self {
        EdgeSetRecord {
            universe: s.universe(),
            ids: s.iter().collect(),
        }
    }
}

impl TryFrom<EdgeSetRecord> for EdgeSet {
    type Error = Error;

    fn try_from(r: EdgeSetRecord) -> Result<Self> {
        if let Some(bad) = r.ids.iter().find(|id| id.0 >= r.universe) {
            return Err(Error::input(format!("edge id {} outside a universe of {}", bad.0, r.universe)));
        }
        Ok(EdgeSet::from_ids(r.universe, r.ids))
    }
}

impl EdgeSet {
    pub fn empty(m: usize) -> Self {
        EdgeSet {
            bits: FixedBitSet::with_capacity(m),
        }
    }

    pub fn full(m: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(m);
        bits.insert_range(..);
        EdgeSet { bits }
    }

    pub fn from_ids(m: usize, ids: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut s = Self::empty(m);
        for id in ids {
            s.insert(id);
        }
        s
    }

    /// Universe size (edge count of the owning graph).
    #[inline]
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn contains(&self, id: EdgeId) -> bool {
        self.bits.contains(id.0)
    }

    #[inline]
    pub fn insert(&mut self, id: EdgeId) {
        self.bits.insert(id.0);
    }

    #[inline]
    pub fn remove(&mut self, id: EdgeId) {
        self.bits.set(id.0, false);
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    /// Members in ascending (canonical) order.
    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.bits.ones().map(EdgeId)
    }

    pub fn intersection(&self, other: &EdgeSet) -> EdgeSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        EdgeSet { bits }
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        EdgeSet { bits }
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        EdgeSet { bits }
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Packs the set into a `u64` mask. Only valid for universes of at most 64 edges.
    pub(crate) fn to_mask(&self) -> u64 {
        debug_assert!(self.universe() <= 64);
        self.iter().fold(0u64, |acc, id| acc | (1u64 << id.0))
    }
}

impl fmt::Display for StochasticGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "G(n={}, m={}, p_v={}, p_e={}, {})",
            self.n,
            self.edges.len(),
            self.p_v,
            self.p_e,
            if self.weighted { "weighted" } else { "unweighted" }
        )
    }
}
